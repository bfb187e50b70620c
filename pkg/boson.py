"""
自由玻色链的准粒子激发态
- 单粒子态 |k⟩
- 双占据态 |k²⟩（与两个全同软核经典粒子相同）
- |k_r⟩（r ≥ 3，与 r 个全同经典粒子相同）
- 两粒子态 |k1 k2⟩：精确表、标度极限、普适结果、例外动量差
"""
import logging

from classical import Core, one_particle_report, r_identical_scaling_report, soft_two_identical_sub_table, \
    soft_two_identical_total_table, two_identical_report
from entropy import ChainGeometry, EntropyReport, Mode
from errors import ParameterError
from free_chain import BOSON, ExceptionalMomentum, MomentumPair
from quadrature import DEFAULT_TOL
from tables import LocalProbabilities
import free_chain

logger = logging.getLogger(__name__)


def single_particle_report(geom: ChainGeometry) -> EntropyReport:
    """|k⟩：对任意 L 都是精确的，与 k 无关"""
    return one_particle_report(geom, Mode.EXACT)


def kk_total_table(L: int) -> LocalProbabilities:
    return soft_two_identical_total_table(L)


def kk_sub_table(geom: ChainGeometry) -> LocalProbabilities:
    return soft_two_identical_sub_table(geom)


def kk_report(geom: ChainGeometry, mode: Mode | str = Mode.EXACT) -> EntropyReport:
    """|k²⟩：exact 逐项求和，scaling 返回 2 log L - log 2 等闭式"""
    mode = Mode(mode)
    if mode not in (Mode.EXACT, Mode.SCALING):
        raise ParameterError(f"|k²⟩ 只支持 exact / scaling，收到 {mode.value}")
    return two_identical_report(geom, Core.SOFT, mode)


def kr_report(geom: ChainGeometry, r: int) -> EntropyReport:
    """|k_r⟩ 只给出标度极限"""
    if r == 1:
        return single_particle_report(geom)
    return r_identical_scaling_report(geom.x, geom.L, r)


def k1k2_total_table(L: int, pair: MomentumPair) -> LocalProbabilities:
    return free_chain.total_table(L, pair.k12, BOSON)


def k1k2_sub_table(geom: ChainGeometry, pair: MomentumPair) -> LocalProbabilities:
    return free_chain.sub_table(geom, pair.k12, BOSON)


def k1k2_total_entropy(
    L: int,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
) -> float:
    return free_chain.total_entropy(L, pair, mode, BOSON, exceptional)


def k1k2_sub_entropy(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> float:
    return free_chain.sub_entropy(geom, pair, mode, BOSON, exceptional, tol)


def k1k2_mutual_info(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> float:
    return free_chain.mutual_info(geom, pair, mode, BOSON, exceptional, tol)


def k1k2_report(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> EntropyReport:
    return free_chain.report(geom, pair, mode, BOSON, exceptional, tol)
