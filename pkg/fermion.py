"""
自由费米链的准粒子激发态

单粒子态与玻色链完全相同；两粒子态 |k1 k2⟩ 的配对概率用 sin² 调制，
没有同格点双占据（Pauli 不相容），p0 / p_j 中的干涉项符号与玻色相反。
"""
from classical import one_particle_report
from entropy import ChainGeometry, EntropyReport, Mode
from free_chain import FERMION, ExceptionalMomentum, MomentumPair
from quadrature import DEFAULT_TOL
from tables import LocalProbabilities
import free_chain


def fer_single_particle_report(geom: ChainGeometry) -> EntropyReport:
    return one_particle_report(geom, Mode.EXACT)


def fer_k1k2_total_table(L: int, pair: MomentumPair) -> LocalProbabilities:
    return free_chain.total_table(L, pair.k12, FERMION)


def fer_k1k2_sub_table(geom: ChainGeometry, pair: MomentumPair) -> LocalProbabilities:
    return free_chain.sub_table(geom, pair.k12, FERMION)


def fer_k1k2_total_entropy(
    L: int,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
) -> float:
    return free_chain.total_entropy(L, pair, mode, FERMION, exceptional)


def fer_k1k2_sub_entropy(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> float:
    return free_chain.sub_entropy(geom, pair, mode, FERMION, exceptional, tol)


def fer_k1k2_mutual_info(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> float:
    return free_chain.mutual_info(geom, pair, mode, FERMION, exceptional, tol)


def fer_k1k2_report(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str = Mode.EXACT,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> EntropyReport:
    return free_chain.report(geom, pair, mode, FERMION, exceptional, tol)
