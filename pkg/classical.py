"""
经典粒子基准
- 单个粒子
- 两个全同粒子 / 两个可分辨粒子（软核：一个格点可放任意多个；硬核：最多一个）
- r 个全同粒子、多组分粒子的标度极限

标度极限下软核与硬核的结果相同。互信息等于子系统粒子数（粗粒化构型）
分布的 Shannon 熵。
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import comb, gammaln

from entropy import ChainGeometry, EntropyReport, Mode
from errors import ParameterError
from number_dist import classical_binomial_entropy
from tables import LocalProbabilities

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)


class Core(str, Enum):
    SOFT = "soft"
    HARD = "hard"


@dataclass(frozen=True)
class ClassicalConfig:
    """每个组分的粒子数 r_i；R = Σ r_i"""
    core: Core = Core.SOFT
    species: tuple[int, ...] = field(default=(1,))

    def __post_init__(self):
        object.__setattr__(self, "core", Core(self.core))
        species = tuple(int(r) for r in self.species)
        if not species or any(r < 1 for r in species):
            raise ParameterError(f"每个组分至少一个粒子，收到 {self.species!r}")
        object.__setattr__(self, "species", species)

    @property
    def R(self) -> int:
        return sum(self.species)


def log_factorial(r: int) -> float:
    """log r!，r ≤ 20 时用精确整数阶乘"""
    if r < 0:
        raise ParameterError(f"阶乘参数不能为负: {r}")
    if r <= 20:
        return math.log(math.factorial(r))
    return float(gammaln(r + 1))


def _exact_or_scaling(mode: Mode | str) -> Mode:
    mode = Mode(mode)
    if mode not in (Mode.EXACT, Mode.SCALING):
        raise ParameterError(f"经典粒子只支持 exact / scaling，收到 {mode.value}")
    return mode


def _report_from_tables(geom: ChainGeometry, total_fn, sub_fn) -> EntropyReport:
    h_total = total_fn(geom.L).entropy()
    h_sub = sub_fn(geom).entropy()
    h_comp = sub_fn(geom.complement()).entropy()
    return EntropyReport.compose(h_total, h_sub, h_comp, Mode.EXACT)


# ---------- 单个粒子 ----------

def one_particle_total_table(L: int) -> LocalProbabilities:
    return LocalProbabilities(p0=None, p_single=np.full(L, 1.0 / L))


def one_particle_sub_table(geom: ChainGeometry) -> LocalProbabilities:
    geom.require_proper()
    return LocalProbabilities(p0=1.0 - geom.x, p_single=np.full(geom.ell, 1.0 / geom.L))


def one_particle_report(geom: ChainGeometry, mode: Mode | str = Mode.EXACT) -> EntropyReport:
    """
    H(L) = log L, H(ℓ) = x log L - (1-x) log(1-x), M = -x log x - (1-x) log(1-x)

    概率表本身是精确的，两种方式只差在是否逐项求和。
    """
    geom.require_proper()
    mode = _exact_or_scaling(mode)
    if mode is Mode.EXACT:
        return _report_from_tables(geom, one_particle_total_table, one_particle_sub_table)
    return r_identical_scaling_report(geom.x, geom.L, 1)


# ---------- 两个全同粒子 ----------

def soft_two_identical_total_table(L: int) -> LocalProbabilities:
    d = np.arange(1, L)
    return LocalProbabilities(
        p0=None,
        p_double_same=np.full(L, 1.0 / L**2),
        pair_weights=np.full(L - 1, 2.0 / L**2),
        pair_multiplicity=L - d,
    )


def soft_two_identical_sub_table(geom: ChainGeometry) -> LocalProbabilities:
    geom.require_proper()
    L, ell, x = geom.L, geom.ell, geom.x
    d = np.arange(1, ell)
    return LocalProbabilities(
        p0=(1.0 - x) ** 2,
        p_single=np.full(ell, 2.0 * (1.0 - x) / L),
        p_double_same=np.full(ell, 1.0 / L**2),
        pair_weights=np.full(ell - 1, 2.0 / L**2),
        pair_multiplicity=ell - d,
    )


def hard_two_identical_total_table(L: int) -> LocalProbabilities:
    if L < 2:
        raise ParameterError(f"两个硬核粒子需要 L ≥ 2，收到 L={L}")
    d = np.arange(1, L)
    return LocalProbabilities(
        p0=None,
        pair_weights=np.full(L - 1, 2.0 / (L * (L - 1))),
        pair_multiplicity=L - d,
    )


def hard_two_identical_sub_table(geom: ChainGeometry) -> LocalProbabilities:
    geom.require_proper()
    L, ell = geom.L, geom.ell
    m = L - ell
    norm = L * (L - 1)
    d = np.arange(1, ell)
    return LocalProbabilities(
        p0=m * (m - 1) / norm,
        p_single=np.full(ell, 2.0 * m / norm),
        pair_weights=np.full(ell - 1, 2.0 / norm),
        pair_multiplicity=ell - d,
    )


def two_identical_report(geom: ChainGeometry, core: Core | str = Core.SOFT, mode: Mode | str = Mode.EXACT) -> EntropyReport:
    geom.require_proper()
    mode = _exact_or_scaling(mode)
    if mode is Mode.SCALING:
        return r_identical_scaling_report(geom.x, geom.L, 2)
    if Core(core) is Core.SOFT:
        return _report_from_tables(geom, soft_two_identical_total_table, soft_two_identical_sub_table)
    return _report_from_tables(geom, hard_two_identical_total_table, hard_two_identical_sub_table)


# ---------- 两个可分辨粒子 ----------

def soft_two_distinguishable_total_table(L: int) -> LocalProbabilities:
    d = np.arange(1, L)
    return LocalProbabilities(
        p0=None,
        p_double_same=np.full(L, 1.0 / L**2),
        pair_weights=np.full(L - 1, 1.0 / L**2),
        pair_multiplicity=2 * (L - d),
    )


def soft_two_distinguishable_sub_table(geom: ChainGeometry) -> LocalProbabilities:
    """p_single 前 ℓ 项为只有红粒子在 j，后 ℓ 项为只有蓝粒子在 j"""
    geom.require_proper()
    L, ell, x = geom.L, geom.ell, geom.x
    d = np.arange(1, ell)
    return LocalProbabilities(
        p0=(1.0 - x) ** 2,
        p_single=np.full(2 * ell, (1.0 - x) / L),
        p_double_same=np.full(ell, 1.0 / L**2),
        pair_weights=np.full(ell - 1, 1.0 / L**2),
        pair_multiplicity=2 * (ell - d),
    )


def hard_two_distinguishable_total_table(L: int) -> LocalProbabilities:
    if L < 2:
        raise ParameterError(f"两个硬核粒子需要 L ≥ 2，收到 L={L}")
    d = np.arange(1, L)
    return LocalProbabilities(
        p0=None,
        pair_weights=np.full(L - 1, 1.0 / (L * (L - 1))),
        pair_multiplicity=2 * (L - d),
    )


def hard_two_distinguishable_sub_table(geom: ChainGeometry) -> LocalProbabilities:
    geom.require_proper()
    L, ell = geom.L, geom.ell
    m = L - ell
    norm = L * (L - 1)
    d = np.arange(1, ell)
    return LocalProbabilities(
        p0=m * (m - 1) / norm,
        p_single=np.full(2 * ell, m / norm),
        pair_weights=np.full(ell - 1, 1.0 / norm),
        pair_multiplicity=2 * (ell - d),
    )


def two_distinguishable_report(geom: ChainGeometry, core: Core | str = Core.SOFT, mode: Mode | str = Mode.EXACT) -> EntropyReport:
    geom.require_proper()
    mode = _exact_or_scaling(mode)
    if mode is Mode.SCALING:
        return multi_species_scaling_report(geom.x, geom.L, ClassicalConfig(core, (1, 1)))
    if Core(core) is Core.SOFT:
        return _report_from_tables(geom, soft_two_distinguishable_total_table, soft_two_distinguishable_sub_table)
    return _report_from_tables(geom, hard_two_distinguishable_total_table, hard_two_distinguishable_sub_table)


# ---------- r 个全同粒子、多组分（标度极限） ----------

def r_identical_total_entropy(L: int, r: int) -> float:
    return r * math.log(L) - log_factorial(r)


def r_identical_sub_entropy(x: float, L: int, r: int) -> float:
    """r x log L - Σ_i C_r^i x^i (1-x)^{r-i} log[i! C_r^i (1-x)^{r-i}]"""
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"x 必须在 [0, 1] 内，收到 {x}")
    terms = []
    for i in range(r + 1):
        c = float(comb(r, i, exact=True))
        weight = c * x**i * (1.0 - x) ** (r - i)
        if weight == 0.0:
            continue
        log_arg = log_factorial(i) + math.log(c)
        if i < r:
            log_arg += (r - i) * math.log(1.0 - x)
        terms.append(weight * log_arg)
    return r * x * math.log(L) - math.fsum(terms)


def r_identical_scaling_report(x: float, L: int, r: int) -> EntropyReport:
    if r < 1:
        raise ParameterError(f"r 至少为 1，收到 {r}")
    if not 0.0 < x < 1.0:
        raise ParameterError(f"标度极限要求 0 < x < 1，收到 {x}")
    return EntropyReport.compose(
        r_identical_total_entropy(L, r),
        r_identical_sub_entropy(x, L, r),
        r_identical_sub_entropy(1.0 - x, L, r),
        Mode.SCALING,
    )


def r_identical_mutual_info(x: float, r: int) -> float:
    """粗粒化后的二项分布熵"""
    return classical_binomial_entropy(r, x)


def multi_species_scaling_report(x: float, L: int, config: ClassicalConfig) -> EntropyReport:
    """各组分报告逐分量相加"""
    reports = [r_identical_scaling_report(x, L, r) for r in config.species]
    logger.debug(f"多组分 {config.species} (R={config.R}) 合并 {len(reports)} 个报告")
    return EntropyReport.combine(reports)


def coarse_grained_entropy(x: float, config: ClassicalConfig) -> float:
    """子系统内各组分粒子数联合分布的熵（各组分独立，故为二项熵之和）"""
    return math.fsum(classical_binomial_entropy(r, x) for r in config.species)
