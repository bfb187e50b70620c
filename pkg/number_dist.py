"""
子系统粒子数分布的 Shannon 熵

两粒子态 |k1 k2⟩ 在子系统 A 中的粒子数 N_A ∈ {0, 1, 2}：
    p0 = (1-x)² ± D,  p1 = 2x(1-x) ∓ 2D,  p2 = x² ± D
    D = sin²(π k12 x) / (L² sin²(π k12 / L))
玻色取上面的符号，费米取下面的符号。|k12| → ∞ 时 D → 0，
分布退化为经典的二项分布（准粒子图像成立）。
"""
import logging
import math

import numpy as np
from scipy.stats import binom

from entropy import ChainGeometry, EntropyReport, Mode, ProbabilityDistribution, shannon_entropy
from errors import ParameterError
from free_chain import BOSON, FERMION, MomentumPair, Statistics
from tables import LocalProbabilities

logger = logging.getLogger(__name__)


def _interference(geom: ChainGeometry, pair: MomentumPair) -> float:
    L = geom.L
    s = math.sin(math.pi * pair.k12 / L)
    return math.sin(math.pi * pair.k12 * geom.x) ** 2 / (L**2 * s**2)


def _number_probs(geom: ChainGeometry, pair: MomentumPair, stats: Statistics) -> ProbabilityDistribution:
    if pair.L != geom.L:
        raise ParameterError(f"动量对按 L={pair.L} 约化，与 L={geom.L} 不一致")
    x = geom.x
    dd = stats.interference * _interference(geom, pair)
    return ProbabilityDistribution(np.array([(1.0 - x) ** 2 + dd, 2.0 * x * (1.0 - x) - 2.0 * dd, x**2 + dd]))


def boson_number_probs(geom: ChainGeometry, pair: MomentumPair) -> ProbabilityDistribution:
    return _number_probs(geom, pair, BOSON)


def fermion_number_probs(geom: ChainGeometry, pair: MomentumPair) -> ProbabilityDistribution:
    return _number_probs(geom, pair, FERMION)


def number_probs_from_table(table: LocalProbabilities) -> ProbabilityDistribution:
    """把完整的子系统概率表按粒子数求和"""
    return ProbabilityDistribution(np.array(table.number_probs()))


def number_entropy(probs: ProbabilityDistribution) -> float:
    return shannon_entropy(probs)


def classical_binomial_entropy(R: int, x: float) -> float:
    """
    R 个独立经典粒子落入 A 的个数服从 Binomial(R, x)，返回其熵

    R = 0 时为 0。
    """
    if R < 0:
        raise ParameterError(f"粒子数不能为负: {R}")
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"x 必须在 [0, 1] 内，收到 {x}")
    if R == 0:
        return 0.0
    pmf = binom.pmf(np.arange(R + 1), R, x)
    return shannon_entropy(ProbabilityDistribution(pmf))


def single_particle_number_entropy(geom: ChainGeometry) -> float:
    return classical_binomial_entropy(1, geom.x)


def kk_number_entropy(geom: ChainGeometry) -> float:
    """|k²⟩ 的粒子数分布恰好是 Binomial(2, x)"""
    return classical_binomial_entropy(2, geom.x)


def number_report(
    geom: ChainGeometry,
    statistics: str = "bos",
    pair: MomentumPair | None = None,
    R: int = 2,
) -> EntropyReport:
    """
    粒子数分布的四元组

    总粒子数是确定的，所以 H_total = 0，M = H(N_A) + H(N_B) = 2 H(N_A)。
    这里的 M 沿用 H_A + H_B - H_total 的组合，并不是 I(N_A; N_B)：
    N_B 由 N_A 决定，后者等于 H(N_A)。
    statistics 取 bos / fer（需要 pair）或 classical（需要 R）。
    """
    if statistics in ("bos", "fer"):
        if pair is None:
            raise ParameterError("bos / fer 粒子数分布需要动量对 (k1, k2)")
        probs = boson_number_probs if statistics == "bos" else fermion_number_probs
        h_sub = number_entropy(probs(geom, pair))
        h_comp = number_entropy(probs(geom.complement(), pair))
    elif statistics == "classical":
        h_sub = classical_binomial_entropy(R, geom.x)
        h_comp = classical_binomial_entropy(R, 1.0 - geom.x)
    else:
        raise ParameterError(f"未知的统计类型: {statistics!r}")
    return EntropyReport.compose(0.0, h_sub, h_comp, Mode.EXACT)
