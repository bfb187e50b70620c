"""
自由玻色链 / 自由费米链共用计算核

两种统计只在三处不同，用 Statistics 参数化：
- 配对概率的调制函数：玻色 cos²，费米 sin²
- p0 / p_j 中干涉项的符号：玻色 +，费米 -
- 是否存在同格点双占据 |j²⟩：只有玻色子有

boson.py 和 fermion.py 在此基础上各自提供对外接口。
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import xlogy

from entropy import ChainGeometry, EntropyReport, Mode
from errors import ParameterError
from quadrature import DEFAULT_MAX_DEPTH, DEFAULT_TOL, half_integer_points, integer_points, quad, xlogx
from tables import LocalProbabilities

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)


@dataclass(frozen=True)
class Statistics:
    """粒子统计"""
    name: str
    modulation: Callable[[np.ndarray], np.ndarray]
    interference: int
    diagonal: bool

    def kernel(self, phase):
        """cos² 或 sin²"""
        return self.modulation(phase) ** 2

    def zeros(self, lower: float, upper: float) -> list[float]:
        """kernel(π t) 在区间内的零点"""
        if self.modulation is np.cos:
            return half_integer_points(lower, upper)
        return integer_points(lower, upper)


BOSON = Statistics("bos", np.cos, +1, True)
FERMION = Statistics("fer", np.sin, -1, False)


def reduce_momentum_difference(k12: int, L: int) -> int:
    """把 k12 约化到 1 ≤ |k12| ≤ L/2（动量以 L 为周期）"""
    k = int(k12) % L
    if k > L / 2:
        k -= L
    return k


@dataclass(frozen=True)
class MomentumPair:
    """两个准粒子的动量（整数，模 L）"""
    k1: int
    k2: int
    k12: int
    L: int

    @classmethod
    def from_momenta(cls, k1: int, k2: int, L: int) -> "MomentumPair":
        if L < 2:
            raise ParameterError(f"两粒子态需要 L ≥ 2，收到 L={L}")
        k12 = reduce_momentum_difference(k1 - k2, L)
        if k12 == 0:
            raise ParameterError(f"k1 ≡ k2 (mod {L})：两个动量相同，请使用 |k²⟩ 态")
        return cls(int(k1), int(k2), k12, int(L))


@dataclass(frozen=True)
class ExceptionalMomentum:
    """例外动量差 |k12| = mL/n，gcd(m, n) = 1"""
    m: int
    n: int

    def __post_init__(self):
        if self.n < 2 or self.m < 1:
            raise ParameterError(f"例外动量要求 m ≥ 1, n ≥ 2，收到 m={self.m}, n={self.n}")
        if math.gcd(self.m, self.n) != 1:
            raise ParameterError(f"例外动量要求 gcd(m, n) = 1，收到 m={self.m}, n={self.n}")
        if 2 * self.m > self.n:
            raise ParameterError(f"例外动量要求 mL/n ≤ L/2，收到 m={self.m}, n={self.n}")

    @classmethod
    def from_pair(cls, pair: MomentumPair) -> "ExceptionalMomentum":
        g = math.gcd(abs(pair.k12), pair.L)
        return cls(abs(pair.k12) // g, pair.L // g)

    def validate_for(self, L: int) -> "ExceptionalMomentum":
        if L % self.n:
            raise ParameterError(f"例外动量要求 n 整除 L，收到 n={self.n}, L={L}")
        return self


# ---------- 精确概率表 ----------

def total_table(L: int, k12: float, stats: Statistics) -> LocalProbabilities:
    """整条链上的概率表；k12 可以是任意实数"""
    d = np.arange(1, L)
    weights = (4.0 / L**2) * stats.kernel(np.pi * d * k12 / L)
    diagonal = np.full(L, 2.0 / L**2) if stats.diagonal else np.zeros(0)
    return LocalProbabilities(
        p0=None,
        p_double_same=diagonal,
        pair_weights=weights,
        pair_multiplicity=L - d,
    )


def sub_table(geom: ChainGeometry, k12: float, stats: Statistics) -> LocalProbabilities:
    """子系统 A = [1, ℓ] 上的概率表"""
    geom.require_proper()
    L, ell, x = geom.L, geom.ell, geom.x
    s = math.sin(math.pi * k12 / L)
    if abs(s) < 1e-300:
        raise ParameterError(f"k12={k12} ≡ 0 (mod L={L})，两粒子态不存在")
    amp = math.sin(math.pi * k12 * x)
    sign = stats.interference

    p0 = (1.0 - x) ** 2 + sign * amp**2 / (L**2 * s**2)
    j = np.arange(1, ell + 1)
    p_single = 2.0 * (1.0 - x) / L - sign * 2.0 * amp * np.cos(2.0 * np.pi * k12 * (j - (ell + 1) / 2.0) / L) / (L**2 * s)

    d = np.arange(1, ell)
    weights = (4.0 / L**2) * stats.kernel(np.pi * d * k12 / L)
    diagonal = np.full(ell, 2.0 / L**2) if stats.diagonal else np.zeros(0)
    return LocalProbabilities(
        p0=p0,
        p_single=p_single,
        p_double_same=diagonal,
        pair_weights=weights,
        pair_multiplicity=ell - d,
    )


def total_entropy_formula(L: int, k12: int, stats: Statistics) -> float:
    """
    精确的整体熵公式（整数 k12）

    偶数 L 时对 j = 1..L/2-1 求和（间距 d 与 L-d 贡献相同，d = L/2 项为 0），
    奇数 L 时对全部 d = 1..L-1 求和。
    """
    if L % 2 == 0:
        j = np.arange(1, L // 2)
        f = stats.kernel(np.pi * j * k12 / L)
        tail = (4.0 / L) * math.fsum(xlogy(f, f).tolist())
    else:
        d = np.arange(1, L)
        f = stats.kernel(np.pi * d * k12 / L)
        tail = (2.0 / L) * math.fsum(xlogy(f, f).tolist())
    finite_size = 2.0 * LOG2 / L if stats.diagonal else 0.0
    return 2.0 * math.log(L) - 2.0 * LOG2 + finite_size - tail


# ---------- 标度极限 ----------

def scaling_sub_entropy(
    x: float,
    L: int,
    k12: float,
    stats: Statistics,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """
    |k12| ≪ L 的标度极限下的子系统熵

    H = 2x log L - 2x log 2 - P0 log P0
        - 4 ∫_0^{x/2} g(y) log g(y) dy
        - 4 ∫_0^{x} (x - t) K(π k t) log K(π k t) dt
    其中 K 为 cos²/sin²，g(y) = (1-x) ∓ sin(πkx) cos(2πky)/(πk)。
    """
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"x 必须在 [0, 1] 内，收到 {x}")
    k = abs(float(k12))
    if k == 0.0:
        raise ParameterError("标度公式要求 k12 ≠ 0")
    sign = stats.interference
    amp = math.sin(math.pi * k * x) / (math.pi * k)
    p0 = (1.0 - x) ** 2 + sign * amp**2

    def single(y):
        return xlogx((1.0 - x) - sign * amp * np.cos(2.0 * np.pi * k * y))

    def pairs(t):
        return (x - t) * xlogx(stats.kernel(np.pi * k * t))

    single_term = quad(single, 0.0, x / 2.0, tol, max_depth)
    zeros = [z / k for z in stats.zeros(0.0, k * x)]
    pair_term = quad(pairs, 0.0, x, tol, max_depth, breakpoints=zeros)
    return (
        2.0 * x * math.log(L)
        - 2.0 * x * LOG2
        - float(xlogy(p0, p0))
        - 4.0 * single_term
        - 4.0 * pair_term
    )


def universal_total_entropy(L: int) -> float:
    return 2.0 * math.log(L) - 1.0


def universal_sub_entropy(x: float, L: int) -> float:
    return 2.0 * x * math.log(L) - 2.0 * float(xlogy(1.0 - x, 1.0 - x)) - x**2 - 2.0 * x * (1.0 - x) * LOG2


def universal_mutual_info(x: float) -> float:
    return (
        -2.0 * float(xlogy(x, x))
        - 2.0 * float(xlogy(1.0 - x, 1.0 - x))
        - 2.0 * x * (1.0 - x) * (2.0 * LOG2 - 1.0)
    )


def exceptional_sum(n: int, stats: Statistics) -> float:
    """Σ_{a=1}^{n-1} K(πa/n) log K(πa/n)"""
    a = np.arange(1, n)
    f = stats.kernel(np.pi * a / n)
    return math.fsum(xlogy(f, f).tolist())


def exceptional_offset(n: int, stats: Statistics) -> float:
    """例外动量下 H(L) - 2 log L，与 L 无关"""
    return -2.0 * LOG2 - 2.0 * exceptional_sum(n, stats) / n


def exceptional_total_entropy(L: int, n: int, stats: Statistics) -> float:
    return 2.0 * math.log(L) + exceptional_offset(n, stats)


def exceptional_sub_entropy(x: float, L: int, n: int, stats: Statistics) -> float:
    return (
        2.0 * x * math.log(L)
        - 2.0 * x * LOG2
        - 2.0 * float(xlogy(1.0 - x, 1.0 - x))
        - 2.0 * x**2 * exceptional_sum(n, stats) / n
    )


def exceptional_mutual_info(x: float, n: int, stats: Statistics) -> float:
    return (
        -2.0 * float(xlogy(x, x))
        - 2.0 * float(xlogy(1.0 - x, 1.0 - x))
        + 4.0 * x * (1.0 - x) * exceptional_sum(n, stats) / n
    )


# ---------- 按求值方式分派 ----------

def _exceptional_for(pair: MomentumPair, exceptional: ExceptionalMomentum | None) -> ExceptionalMomentum:
    exc = exceptional if exceptional is not None else ExceptionalMomentum.from_pair(pair)
    return exc.validate_for(pair.L)


def total_entropy(
    L: int,
    pair: MomentumPair,
    mode: Mode | str,
    stats: Statistics,
    exceptional: ExceptionalMomentum | None = None,
) -> float:
    mode = Mode(mode)
    if pair.L != L:
        raise ParameterError(f"动量对按 L={pair.L} 约化，与 L={L} 不一致")
    if mode is Mode.EXACT:
        return total_entropy_formula(L, pair.k12, stats)
    if mode in (Mode.UNIVERSAL, Mode.SCALING):
        return universal_total_entropy(L)
    if mode is Mode.EXCEPTIONAL:
        return exceptional_total_entropy(L, _exceptional_for(pair, exceptional).n, stats)
    raise ParameterError(f"{stats.name} 链的整体熵不支持求值方式 {mode.value}")


def sub_entropy(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str,
    stats: Statistics,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> float:
    mode = Mode(mode)
    if pair.L != geom.L:
        raise ParameterError(f"动量对按 L={pair.L} 约化，与 L={geom.L} 不一致")
    if mode is Mode.EXACT:
        return sub_table(geom, pair.k12, stats).entropy()
    if mode is Mode.SCALING:
        return scaling_sub_entropy(geom.x, geom.L, pair.k12, stats, tol)
    if mode is Mode.UNIVERSAL:
        return universal_sub_entropy(geom.x, geom.L)
    if mode is Mode.EXCEPTIONAL:
        return exceptional_sub_entropy(geom.x, geom.L, _exceptional_for(pair, exceptional).n, stats)
    raise ParameterError(f"{stats.name} 链的子系统熵不支持求值方式 {mode.value}")


def report(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str,
    stats: Statistics,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> EntropyReport:
    """H(L), H(ℓ), H(L-ℓ), M(ℓ) 四元组；scaling 方式的整体熵取 2 log L - 1"""
    geom.require_proper()
    mode = Mode(mode)
    h_total = total_entropy(geom.L, pair, mode, stats, exceptional)
    h_sub = sub_entropy(geom, pair, mode, stats, exceptional, tol)
    h_comp = sub_entropy(geom.complement(), pair, mode, stats, exceptional, tol)
    logger.debug(f"{stats.name} k12={pair.k12} L={geom.L} ℓ={geom.ell} [{mode.value}] H={h_total:.6f}")
    return EntropyReport.compose(h_total, h_sub, h_comp, mode)


def mutual_info(
    geom: ChainGeometry,
    pair: MomentumPair,
    mode: Mode | str,
    stats: Statistics,
    exceptional: ExceptionalMomentum | None = None,
    tol: float = DEFAULT_TOL,
) -> float:
    """universal / exceptional 直接用闭式，exact / scaling 由三个熵组合"""
    mode = Mode(mode)
    if mode is Mode.UNIVERSAL:
        return universal_mutual_info(geom.x)
    if mode is Mode.EXCEPTIONAL:
        return exceptional_mutual_info(geom.x, _exceptional_for(pair, exceptional).n, stats)
    return report(geom, pair, mode, stats, exceptional, tol).mi
