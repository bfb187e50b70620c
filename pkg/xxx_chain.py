"""
自旋 1/2 XXX 铁磁链的磁振子激发态

- 单磁振子态：与单粒子态相同
- 双磁振子态按 Bethe 方程的解分为四类
  - I:    I1 = I2 = θ = 0，与两个全同硬核经典粒子相同
  - II:   实数 θ ∈ [0, π]，不动点迭代求解
  - IIIa: 束缚态 p = πI/L ± iv, θ = π + iLv（I 为奇数）
  - IIIb: 束缚态 p = πI/L ± iv, θ = iLv（I 为偶数）
- 束缚态的紧束缚极限（v 固定）、松束缚极限（u = Lv 固定）和 u → 0 极限

束缚态概率里的 sinh / cosh 在 Lv ≫ 1 时溢出（L=840 时 Lv 可达四千多），
所以全部在对数域计算，归一化后再取指数。
"""
import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from classical import Core, one_particle_report, two_identical_report
from entropy import ChainGeometry, EntropyReport, Mode
from errors import NotCaseIIError, ParameterError, SolverError
from free_chain import BOSON, FERMION, reduce_momentum_difference, scaling_sub_entropy, universal_sub_entropy, \
    universal_total_entropy
from quadrature import DEFAULT_MAX_DEPTH, DEFAULT_TOL, quad, xlogx
from tables import LocalProbabilities
from utils import log_cosh, log_sinh

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
SOLVER_TOL = 1e-12
SOLVER_MAX_ITER = 10_000
RESIDUAL_TOL = 1e-9


class Case(str, Enum):
    I = "I"
    II = "II"
    IIIA = "IIIa"
    IIIB = "IIIb"


class ScalingLimit(str, Enum):
    BOSONIC = "bosonic"
    FERMIONIC = "fermionic"
    UNIVERSAL = "universal"


@dataclass(frozen=True)
class BetheSolution:
    """
    两磁振子 Bethe 方程的一个解

    case II 的 p1, p2, theta 为实数；case III 的动量是复共轭对
    πI/L ± iv，theta 为 π + iLv（IIIa）或 iLv（IIIb）。
    归一化常数可能溢出，以 log_normalization 为准。
    """
    case: Case
    L: int
    I1: int
    I2: int
    p1: complex
    p2: complex
    theta: complex
    v: float
    log_normalization: float
    iterations: int = 0

    @property
    def I12(self) -> int:
        return self.I1 - self.I2

    @property
    def u(self) -> float:
        return self.L * self.v

    @property
    def normalization(self) -> float:
        return math.exp(self.log_normalization) if self.log_normalization < 700 else math.inf

    @property
    def iota1(self) -> float:
        return self.I1 / self.L

    @property
    def iota2(self) -> float:
        return self.I2 / self.L

    @property
    def p12(self) -> float:
        return (self.p1 - self.p2).real

    @property
    def k12(self) -> float:
        """case II 的有效动量差 I12 + θ/π"""
        return self.I12 + self.theta.real / math.pi


class MagnonTables(NamedTuple):
    total: LocalProbabilities
    sub: LocalProbabilities


def single_magnon_report(geom: ChainGeometry) -> EntropyReport:
    return one_particle_report(geom, Mode.EXACT)


def case_I_report(geom: ChainGeometry, mode: Mode | str = Mode.EXACT) -> EntropyReport:
    """两个全同硬核经典粒子"""
    return two_identical_report(geom, Core.HARD, mode)


# ---------- case II ----------

def _bethe_rhs(L: int, I1: int, I2: int, theta: float) -> complex:
    p1 = (2.0 * math.pi * I1 + theta) / L
    p2 = (2.0 * math.pi * I2 - theta) / L
    total = cmath.exp(1j * (p1 + p2))
    num = 1.0 + total - 2.0 * cmath.exp(1j * p1)
    den = 1.0 + total - 2.0 * cmath.exp(1j * p2)
    if abs(den) < 1e-300:
        raise SolverError(f"Bethe 方程分母为零 (L={L}, I1={I1}, I2={I2}, θ={theta})", estimate=theta)
    return -num / den


def _next_theta(L: int, I1: int, I2: int, theta: float) -> float:
    new = cmath.phase(_bethe_rhs(L, I1, I2, theta))
    # 取值区间 [-π/2, 3π/2)，θ 接近 π 时不会在 ±π 之间跳动
    return new + 2.0 * math.pi if new < -math.pi / 2 else new


def case_II_weight_sum(m: int, p12: float, theta: float) -> float:
    """
    Σ_{d=1}^{m-1} (m-d)·2[1 + cos(d p12 - θ)]

    1 - cos p12 太小时闭式分母下溢，改为直接求和。
    """
    if m < 2:
        return 0.0
    one_minus_cos = 2.0 * math.sin(p12 / 2.0) ** 2
    if one_minus_cos < 1e-6:
        d = np.arange(1, m)
        return math.fsum(((m - d) * 2.0 * (1.0 + np.cos(d * p12 - theta))).tolist())
    bracket = m * math.cos(p12 - theta) - (m - 1) * math.cos(theta) - math.cos(m * p12 - theta)
    return m * (m - 1) + bracket / one_minus_cos


def solve_case_II(
    L: int,
    I1: int,
    I2: int,
    max_iter: int = SOLVER_MAX_ITER,
    tol: float = SOLVER_TOL,
) -> BetheSolution:
    """
    不动点迭代 θ ← arg RHS(p1(θ), p2(θ))，从 θ0 = 0 出发

    出现振荡时改用 0.5 阻尼。

    Raises:
        ParameterError: Bethe 数不满足 0 ≤ I1 < I2 ≤ L-1
        NotCaseIIError: 收敛到 [0, π] 之外，或者是 p1 = p2 的退化解
        SolverError: max_iter 次迭代内未收敛，或残差过大
    """
    if not 0 <= I1 < I2 <= L - 1:
        raise ParameterError(f"case II 要求 0 ≤ I1 < I2 ≤ L-1，收到 L={L}, I1={I1}, I2={I2}")

    theta = 0.0
    prev_step = 0.0
    damped = False
    for iteration in range(1, max_iter + 1):
        new = _next_theta(L, I1, I2, theta)
        if damped:
            new = 0.5 * (theta + new)
        step = new - theta
        theta = new
        if abs(step) < tol:
            break
        if not damped and step * prev_step < 0 and abs(step) > 0.9 * abs(prev_step):
            logger.debug(f"θ 迭代振荡 (L={L}, I1={I1}, I2={I2})，启用阻尼")
            damped = True
        prev_step = step
    else:
        raise SolverError(f"(I1, I2) = ({I1}, {I2}) 在 {max_iter} 次迭代后未收敛", estimate=theta)

    if not -1e-10 <= theta <= math.pi + 1e-10:
        raise NotCaseIIError(f"(I1, I2) = ({I1}, {I2}) 的 θ = {theta:.6g} 不在 [0, π] 内，不是 case II")
    theta = min(max(theta, 0.0), math.pi)

    p1 = (2.0 * math.pi * I1 + theta) / L
    p2 = (2.0 * math.pi * I2 - theta) / L
    p12 = p1 - p2
    if abs(math.sin(p12 / 2.0)) < 1e-9:
        raise NotCaseIIError(f"(I1, I2) = ({I1}, {I2}) 只有 p1 = p2 的退化解，波函数为零")

    residual = abs(cmath.exp(1j * theta) - _bethe_rhs(L, I1, I2, theta))
    if residual > RESIDUAL_TOL:
        raise SolverError(f"(I1, I2) = ({I1}, {I2}) 的 Bethe 方程残差 {residual:.3e} 过大", estimate=theta)

    norm = case_II_weight_sum(L, p12, theta)
    logger.debug(f"case II L={L} ({I1}, {I2}): θ={theta:.12f}，迭代 {iteration} 次")
    return BetheSolution(Case.II, L, I1, I2, p1, p2, complex(theta), 0.0, math.log(norm), iteration)


def _require_case(sol: BetheSolution, *cases: Case):
    if sol.case not in cases:
        raise ParameterError(f"需要 {'/'.join(c.value for c in cases)} 的解，收到 case {sol.case.value}")


def case_II_total_table(sol: BetheSolution) -> LocalProbabilities:
    _require_case(sol, Case.II)
    L, p12, theta = sol.L, sol.p12, sol.theta.real
    norm = sol.normalization
    d = np.arange(1, L)
    return LocalProbabilities(
        p0=None,
        pair_weights=(2.0 / norm) * (1.0 + np.cos(d * p12 - theta)),
        pair_multiplicity=L - d,
    )


def case_II_sub_table(geom: ChainGeometry, sol: BetheSolution) -> LocalProbabilities:
    _require_case(sol, Case.II)
    geom.require_proper()
    L, ell = geom.L, geom.ell
    if L != sol.L:
        raise ParameterError(f"几何 L={L} 与解的 L={sol.L} 不一致")
    p12, theta = sol.p12, sol.theta.real
    norm = sol.normalization
    m = L - ell

    j = np.arange(1, ell + 1)
    p_single = (2.0 / norm) * (
        m + math.sin(p12 * m / 2.0) * np.cos(p12 * (j - (L + ell + 1) / 2.0) + theta) / math.sin(p12 / 2.0)
    )
    d = np.arange(1, ell)
    return LocalProbabilities(
        p0=case_II_weight_sum(m, p12, theta) / norm,
        p_single=p_single,
        pair_weights=(2.0 / norm) * (1.0 + np.cos(d * p12 - theta)),
        pair_multiplicity=ell - d,
    )


def case_II_tables(geom: ChainGeometry, sol: BetheSolution) -> MagnonTables:
    return MagnonTables(case_II_total_table(sol), case_II_sub_table(geom, sol))


def classify_scaling_limit(iota1: float, iota2: float, I12: int | None = None) -> tuple[ScalingLimit, int | None]:
    """
    标度极限下 case II 的结果趋向哪一种自由链公式

    - ι1 = ι2 ∈ {0, 1} 或 (ι1, ι2) = (0, 1)：玻色，k12 = I12
    - ι1 = ι2 ∈ (0, 1)：费米，k12 = I12 + 1
    - 其它：普适结果
    """
    if iota1 == iota2 and iota1 in (0.0, 1.0) or (iota1, iota2) == (0.0, 1.0):
        return ScalingLimit.BOSONIC, I12
    if iota1 == iota2:
        return ScalingLimit.FERMIONIC, None if I12 is None else I12 + 1
    return ScalingLimit.UNIVERSAL, None


def scaled_bethe_numbers(sol: BetheSolution) -> tuple[float, float]:
    """
    有限 L 下的 ι = I/L：I ≤ ⌊√L⌋ 视为 0，I ≥ L - ⌊√L⌋ 视为 1，
    |I12| ≤ ⌊√L⌋ 时视为 ι1 = ι2
    """
    window = math.isqrt(sol.L)

    def snap(I: int) -> float:
        if I <= window:
            return 0.0
        if I >= sol.L - window:
            return 1.0
        return I / sol.L

    iota1, iota2 = snap(sol.I1), snap(sol.I2)
    if abs(sol.I12) <= window and iota1 != iota2 and (iota1, iota2) != (0.0, 1.0):
        iota2 = iota1
    return iota1, iota2


def classify_solution(sol: BetheSolution) -> tuple[ScalingLimit, int | None]:
    _require_case(sol, Case.II)
    limit, k12 = classify_scaling_limit(*scaled_bethe_numbers(sol), I12=sol.I12)
    if limit is ScalingLimit.BOSONIC:
        k12 = reduce_momentum_difference(sol.I12, sol.L)
    return limit, k12


def case_II_report(
    geom: ChainGeometry,
    sol: BetheSolution,
    mode: Mode | str = Mode.EXACT,
    tol: float = DEFAULT_TOL,
) -> EntropyReport:
    """exact 逐项求和；scaling 使用分类得到的自由链公式"""
    _require_case(sol, Case.II)
    geom.require_proper()
    mode = Mode(mode)
    if mode is Mode.EXACT:
        h_total = case_II_total_table(sol).entropy()
        h_sub = case_II_sub_table(geom, sol).entropy()
        h_comp = case_II_sub_table(geom.complement(), sol).entropy()
        return EntropyReport.compose(h_total, h_sub, h_comp, Mode.EXACT)
    if mode is not Mode.SCALING:
        raise ParameterError(f"case II 只支持 exact / scaling，收到 {mode.value}")

    limit, k12 = classify_solution(sol)
    L, x = geom.L, geom.x
    logger.debug(f"case II ({sol.I1}, {sol.I2}) 的标度极限: {limit.value}, k12={k12}")
    if limit is ScalingLimit.UNIVERSAL:
        return EntropyReport.compose(
            universal_total_entropy(L), universal_sub_entropy(x, L), universal_sub_entropy(1.0 - x, L), Mode.UNIVERSAL
        )
    stats = BOSON if limit is ScalingLimit.BOSONIC else FERMION
    return EntropyReport.compose(
        universal_total_entropy(L),
        scaling_sub_entropy(x, L, k12, stats, tol),
        scaling_sub_entropy(1.0 - x, L, k12, stats, tol),
        Mode.SCALING,
    )


# ---------- case IIIa / IIIb ----------

def minimal_IIIa_bethe_number(L: int) -> int:
    """不小于 2√L/π 的最小奇数"""
    edge = math.ceil(2.0 * math.sqrt(L) / math.pi)
    return edge if edge % 2 else edge + 1


def _require_multiple_of_four(L: int):
    if L < 4 or L % 4:
        raise ParameterError(f"束缚态要求 L 为 4 的倍数，收到 L={L}")


def valid_IIIa_bethe_numbers(L: int) -> list[int]:
    _require_multiple_of_four(L)
    return list(range(minimal_IIIa_bethe_number(L), L // 2, 2))


def valid_IIIb_bethe_numbers(L: int) -> list[int]:
    _require_multiple_of_four(L)
    return list(range(2, L // 2 + 1, 2))


def bound_state_parameter(L: int, I: int) -> float:
    """L → ∞ 时的 v = -log|cos(πI/L)|"""
    c = abs(math.cos(math.pi * I / L))
    return math.inf if c < 1e-15 else -math.log(c)


def _log_ratio(L: int, v: float) -> float:
    """log[sinh((L-1)v) / sinh v]"""
    return log_sinh((L - 1) * v) - log_sinh(v)


def _bound_log_normalization(L: int, v: float, case: Case) -> float:
    """log N，N = L[sinh((L-1)v)/sinh v ∓ (L-1)]"""
    log_r = _log_ratio(L, v)
    sign = -1.0 if case is Case.IIIA else 1.0
    return math.log(L) + log_r + math.log1p(sign * (L - 1) * math.exp(-log_r))


def case_IIIa_params(L: int, I: int, v: float | None = None) -> BetheSolution:
    """
    I 为奇数，Ĩ ≤ I ≤ L/2 - 1；I1 = (I-1)/2, I2 = (I+1)/2

    v 默认取渐近值，也可以显式给定。
    """
    _require_multiple_of_four(L)
    if I % 2 == 0:
        raise ParameterError(f"case IIIa 要求 I 为奇数，收到 I={I}")
    low = minimal_IIIa_bethe_number(L)
    if not low <= I <= L // 2 - 1:
        raise ParameterError(f"case IIIa 的 I 必须在 [{low}, {L // 2 - 1}] 内，收到 I={I}")
    v = bound_state_parameter(L, I) if v is None else float(v)
    if not 0.0 < v < math.inf:
        raise ParameterError(f"case IIIa 要求有限的 v > 0，收到 v={v}")
    center = math.pi * I / L
    return BetheSolution(
        Case.IIIA, L, (I - 1) // 2, (I + 1) // 2,
        complex(center, v), complex(center, -v), complex(math.pi, L * v), v,
        _bound_log_normalization(L, v, Case.IIIA),
    )


def case_IIIb_params(L: int, I: int, v: float | None = None) -> BetheSolution:
    """
    I 为偶数，2 ≤ I ≤ L/2；I1 = I2 = I/2

    I = L/2 时 v = ∞（极端束缚），报告退化为单磁振子。
    """
    _require_multiple_of_four(L)
    if I % 2:
        raise ParameterError(f"case IIIb 要求 I 为偶数，收到 I={I}")
    if not 2 <= I <= L // 2:
        raise ParameterError(f"case IIIb 的 I 必须在 [2, {L // 2}] 内，收到 I={I}")
    v = bound_state_parameter(L, I) if v is None else float(v)
    if not v > 0.0:
        raise ParameterError(f"case IIIb 要求 v > 0，收到 v={v}")
    center = math.pi * I / L
    log_norm = math.inf if math.isinf(v) else _bound_log_normalization(L, v, Case.IIIB)
    return BetheSolution(
        Case.IIIB, L, I // 2, I // 2,
        complex(center, v), complex(center, -v), complex(0.0, L * v), v, log_norm,
    )


def _log_kernel(case: Case):
    return log_sinh if case is Case.IIIA else log_cosh


def bound_total_table(sol: BetheSolution) -> LocalProbabilities:
    """p_{j1 j2} = (4/N) sinh²[v(L/2 - d)]（IIIb 为 cosh²）"""
    _require_case(sol, Case.IIIA, Case.IIIB)
    L, v = sol.L, sol.v
    d = np.arange(1, L)
    log_w = math.log(4.0) + 2.0 * _log_kernel(sol.case)(v * np.abs(L / 2.0 - d)) - sol.log_normalization
    return LocalProbabilities(p0=None, pair_weights=np.exp(log_w), pair_multiplicity=L - d)


def bound_sub_table(geom: ChainGeometry, sol: BetheSolution) -> LocalProbabilities:
    _require_case(sol, Case.IIIA, Case.IIIB)
    geom.require_proper()
    L, ell = geom.L, geom.ell
    if L != sol.L:
        raise ParameterError(f"几何 L={L} 与解的 L={sol.L} 不一致")
    v, log_n = sol.v, sol.log_normalization
    m = L - ell
    sign = -1.0 if sol.case is Case.IIIA else 1.0
    log_sv = log_sinh(v)

    first = math.exp(math.log(m) + _log_ratio(L, v) - log_n)
    second = math.exp(log_sinh(v * ell) + log_sinh(v * m) - 2.0 * log_sv - log_n)
    constant = math.exp(math.log(m * (m - 1)) - log_n) if m > 1 else 0.0
    p0 = first - second + sign * constant

    j = np.arange(1, ell + 1)
    log_single = log_sinh(v * m) + log_cosh(2.0 * v * (j - (ell + 1) / 2.0)) - log_sv - log_n
    p_single = 2.0 * np.exp(log_single) + sign * 2.0 * math.exp(math.log(m) - log_n)

    d = np.arange(1, ell)
    log_w = math.log(4.0) + 2.0 * _log_kernel(sol.case)(v * np.abs(L / 2.0 - d)) - log_n
    return LocalProbabilities(
        p0=p0,
        p_single=p_single,
        pair_weights=np.exp(log_w),
        pair_multiplicity=ell - d,
    )


def bound_tables(geom: ChainGeometry, sol: BetheSolution) -> MagnonTables:
    return MagnonTables(bound_total_table(sol), bound_sub_table(geom, sol))


# 紧束缚极限（v 固定，L → ∞）

def tight_total_entropy(L: int, v: float) -> float:
    """log L - log(2 sinh v) + v coth v"""
    return math.log(L) - LOG2 - log_sinh(v) + v / math.tanh(v)


def tight_sub_entropy(x: float, L: int, v: float) -> float:
    return x * tight_total_entropy(L, v) - _xlogx(1.0 - x)


def tight_mutual_info(x: float) -> float:
    """与 v 无关"""
    return -_xlogx(x) - _xlogx(1.0 - x)


def _xlogx(p: float) -> float:
    return 0.0 if p <= 0.0 else p * math.log(p)


# 松束缚极限（u = Lv 固定，L → ∞）

def _peak_cuts(edge: float, u: float) -> list[float]:
    """u ≫ 1 时被积函数集中在 edge 附近宽约 1/u 的范围内，按几何间距切开"""
    return [edge + s / u for s in (-128.0, -32.0, -8.0, -2.0, -0.5, 0.5, 2.0, 8.0, 32.0, 128.0)]


def _log_s_shift(u: float, case: Case) -> float:
    """log(S ∓ 1)，S = sinh u / u；IIIa 取减号"""
    if case is Case.IIIB:
        if u == 0.0:
            return LOG2
        if u < 30.0:
            return math.log(math.sinh(u) + u) - math.log(u)
        ls = log_sinh(u)
        return ls + math.log1p(u * math.exp(-ls)) - math.log(u)
    if u <= 0.0:
        raise ParameterError(f"IIIa 的松束缚极限要求 u > 0，收到 u={u}")
    if u < 1e-2:
        return math.log(u**2 / 6.0 + u**4 / 120.0 + u**6 / 5040.0)
    if u < 30.0:
        return math.log(math.sinh(u) - u) - math.log(u)
    ls = log_sinh(u)
    return ls + math.log1p(-u * math.exp(-ls)) - math.log(u)


# u 超过该值后改用到 τ=1/2 的距离 s = u(1/2 - τ) 积分
EDGE_COORDINATE_U = 30.0
# s 超过该值后 σ log σ 小于 u·e^{-100}，积分截断
EDGE_SPAN = 64.0
_EDGE_CUTS = (0.5, 2.0, 8.0, 32.0)


def _log_sigma_near_edge(s: np.ndarray, u: float, case: Case) -> np.ndarray:
    """
    log σ(1/2 - s/u) = log(u/2) - 2s + 2 log(1 ∓ e^{-(u-2s)}) - log(1 - e^{-2u} ∓ 2u e^{-u})

    IIIa 取减号。各项都是 O(log u) 量级，没有 u 量级的大数相减。
    """
    sign = -1.0 if case is Case.IIIA else 1.0
    log_den = math.log1p(-math.exp(-2.0 * u) + sign * 2.0 * u * math.exp(-u))
    return math.log(0.5 * u) - 2.0 * s + 2.0 * np.log1p(sign * np.exp(2.0 * s - u)) - log_den


def _edge_integral(
    u: float,
    case: Case,
    s_lo: float,
    s_hi: float,
    weight,
    tol: float,
    max_depth: int,
) -> float:
    """∫ weight(s)·σ log σ ds，s ∈ [s_lo, s_hi]"""
    s_hi = min(s_hi, EDGE_SPAN)
    if s_lo >= s_hi:
        return 0.0

    def integrand(s):
        with np.errstate(divide="ignore"):
            return weight(s) * xlogx(np.exp(_log_sigma_near_edge(s, u, case)))

    return quad(integrand, s_lo, s_hi, tol, max_depth, _EDGE_CUTS)


def loose_total_entropy(
    L: int,
    u: float,
    case: Case,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """
    H(L) = 2 log L - 2 log 2 - 4 ∫_0^{1/2} σ log σ dτ,
    σ(τ) = sinh²(uτ)/(S ∓ 1)（IIIb 为 cosh²）
    """
    log_shift = _log_s_shift(u, case)
    if u > EDGE_COORDINATE_U:
        # dτ = ds/u
        integral = _edge_integral(u, case, 0.0, 0.5 * u, lambda s: 1.0, tol * u, max_depth) / u
        return 2.0 * math.log(L) - 2.0 * LOG2 - 4.0 * integral

    log_k = _log_kernel(case)

    def integrand(tau):
        with np.errstate(divide="ignore"):
            return xlogx(np.exp(2.0 * log_k(u * tau) - log_shift))

    return 2.0 * math.log(L) - 2.0 * LOG2 - 4.0 * quad(integrand, 0.0, 0.5, tol, max_depth, _peak_cuts(0.5, u))


def loose_sub_entropy(
    x: float,
    L: int,
    u: float,
    case: Case,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """
    子系统熵的松束缚极限

    P0 = 1 - x - Q，单粒子总概率 2Q，配对总概率 x - Q，
    Q = [sinh(ux) sinh(u(1-x))/u² ∓ x(1-x)]/(S ∓ 1)，
    两个积分的被积函数都已除以 S ∓ 1，u 很大时也不会溢出。
    """
    if not 0.0 < x < 1.0:
        raise ParameterError(f"松束缚极限要求 0 < x < 1，收到 x={x}")
    if u <= 0.0:
        raise ParameterError(f"松束缚极限要求 u > 0，收到 u={u}")
    sign = -1.0 if case is Case.IIIA else 1.0
    log_shift = _log_s_shift(u, case)
    log_k = _log_kernel(case)
    log_u = math.log(u)

    q = math.exp(log_sinh(u * x) + log_sinh(u * (1.0 - x)) - 2.0 * log_u - log_shift) \
        + sign * x * (1.0 - x) * math.exp(-log_shift)
    p_zero = 1.0 - x - q
    p_single = 2.0 * q
    p_pairs = x - q

    log_amp = log_sinh(u * (1.0 - x)) - log_u - log_shift
    offset = sign * (1.0 - x) * math.exp(-log_shift)

    def single(y):
        return xlogx(np.exp(log_amp + log_cosh(2.0 * u * y)) + offset)

    def pairs(t):
        with np.errstate(divide="ignore"):
            return (x - t) * xlogx(np.exp(2.0 * log_k(u * np.abs(t - 0.5)) - log_shift))

    single_term = quad(single, 0.0, x / 2.0, tol, max_depth, _peak_cuts(x / 2.0, u))
    if u > EDGE_COORDINATE_U:
        # t ≤ 1/2 时 s = ut，t > 1/2 时 s = u(1 - t)
        near = _edge_integral(u, case, 0.0, u * min(x, 0.5), lambda s: x - s / u, tol * u, max_depth)
        far = 0.0
        if x > 0.5:
            far = _edge_integral(u, case, u * (1.0 - x), 0.5 * u, lambda s: x - 1.0 + s / u, tol * u, max_depth)
        pair_term = (near + far) / u
    else:
        pair_term = quad(pairs, 0.0, x, tol, max_depth, breakpoints=(0.5, *_peak_cuts(0.0, u)))
    log_l = math.log(L)
    return (
        -_xlogx(p_zero)
        + p_single * (log_l - LOG2)
        + p_pairs * (2.0 * log_l - 2.0 * LOG2)
        - 4.0 * single_term
        - 4.0 * pair_term
    )


def _bound_report(
    geom: ChainGeometry,
    sol: BetheSolution,
    mode: Mode,
    tol: float,
) -> EntropyReport:
    L, x = geom.L, geom.x
    if mode is Mode.EXACT:
        h_total = bound_total_table(sol).entropy()
        h_sub = bound_sub_table(geom, sol).entropy()
        h_comp = bound_sub_table(geom.complement(), sol).entropy()
        return EntropyReport.compose(h_total, h_sub, h_comp, Mode.EXACT)
    if mode is Mode.TIGHT:
        return EntropyReport.compose(
            tight_total_entropy(L, sol.v),
            tight_sub_entropy(x, L, sol.v),
            tight_sub_entropy(1.0 - x, L, sol.v),
            Mode.TIGHT,
        )
    if mode is Mode.LOOSE:
        u = sol.u
        return EntropyReport.compose(
            loose_total_entropy(L, u, sol.case, tol),
            loose_sub_entropy(x, L, u, sol.case, tol),
            loose_sub_entropy(1.0 - x, L, u, sol.case, tol),
            Mode.LOOSE,
        )
    raise ParameterError(f"case {sol.case.value} 不支持求值方式 {mode.value}")


def case_IIIa_report(
    geom: ChainGeometry,
    sol: BetheSolution,
    mode: Mode | str = Mode.EXACT,
    tol: float = DEFAULT_TOL,
) -> EntropyReport:
    _require_case(sol, Case.IIIA)
    geom.require_proper()
    return _bound_report(geom, sol, Mode(mode), tol)


def case_IIIb_report(
    geom: ChainGeometry,
    sol: BetheSolution,
    mode: Mode | str = Mode.EXACT,
    tol: float = DEFAULT_TOL,
) -> EntropyReport:
    """I = L/2 时退化为单磁振子；u_zero 返回两个全同经典粒子的结果"""
    _require_case(sol, Case.IIIB)
    geom.require_proper()
    mode = Mode(mode)
    if math.isinf(sol.v):
        logger.debug(f"IIIb I=L/2 (L={sol.L}) 极端束缚，按单磁振子处理")
        return single_magnon_report(geom)
    if mode is Mode.U_ZERO:
        r = two_identical_report(geom, Core.SOFT, Mode.SCALING)
        return EntropyReport.compose(r.h_total, r.h_sub, r.h_complement, Mode.U_ZERO)
    return _bound_report(geom, sol, mode, tol)
