"""
XXX 链在 σˣ 本征基下的 Shannon 熵

- 基态：所有 2^L 个构型等概率
- 单磁振子 |I⟩：p_X = (1/2^ℓ)(1 - ℓ/L + |S_X|²/L)，S_X = Σ_j e^{2πijI/L} m_j
- I ∈ {0, L/2} 的二项式闭式

一般 I 没有闭式，只能枚举。把格点拆成低位和高位两半：
低位 2^n_lo 个构型的 S 一次性用 numpy 算成表，高位按反射 Gray 码遍历，
每步只翻转一个格点，S 的高位部分 O(1) 更新。高位区间切成固定数量的块
并发计算，按块的顺序做补偿求和，结果与线程数无关。
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.special import xlogy
from scipy.stats import binom

from entropy import ChainGeometry, EntropyReport, Mode
from errors import ConvergenceError, ParameterError

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
DEFAULT_MAX_L = 30
LOW_BITS = 14
MAX_BLOCKS = 64
CHECKPOINT_INTERVAL = 1 << 16
DRIFT_TOL = 1e-8


@dataclass(frozen=True)
class SigmaXConfig:
    """σˣ 基下的一个构型；第 j 个格点对应第 j-1 位，置位表示 m_j = -1"""
    L: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < 1 << self.L:
            raise ParameterError(f"构型掩码 {self.mask} 超出 [0, 2^{self.L})")

    def signs(self) -> np.ndarray:
        bits = (self.mask >> np.arange(self.L)) & 1
        return 1.0 - 2.0 * bits


@dataclass(frozen=True)
class MagnonPhase:
    """单磁振子的相位因子 e^{2πijI/L}，j = 1..L"""
    L: int
    I: int

    def __post_init__(self):
        if self.L < 1:
            raise ParameterError(f"链长 L 必须是正整数，收到 {self.L}")
        if not 0 <= self.I < self.L:
            raise ParameterError(f"Bethe 数 I 必须在 [0, {self.L - 1}] 内，收到 {self.I}")

    @property
    def phases(self) -> np.ndarray:
        j = np.arange(1, self.L + 1)
        return np.exp(2j * np.pi * j * self.I / self.L)

    def config_probability(self, config: SigmaXConfig) -> float:
        """整条链上单个构型的概率"""
        s = complex(np.dot(self.phases, config.signs()))
        return abs(s) ** 2 / (2**self.L * self.L)


def gray(g: int) -> int:
    return g ^ (g >> 1)


def _signed_sum(phases: np.ndarray, mask: int) -> complex:
    """Σ_j m_j phase_j，mask 的第 j 位置位时 m_j = -1"""
    if phases.size == 0:
        return 0j
    bits = (mask >> np.arange(phases.size)) & 1
    return complex(np.dot(phases, 1.0 - 2.0 * bits))


def iter_gray_sums(phases: np.ndarray, start: int, stop: int) -> Iterator[tuple[int, complex]]:
    """
    按 Gray 码顺序遍历 g ∈ [start, stop)，产出 (gray(g), S)

    S 从 gray(start) 处从头算起，之后每步翻转一位做增量更新；
    每 CHECKPOINT_INTERVAL 步重算一次并检查累积误差。

    Raises:
        ConvergenceError: 增量结果与重算结果的偏差超过 DRIFT_TOL
    """
    if not 0 <= start <= stop <= 1 << phases.size:
        raise ParameterError(f"Gray 码区间 [{start}, {stop}) 超出 [0, 2^{phases.size}]")
    if start == stop:
        return
    code = gray(start)
    s = _signed_sum(phases, code)
    yield code, s
    for g in range(start + 1, stop):
        new = gray(g)
        bit = (new ^ code).bit_length() - 1
        before = -1.0 if (code >> bit) & 1 else 1.0
        s -= 2.0 * before * phases[bit]
        code = new
        if (g - start) % CHECKPOINT_INTERVAL == 0:
            fresh = _signed_sum(phases, code)
            drift = abs(s - fresh)
            if drift > DRIFT_TOL:
                raise ConvergenceError(
                    f"Gray 码第 {g} 步累积误差 {drift:.3e} 超过 {DRIFT_TOL:g}",
                    stage="gray-walk",
                    estimate=drift,
                )
            s = fresh
        yield code, s


def _low_table(phases: np.ndarray) -> np.ndarray:
    """低位全部 2^n 个掩码的 Σ m_j phase_j，下标即掩码"""
    table = np.array([phases.sum()], dtype=complex)
    for b in range(phases.size):
        table = np.concatenate([table, table - 2.0 * phases[b]])
    return table


def _block_sum(low: np.ndarray, high_phases: np.ndarray, c: float, L: int, start: int, stop: int) -> float:
    partial = []
    for _, b in iter_gray_sums(high_phases, start, stop):
        s = low + b
        r = c + (s.real**2 + s.imag**2) / L
        partial.append(float(np.sum(xlogy(r, r))))
    return math.fsum(partial)


def _work_estimate(n: int) -> str:
    return f"需要枚举 2^{n} ≈ {2.0**n:.3e} 个构型"


def _require_enumerable(n: int, max_L: int):
    if n > max_L:
        raise ParameterError(f"σˣ 枚举规模 {n} 超过上限 {max_L}（{_work_estimate(n)}），可用 --max-L-sigmax 调整")


def _enumerated_entropy(L: int, n: int, I: int, threads: int, max_L: int) -> float:
    """
    前 n 个格点上的熵: n log 2 - 2^{-n} Σ_X r_X log r_X,
    r_X = 1 - n/L + |S_X|²/L
    """
    _require_enumerable(n, max_L)
    phases = MagnonPhase(L, I).phases[:n]
    n_lo = min(n, LOW_BITS)
    low = _low_table(phases[:n_lo])
    high_phases = phases[n_lo:]
    steps = 1 << high_phases.size
    n_blocks = min(steps, MAX_BLOCKS)
    # 每块的起点从头计算；块长超过 CHECKPOINT_INTERVAL 时 iter_gray_sums 中途再重算
    edges = [steps * i // n_blocks for i in range(n_blocks + 1)]
    c = 1.0 - n / L

    logger.debug(f"σˣ 枚举 L={L} n={n} I={I}: 低位 {n_lo}，高位 {high_phases.size}，{n_blocks} 块，{threads} 线程")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        sums = list(pool.map(
            lambda bounds: _block_sum(low, high_phases, c, L, *bounds),
            zip(edges, edges[1:]),
        ))
    total = math.fsum(sums)
    return n * LOG2 - math.ldexp(total, -n)


def magnon_total_entropy(L: int, I: int, threads: int = 1, max_L: int = DEFAULT_MAX_L) -> float:
    MagnonPhase(L, I)
    return _enumerated_entropy(L, L, I, threads, max_L)


def magnon_sub_entropy(geom: ChainGeometry, I: int, threads: int = 1, max_L: int = DEFAULT_MAX_L) -> float:
    """ℓ = L 时与 magnon_total_entropy 相同"""
    if geom.ell < 1:
        raise ParameterError(f"σˣ 子系统熵要求 ℓ ≥ 1，收到 ℓ={geom.ell}")
    MagnonPhase(geom.L, I)
    return _enumerated_entropy(geom.L, geom.ell, I, threads, max_L)


def _require_special(L: int, I: int):
    if I == 0:
        return
    if L % 2 == 0 and I == L // 2:
        return
    raise ParameterError(f"二项式闭式只适用于 I = 0 或 I = L/2（L 为偶数），收到 L={L}, I={I}")


def _binomial_closed_form(n_sites: int, r: np.ndarray) -> float:
    pmf = binom.pmf(np.arange(n_sites + 1), n_sites, 0.5)
    return n_sites * LOG2 - math.fsum((pmf * xlogy(r, r)).tolist())


def special_I_total_entropy(L: int, I: int) -> float:
    """L log 2 - 2^{-L} Σ_n C(L, n) r_n log r_n，r_n = (L - 2n)²/L"""
    _require_special(L, I)
    n = np.arange(L + 1)
    return _binomial_closed_form(L, (L - 2.0 * n) ** 2 / L)


def special_I_sub_closed_form(geom: ChainGeometry, I: int) -> float:
    """
    ℓ log 2 - 2^{-ℓ} Σ_n C(ℓ, n) r_n log r_n，
    r_n = 1 + (ℓ² - (4n+1)ℓ + 4n²)/L

    这是子系统熵 H(ℓ)，与逐构型枚举的结果一致。
    """
    _require_special(geom.L, I)
    if geom.ell < 1:
        raise ParameterError(f"σˣ 子系统熵要求 ℓ ≥ 1，收到 ℓ={geom.ell}")
    L, ell = geom.L, geom.ell
    n = np.arange(ell + 1)
    return _binomial_closed_form(ell, 1.0 + (ell**2 - (4.0 * n + 1.0) * ell + 4.0 * n**2) / L)


def ground_state_report(geom: ChainGeometry) -> EntropyReport:
    geom.require_proper()
    return EntropyReport.compose(geom.L * LOG2, geom.ell * LOG2, (geom.L - geom.ell) * LOG2, Mode.EXACT)


def magnon_report(
    geom: ChainGeometry,
    I: int,
    mode: Mode | str = Mode.EXACT,
    threads: int = 1,
    max_L: int = DEFAULT_MAX_L,
) -> EntropyReport:
    """exact 为枚举；closed 为 I ∈ {0, L/2} 的二项式闭式"""
    geom.require_proper()
    mode = Mode(mode)
    if mode is Mode.CLOSED:
        return EntropyReport.compose(
            special_I_total_entropy(geom.L, I),
            special_I_sub_closed_form(geom, I),
            special_I_sub_closed_form(geom.complement(), I),
            Mode.CLOSED,
        )
    if mode is not Mode.EXACT:
        raise ParameterError(f"σˣ 单磁振子只支持 exact / closed，收到 {mode.value}")
    return EntropyReport.compose(
        magnon_total_entropy(geom.L, I, threads, max_L),
        magnon_sub_entropy(geom, I, threads, max_L),
        magnon_sub_entropy(geom.complement(), I, threads, max_L),
        Mode.EXACT,
    )
