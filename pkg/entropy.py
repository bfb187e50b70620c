"""
Shannon 熵核心模块
- x log x（0 处取连续延拓）
- 概率分布校验：负值截断、归一性检查
- 补偿求和的 Shannon 熵
- 子系统互信息 M(ℓ) = H(ℓ) + H(L-ℓ) - H(L)
- 链几何与熵报告的数据结构

全部使用自然对数（nats）。
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np
from scipy.special import xlogy

from errors import DistributionError, DomainError, ParameterError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
# exact 模式下允许的互信息下限
MI_FLOOR = -1e-9


class Mode(str, Enum):
    """熵的求值方式"""
    EXACT = "exact"
    SCALING = "scaling"
    UNIVERSAL = "universal"
    EXCEPTIONAL = "exceptional"
    TIGHT = "tight"
    LOOSE = "loose"
    U_ZERO = "u_zero"
    CLOSED = "closed"


def x_log_x(p: float) -> float:
    """
    计算 p·log p，p = 0 时返回 0

    Raises:
        DomainError: p 不在 [0, 1+1e-12] 内
    """
    if not 0.0 <= p <= 1.0 + 1e-12:
        raise DomainError(f"x_log_x 的自变量必须在 [0, 1] 内，收到 {p!r}")
    if p == 0.0:
        return 0.0
    return p * math.log(p)


@dataclass(frozen=True)
class ProbabilityDistribution:
    """
    离散概率分布

    weights 中每个条目可以带重数 multiplicities（按间距存储的配对概率
    就是这样表示的），count 为展开后的结果总数。
    构造时 [-tolerance, 0) 内的负值截断为 0，更负的值直接拒绝。
    """
    weights: np.ndarray
    multiplicities: np.ndarray | None = None
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if self.multiplicities is None:
            m = np.ones(w.shape, dtype=np.int64)
        else:
            m = np.asarray(self.multiplicities, dtype=np.int64).ravel()
            if m.shape != w.shape:
                raise ParameterError(f"重数长度 {m.size} 与概率长度 {w.size} 不一致")
            if np.any(m < 0):
                raise ParameterError("重数不能为负")
        if not np.all(np.isfinite(w)):
            raise DistributionError("概率中出现 NaN 或无穷大")

        active = m > 0
        if np.any(w[active] < -self.tolerance):
            worst = float(w[active].min())
            raise DistributionError(f"概率出现负值 {worst:.3e}（容差 {self.tolerance:g}）")
        w = np.where(w < 0.0, 0.0, w)

        count = int(m.sum())
        total = math.fsum((w * m).tolist())
        if abs(total - 1.0) > self.tolerance * max(count, 1):
            raise DistributionError(
                f"概率之和为 {total!r}，偏离 1 超过 {self.tolerance * max(count, 1):.3e}"
            )

        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "multiplicities", m)

    @property
    def count(self) -> int:
        return int(self.multiplicities.sum())

    def total(self) -> float:
        return math.fsum((self.weights * self.multiplicities).tolist())


def shannon_entropy(dist: ProbabilityDistribution) -> float:
    """
    -Σ m_i p_i log p_i，使用 math.fsum 做补偿求和

    Returns:
        熵（nats），落在 [0, log count] 内
    """
    terms = dist.multiplicities * xlogy(dist.weights, dist.weights)
    h = -math.fsum(terms.tolist())
    # 确定性分布会得到 -0.0 或极小的负数
    return max(h, 0.0)


def entropy_of(
    weights: Iterable[float],
    multiplicities: Iterable[int] | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> float:
    """便捷写法：先构造分布再求熵"""
    w = np.fromiter(weights, dtype=float) if not isinstance(weights, np.ndarray) else weights
    m = None
    if multiplicities is not None:
        m = multiplicities if isinstance(multiplicities, np.ndarray) else np.fromiter(multiplicities, dtype=np.int64)
    return shannon_entropy(ProbabilityDistribution(w, m, tolerance))


def mutual_information(h_sub: float, h_complement: float, h_total: float) -> float:
    """M(ℓ) = H(ℓ) + H(L-ℓ) - H(L)"""
    return h_sub + h_complement - h_total


@dataclass(frozen=True)
class ChainGeometry:
    """
    周期链的几何：总长度 L，子系统 A = [1, ℓ]

    构造时允许 0 ≤ ℓ ≤ L（粒子数分布需要 x = 0 和 x = 1 两个端点），
    其余地方通过 require_proper() 要求 1 ≤ ℓ ≤ L-1。
    """
    L: int
    ell: int

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1:
            raise ParameterError(f"链长 L 必须是正整数，收到 {self.L!r}")
        if int(self.ell) != self.ell or not 0 <= self.ell <= self.L:
            raise ParameterError(f"子系统长度 ℓ 必须在 [0, L={self.L}] 内，收到 {self.ell!r}")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "ell", int(self.ell))

    @property
    def x(self) -> float:
        return self.ell / self.L

    def require_proper(self) -> "ChainGeometry":
        if not 1 <= self.ell <= self.L - 1:
            raise ParameterError(f"子系统必须是真子集: 需要 1 ≤ ℓ ≤ L-1，收到 L={self.L}, ℓ={self.ell}")
        return self

    def complement(self) -> "ChainGeometry":
        return ChainGeometry(self.L, self.L - self.ell)


@dataclass(frozen=True)
class EntropyReport:
    """H(L), H(ℓ), H(L-ℓ), M(ℓ)（nats）以及求值方式"""
    h_total: float
    h_sub: float
    h_complement: float
    mi: float
    mode: Mode

    @classmethod
    def compose(cls, h_total: float, h_sub: float, h_complement: float, mode: Mode | str) -> "EntropyReport":
        mode = Mode(mode)
        mi = mutual_information(h_sub, h_complement, h_total)
        if mode is Mode.EXACT and mi < MI_FLOOR:
            raise DistributionError(f"exact 模式下互信息为负: {mi:.3e}")
        return cls(float(h_total), float(h_sub), float(h_complement), float(mi), mode)

    @classmethod
    def combine(cls, reports: list["EntropyReport"]) -> "EntropyReport":
        """逐分量求和（多组分粒子的熵可加）"""
        if not reports:
            raise ParameterError("至少需要一个报告")
        modes = {r.mode for r in reports}
        if len(modes) != 1:
            raise ParameterError(f"不能合并不同求值方式的报告: {sorted(m.value for m in modes)}")
        return cls(
            math.fsum(r.h_total for r in reports),
            math.fsum(r.h_sub for r in reports),
            math.fsum(r.h_complement for r in reports),
            math.fsum(r.mi for r in reports),
            reports[0].mode,
        )

    def as_dict(self) -> dict:
        return {
            "H_total": self.h_total,
            "H_sub": self.h_sub,
            "H_comp": self.h_complement,
            "MI": self.mi,
            "mode": self.mode.value,
        }
