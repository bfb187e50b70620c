"""
局域构型概率表

一张表描述某个态在某个区域（整条链或子系统 A）上的全部局域构型概率：
- p0: 区域内没有粒子（整条链时为 None）
- p_single: 区域内恰有一个粒子且位于 j
- p_double_same: 两个粒子同在 j（只有玻色子、软核经典粒子有）
- pair_weights / pair_multiplicity: 两个粒子间距为 d 的单个构型概率及其重数

配对概率只依赖间距 d，按 d 存储可以把 O(L²) 的表压缩到 O(L)。
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from entropy import DEFAULT_TOLERANCE, ProbabilityDistribution, shannon_entropy
from errors import ParameterError

logger = logging.getLogger(__name__)

_EMPTY = np.zeros(0)


def _array(values) -> np.ndarray:
    return np.asarray(values, dtype=float).ravel()


@dataclass(frozen=True)
class LocalProbabilities:
    p0: float | None = None
    p_single: np.ndarray = field(default_factory=lambda: _EMPTY)
    p_double_same: np.ndarray = field(default_factory=lambda: _EMPTY)
    pair_weights: np.ndarray = field(default_factory=lambda: _EMPTY)
    pair_multiplicity: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "p_single", _array(self.p_single))
        object.__setattr__(self, "p_double_same", _array(self.p_double_same))
        object.__setattr__(self, "pair_weights", _array(self.pair_weights))
        mult = np.asarray(self.pair_multiplicity, dtype=np.int64).ravel()
        if mult.shape != self.pair_weights.shape:
            raise ParameterError(
                f"配对概率 ({self.pair_weights.size}) 与重数 ({mult.size}) 长度不一致"
            )
        object.__setattr__(self, "pair_multiplicity", mult)

    def entries(self) -> tuple[np.ndarray, np.ndarray]:
        """展平为 (概率, 重数) 两个数组"""
        head = [] if self.p0 is None else [self.p0]
        weights = np.concatenate([_array(head), self.p_single, self.p_double_same, self.pair_weights])
        counts = np.concatenate([
            np.ones(len(head) + self.p_single.size + self.p_double_same.size, dtype=np.int64),
            self.pair_multiplicity,
        ])
        return weights, counts

    def to_distribution(self) -> ProbabilityDistribution:
        weights, counts = self.entries()
        return ProbabilityDistribution(weights, counts, self.tolerance)

    def total(self) -> float:
        weights, counts = self.entries()
        return math.fsum((weights * counts).tolist())

    def entropy(self) -> float:
        return shannon_entropy(self.to_distribution())

    def number_probs(self) -> tuple[float, float, float]:
        """按区域内粒子数粗粒化: (N=0, N=1, N=2)"""
        p0 = 0.0 if self.p0 is None else max(self.p0, 0.0)
        p1 = math.fsum(np.clip(self.p_single, 0.0, None).tolist())
        p2 = math.fsum(np.clip(self.p_double_same, 0.0, None).tolist()) + math.fsum(
            (np.clip(self.pair_weights, 0.0, None) * self.pair_multiplicity).tolist()
        )
        return p0, p1, p2

    def configurations(self, size: int) -> dict[tuple[int, ...], float]:
        """
        展开为 {有序格点元组: 概率}（格点从 1 开始编号）

        只适用于全同粒子的表，且配对重数必须是 size - d；
        用于和暴力波函数结果逐项对照，size 应当很小。
        """
        out: dict[tuple[int, ...], float] = {}
        if self.p0 is not None:
            out[()] = self.p0
        if self.p_single.size not in (0, size):
            raise ParameterError(f"单粒子条目数 {self.p_single.size} 与区域大小 {size} 不符")
        for j, p in enumerate(self.p_single, start=1):
            out[(j,)] = float(p)
        for j, p in enumerate(self.p_double_same, start=1):
            out[(j, j)] = float(p)
        for d, (p, mult) in enumerate(zip(self.pair_weights, self.pair_multiplicity), start=1):
            if mult != size - d:
                raise ParameterError(f"间距 d={d} 的重数 {mult} 不等于 {size - d}")
            for j in range(1, size - d + 1):
                out[(j, j + d)] = float(p)
        return out
