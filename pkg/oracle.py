"""
暴力波函数：由显式振幅直接算出构型概率，供测试与闭式概率表逐项对照

只适用于很小的 L。
"""
import cmath
import itertools
import math
from collections import Counter
from typing import Callable

import numpy as np

from entropy import entropy_of
from free_chain import Statistics
from xxx_chain import BetheSolution

Configurations = dict[tuple[int, ...], float]


def normalized_pairs(L: int, amplitude: Callable[[int, int], complex], diagonal: bool) -> Configurations:
    """
    两粒子振幅 → 归一化的 {(j1, j2): 概率}，j1 ≤ j2

    diagonal 为 False 时只取 j1 < j2（硬核）。
    """
    weights: Configurations = {}
    for j1 in range(1, L + 1):
        for j2 in range(j1 if diagonal else j1 + 1, L + 1):
            weights[(j1, j2)] = abs(amplitude(j1, j2)) ** 2
    norm = math.fsum(weights.values())
    return {key: w / norm for key, w in weights.items()}


def marginal(probs: Configurations, ell: int) -> Configurations:
    """只保留 A = [1, ℓ] 内的格点"""
    out: Counter = Counter()
    for sites, p in probs.items():
        out[tuple(j for j in sites if j <= ell)] += p
    return dict(out)


def free_pair_probs(L: int, k1: int, k2: int, stats: Statistics) -> Configurations:
    """
    b†_{k1} b†_{k2} |0⟩（或费米子 c†）在格点基下的概率

    玻色子同格点双占据的振幅多一个 √2。
    """
    sign = stats.interference

    def amplitude(j1: int, j2: int) -> complex:
        a = cmath.exp(2j * math.pi * (k1 * j1 + k2 * j2) / L)
        b = cmath.exp(2j * math.pi * (k2 * j1 + k1 * j2) / L)
        if j1 == j2:
            return math.sqrt(2.0) * a
        return a + sign * b

    return normalized_pairs(L, amplitude, stats.diagonal)


def bethe_probs(sol: BetheSolution) -> Configurations:
    """两磁振子 Bethe 波函数 e^{i(j1p1+j2p2+θ/2)} + e^{i(j1p2+j2p1-θ/2)}，p、θ 可以是复数"""
    p1, p2, theta = sol.p1, sol.p2, sol.theta

    def amplitude(j1: int, j2: int) -> complex:
        return cmath.exp(1j * (j1 * p1 + j2 * p2 + theta / 2)) + cmath.exp(1j * (j1 * p2 + j2 * p1 - theta / 2))

    return normalized_pairs(sol.L, amplitude, diagonal=False)


def bethe_normalization(sol: BetheSolution) -> float:
    """Σ_{j1<j2} |U|²，不归一化"""
    p1, p2, theta = sol.p1, sol.p2, sol.theta
    return math.fsum(
        abs(cmath.exp(1j * (j1 * p1 + j2 * p2 + theta / 2)) + cmath.exp(1j * (j1 * p2 + j2 * p1 - theta / 2))) ** 2
        for j1 in range(1, sol.L + 1)
        for j2 in range(j1 + 1, sol.L + 1)
    )


def hard_core_pair_probs(L: int) -> Configurations:
    return normalized_pairs(L, lambda j1, j2: 1.0, diagonal=False)


def soft_core_joint(L: int, species: tuple[int, ...]) -> Counter:
    """
    多组分软核经典粒子：每个粒子独立均匀地落在 L 个格点上

    构型记为各组分的有序格点元组，同组分粒子全同（元组排序）。
    """
    joint: Counter = Counter()
    R = sum(species)
    weight = 1.0 / L**R
    for sites in itertools.product(range(1, L + 1), repeat=R):
        key, offset = [], 0
        for r in species:
            key.append(tuple(sorted(sites[offset:offset + r])))
            offset += r
        joint[tuple(key)] += weight
    return joint


def soft_core_entropies(L: int, ell: int, species: tuple[int, ...]) -> tuple[float, float]:
    """(H(L), H(ℓ))，子系统熵由联合分布边缘化得到"""
    joint = soft_core_joint(L, species)
    sub: Counter = Counter()
    for key, p in joint.items():
        sub[tuple(tuple(j for j in group if j <= ell) for group in key)] += p
    return entropy_of(np.array(list(joint.values()))), entropy_of(np.array(list(sub.values())))


def fwht(values: np.ndarray) -> np.ndarray:
    """快速 Walsh-Hadamard 变换（不归一化），长度必须是 2 的幂"""
    a = np.asarray(values, dtype=complex).copy()
    n = a.size
    if n & (n - 1):
        raise ValueError(f"长度 {n} 不是 2 的幂")
    h = 1
    while h < n:
        v = a.reshape(-1, 2, h)
        a = np.stack((v[:, 0] + v[:, 1], v[:, 0] - v[:, 1]), axis=1).reshape(-1)
        h *= 2
    return a


def sigma_x_probs(L: int, I: int) -> np.ndarray:
    """
    单磁振子态在 σˣ 基下全部 2^L 个构型的概率（下标即掩码）

    z 基下只有单翻转态 e_j 有振幅 e^{2πijI/L}/√L，做一次 Hadamard 变换。
    """
    psi = np.zeros(1 << L, dtype=complex)
    j = np.arange(1, L + 1)
    psi[1 << (j - 1)] = np.exp(2j * np.pi * j * I / L) / math.sqrt(L)
    amp = fwht(psi) / math.sqrt(2.0**L)
    return np.abs(amp) ** 2


def sigma_x_marginal(probs: np.ndarray, L: int, ell: int) -> np.ndarray:
    """对高位（格点 ℓ+1..L）求和"""
    return probs.reshape(1 << (L - ell), 1 << ell).sum(axis=0)
