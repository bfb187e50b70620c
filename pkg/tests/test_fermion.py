import math

import numpy as np
import pytest

import oracle
from entropy import ChainGeometry, Mode
from fermion import fer_k1k2_mutual_info, fer_k1k2_report, fer_k1k2_sub_entropy, fer_k1k2_sub_table, \
    fer_k1k2_total_entropy, fer_k1k2_total_table, fer_single_particle_report
from free_chain import FERMION, MomentumPair, exceptional_mutual_info, exceptional_offset, exceptional_sub_entropy, \
    total_table, universal_mutual_info, universal_sub_entropy


def test_single_particle_same_as_boson() -> None:
    report = fer_single_particle_report(ChainGeometry(10, 3))
    assert report.h_total == pytest.approx(math.log(10))


@pytest.mark.parametrize("L", [4, 7, 10])
def test_tables_match_wavefunction(L: int) -> None:
    for k1, k2 in [(1, 0), (2, -1), (L - 1, 1)]:
        pair = MomentumPair.from_momenta(k1, k2, L)
        probs = oracle.free_pair_probs(L, k1, k2, FERMION)
        table = fer_k1k2_total_table(L, pair).configurations(L)
        assert max(abs(table.get(k, 0.0) - probs.get(k, 0.0)) for k in set(table) | set(probs)) < 1e-10
        for ell in range(1, L):
            sub = fer_k1k2_sub_table(ChainGeometry(L, ell), pair).configurations(ell)
            marg = oracle.marginal(probs, ell)
            assert max(abs(sub.get(k, 0.0) - marg.get(k, 0.0)) for k in set(sub) | set(marg)) < 1e-10


def test_no_double_occupancy() -> None:
    table = fer_k1k2_total_table(8, MomentumPair.from_momenta(3, 0, 8))
    assert table.p_double_same.size == 0


@pytest.mark.parametrize("k12", [1, 5, 17])
def test_total_entropy_is_universal_at_large_L(k12: int) -> None:
    L = 840
    assert abs(fer_k1k2_total_entropy(L, MomentumPair.from_momenta(k12, 0, L)) - (2 * math.log(L) - 1)) < 0.01


def test_exceptional_half_chain_momentum_is_exact() -> None:
    L = 840
    pair = MomentumPair.from_momenta(420, 0, L)
    assert fer_k1k2_total_entropy(L, pair) == pytest.approx(2 * math.log(L) - 2 * math.log(2), abs=1e-6)
    assert fer_k1k2_total_entropy(L, pair, Mode.EXCEPTIONAL) == pytest.approx(2 * math.log(L) - 2 * math.log(2))


def test_exceptional_approaches_universal_for_large_n() -> None:
    n, L, x = 10_000, 10_000, 0.6
    assert abs(exceptional_offset(n, FERMION) + 1.0) < 1e-3
    assert abs(exceptional_sub_entropy(x, L, n, FERMION) - universal_sub_entropy(x, L)) < 1e-3
    assert abs(exceptional_mutual_info(x, n, FERMION) - universal_mutual_info(x)) < 1e-3


@pytest.mark.parametrize("x", [0.25, 0.5, 0.75])
def test_scaling_formula_matches_exact(x: float) -> None:
    L = 240
    pair = MomentumPair.from_momenta(1, 0, L)
    geom = ChainGeometry(L, int(x * L))
    assert abs(fer_k1k2_sub_entropy(geom, pair) - fer_k1k2_sub_entropy(geom, pair, Mode.SCALING)) < 0.02


def test_mutual_information_modes_consistent() -> None:
    L = 60
    geom = ChainGeometry(L, 20)
    pair = MomentumPair.from_momenta(4, 1, L)
    exact = fer_k1k2_report(geom, pair)
    assert fer_k1k2_mutual_info(geom, pair) == pytest.approx(exact.mi)
    assert fer_k1k2_mutual_info(geom, pair, Mode.UNIVERSAL) == pytest.approx(universal_mutual_info(1 / 3))


def test_random_reports_have_nonnegative_mi() -> None:
    rng = np.random.default_rng(11)
    for _ in range(1000):
        L = int(rng.integers(3, 50))
        k12 = int(rng.integers(1, L))
        ell = int(rng.integers(1, L))
        report = fer_k1k2_report(ChainGeometry(L, ell), MomentumPair.from_momenta(k12, 0, L))
        assert report.mi >= -1e-9
        assert 0.0 <= report.h_sub <= math.log(1 + ell + ell * (ell - 1) // 2) + 1e-12


@pytest.mark.parametrize("n, offset", [
    (3, -math.log(3)),
    (5, math.log(2) - ((5 - math.sqrt(5)) * math.log(5 - math.sqrt(5)) + (5 + math.sqrt(5)) * math.log(5 + math.sqrt(5))) / 10),
])
def test_exceptional_offsets(n: int, offset: float) -> None:
    assert exceptional_offset(n, FERMION) == pytest.approx(offset, abs=1e-12)


def test_prime_chain_is_universal_for_every_momentum_difference() -> None:
    L = 997
    for k12 in range(1, (L - 1) // 2 + 1):
        assert abs(total_table(L, k12, FERMION).entropy() - (2 * math.log(L) - 1)) < 2 * math.log(L) / L
