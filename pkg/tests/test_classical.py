import math

import numpy as np
import pytest

import oracle
from classical import ClassicalConfig, Core, coarse_grained_entropy, hard_two_identical_total_table, log_factorial, \
    multi_species_scaling_report, one_particle_report, r_identical_mutual_info, r_identical_scaling_report, \
    two_distinguishable_report, two_identical_report
from entropy import ChainGeometry, Mode, entropy_of
from errors import ParameterError
from number_dist import classical_binomial_entropy


def test_one_particle_exact_equals_scaling() -> None:
    geom = ChainGeometry(40, 13)
    exact = one_particle_report(geom)
    scaling = one_particle_report(geom, Mode.SCALING)
    assert exact.h_total == pytest.approx(math.log(40))
    assert exact.h_sub == pytest.approx(scaling.h_sub, abs=1e-12)
    assert exact.mi == pytest.approx(classical_binomial_entropy(1, geom.x), abs=1e-12)


@pytest.mark.parametrize("L, ell", [(5, 2), (6, 3), (7, 5)])
def test_soft_core_tables_match_enumeration(L: int, ell: int) -> None:
    geom = ChainGeometry(L, ell)
    identical = two_identical_report(geom, Core.SOFT)
    h_total, h_sub = oracle.soft_core_entropies(L, ell, (2,))
    assert identical.h_total == pytest.approx(h_total, abs=1e-12)
    assert identical.h_sub == pytest.approx(h_sub, abs=1e-12)

    distinguishable = two_distinguishable_report(geom, Core.SOFT)
    h_total, h_sub = oracle.soft_core_entropies(L, ell, (1, 1))
    assert distinguishable.h_total == pytest.approx(h_total, abs=1e-12)
    assert distinguishable.h_sub == pytest.approx(h_sub, abs=1e-12)


def test_hard_core_total_matches_enumeration() -> None:
    L = 9
    probs = oracle.hard_core_pair_probs(L)
    assert hard_two_identical_total_table(L).entropy() == pytest.approx(entropy_of(np.array(list(probs.values()))))
    assert two_identical_report(ChainGeometry(L, 4), Core.HARD).h_total == pytest.approx(math.log(L * (L - 1) / 2))


@pytest.mark.parametrize("ell", [1, 4, 9, 15])
def test_exact_mutual_information_is_number_entropy(ell: int) -> None:
    L = 16
    geom = ChainGeometry(L, ell)
    x, m = geom.x, L - ell
    assert two_identical_report(geom, Core.SOFT).mi == pytest.approx(classical_binomial_entropy(2, x), abs=1e-12)
    assert two_distinguishable_report(geom, Core.SOFT).mi == pytest.approx(2 * classical_binomial_entropy(1, x),
                                                                           abs=1e-12)
    # 硬核时子系统粒子数服从超几何分布
    hyper = np.array([m * (m - 1), 2 * ell * m, ell * (ell - 1)]) / (L * (L - 1))
    assert two_identical_report(geom, Core.HARD).mi == pytest.approx(entropy_of(hyper), abs=1e-12)


def test_exact_approaches_scaling() -> None:
    L = 2000
    geom = ChainGeometry(L, L // 2)
    scaling = two_identical_report(geom, Core.SOFT, Mode.SCALING)
    for core in (Core.SOFT, Core.HARD):
        exact = two_identical_report(geom, core)
        assert abs(exact.h_total - scaling.h_total) < 0.01
        assert abs(exact.h_sub - scaling.h_sub) < 0.01


def test_r_identical_mutual_information() -> None:
    report = r_identical_scaling_report(0.5, 1000, 3)
    assert report.mi == pytest.approx(1.2555, abs=1e-4)
    assert r_identical_mutual_info(0.5, 3) == pytest.approx(report.mi, abs=1e-12)
    for x in (0.1, 0.37, 0.8):
        for r in (1, 2, 5):
            assert r_identical_scaling_report(x, 500, r).mi == pytest.approx(classical_binomial_entropy(r, x), abs=1e-12)


def test_multi_species_is_additive() -> None:
    x, L = 0.3, 400
    config = ClassicalConfig(Core.SOFT, (2, 3))
    report = multi_species_scaling_report(x, L, config)
    assert config.R == 5
    assert report.h_total == pytest.approx(
        r_identical_scaling_report(x, L, 2).h_total + r_identical_scaling_report(x, L, 3).h_total
    )
    assert report.mi == pytest.approx(r_identical_mutual_info(x, 2) + r_identical_mutual_info(x, 3), abs=1e-12)
    assert report.mi == pytest.approx(coarse_grained_entropy(x, config), abs=1e-12)


def test_distinguishable_scaling_is_two_single_particles() -> None:
    geom = ChainGeometry(300, 100)
    report = two_distinguishable_report(geom, mode=Mode.SCALING)
    single = one_particle_report(geom, Mode.SCALING)
    assert report.h_total == pytest.approx(2 * single.h_total)
    assert report.mi == pytest.approx(2 * single.mi)


def test_log_factorial() -> None:
    assert log_factorial(0) == 0.0
    assert log_factorial(5) == pytest.approx(math.log(120))
    assert log_factorial(30) == pytest.approx(math.lgamma(31))
    with pytest.raises(ParameterError):
        log_factorial(-1)


def test_invalid_inputs() -> None:
    with pytest.raises(ParameterError):
        ClassicalConfig(Core.SOFT, ())
    with pytest.raises(ParameterError):
        ClassicalConfig(Core.SOFT, (2, 0))
    with pytest.raises(ParameterError):
        two_identical_report(ChainGeometry(10, 5), mode=Mode.TIGHT)
    with pytest.raises(ParameterError):
        r_identical_scaling_report(1.0, 100, 2)
    with pytest.raises(ParameterError):
        hard_two_identical_total_table(1)
