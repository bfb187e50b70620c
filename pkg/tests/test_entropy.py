import math

import numpy as np
import pytest

from entropy import ChainGeometry, EntropyReport, Mode, ProbabilityDistribution, entropy_of, mutual_information, \
    shannon_entropy, x_log_x
from errors import DistributionError, DomainError, ParameterError


def test_x_log_x_endpoints_and_interior() -> None:
    assert x_log_x(0.0) == 0.0
    assert x_log_x(1.0) == 0.0
    assert np.isclose(x_log_x(0.25), 0.25 * math.log(0.25))


@pytest.mark.parametrize("p", [-1e-6, 1.5, float("nan")])
def test_x_log_x_rejects_outside_unit_interval(p: float) -> None:
    with pytest.raises(DomainError):
        x_log_x(p)


def test_uniform_distribution_has_log_n_entropy() -> None:
    for n in (1, 2, 7, 100):
        assert np.isclose(entropy_of(np.full(n, 1.0 / n)), math.log(n))


def test_deterministic_distribution_has_zero_entropy() -> None:
    assert entropy_of([0.0, 1.0, 0.0]) == 0.0


def test_multiplicities_equal_expanded_distribution() -> None:
    weights = np.array([0.1, 0.2, 0.05])
    mult = np.array([1, 2, 10])
    expanded = np.repeat(weights, mult)
    assert math.isclose(entropy_of(weights, mult), entropy_of(expanded), rel_tol=1e-14)
    assert ProbabilityDistribution(weights, mult).count == 13


def test_small_negative_weights_are_clamped() -> None:
    dist = ProbabilityDistribution(np.array([0.5, 0.5 + 1e-12, -1e-12]))
    assert dist.weights.min() == 0.0


def test_negative_weight_rejected() -> None:
    with pytest.raises(DistributionError):
        ProbabilityDistribution(np.array([0.6, 0.5, -0.1]))


def test_unnormalized_distribution_rejected() -> None:
    with pytest.raises(DistributionError):
        ProbabilityDistribution(np.array([0.3, 0.3]))


def test_entropy_is_bounded_by_log_count() -> None:
    rng = np.random.default_rng(7)
    for _ in range(50):
        w = rng.random(rng.integers(2, 40))
        w /= w.sum()
        h = shannon_entropy(ProbabilityDistribution(w))
        assert 0.0 <= h <= math.log(w.size) + 1e-12


def test_mutual_information_combination() -> None:
    assert mutual_information(1.0, 2.0, 2.5) == pytest.approx(0.5)


def test_geometry_validation() -> None:
    geom = ChainGeometry(10, 3)
    assert geom.x == pytest.approx(0.3)
    assert geom.complement() == ChainGeometry(10, 7)
    ChainGeometry(10, 0)
    with pytest.raises(ParameterError):
        ChainGeometry(10, 0).require_proper()
    with pytest.raises(ParameterError):
        ChainGeometry(10, 11)
    with pytest.raises(ParameterError):
        ChainGeometry(0, 0)


def test_exact_report_rejects_negative_mutual_information() -> None:
    with pytest.raises(DistributionError):
        EntropyReport.compose(3.0, 1.0, 1.0, Mode.EXACT)
    # 极限公式不做检查
    report = EntropyReport.compose(3.0, 1.0, 1.0, Mode.SCALING)
    assert report.mi == pytest.approx(-1.0)


def test_combine_sums_componentwise() -> None:
    a = EntropyReport.compose(2.0, 1.5, 1.0, Mode.SCALING)
    b = EntropyReport.compose(4.0, 3.0, 2.0, Mode.SCALING)
    c = EntropyReport.combine([a, b])
    assert (c.h_total, c.h_sub, c.h_complement, c.mi) == pytest.approx((6.0, 4.5, 3.0, 1.5))
    with pytest.raises(ParameterError):
        EntropyReport.combine([a, EntropyReport.compose(2.0, 1.5, 1.0, Mode.EXACT)])


def test_report_as_dict_keys() -> None:
    d = EntropyReport.compose(2.0, 1.5, 1.0, Mode.EXACT).as_dict()
    assert d == {"H_total": 2.0, "H_sub": 1.5, "H_comp": 1.0, "MI": 0.5, "mode": "exact"}


def test_dyadic_distribution() -> None:
    assert entropy_of([0.5, 0.25, 0.25]) == pytest.approx(1.0397208, abs=1e-7)


def test_entropy_is_permutation_invariant() -> None:
    rng = np.random.default_rng(3)
    for _ in range(20):
        w = rng.random(rng.integers(2, 30))
        w /= w.sum()
        assert entropy_of(rng.permutation(w)) == pytest.approx(entropy_of(w), abs=1e-14)


def test_zero_weight_leaves_entropy_unchanged() -> None:
    w = np.array([0.1, 0.6, 0.3])
    assert entropy_of(np.append(w, 0.0)) == entropy_of(w)
    assert entropy_of(np.insert(w, 1, 0.0)) == pytest.approx(entropy_of(w), abs=1e-15)
