import math

import numpy as np
import pytest

import oracle
import sigma_x
from entropy import ChainGeometry, Mode, entropy_of
from errors import ConvergenceError, ParameterError
from sigma_x import CHECKPOINT_INTERVAL, MagnonPhase, SigmaXConfig, gray, ground_state_report, iter_gray_sums, \
    magnon_report, magnon_sub_entropy, magnon_total_entropy, special_I_sub_closed_form, special_I_total_entropy

LOG2 = math.log(2.0)


def test_two_site_chain() -> None:
    assert magnon_total_entropy(2, 0) == pytest.approx(LOG2, abs=1e-12)
    assert special_I_total_entropy(2, 0) == pytest.approx(LOG2, abs=1e-12)


@pytest.mark.parametrize("I", [0, 10])
def test_closed_form_matches_enumeration(I: int) -> None:
    assert special_I_total_entropy(20, I) == pytest.approx(magnon_total_entropy(20, I, threads=2), abs=1e-9)


@pytest.mark.parametrize("I", [0, 8])
def test_closed_sub_entropy_matches_enumeration(I: int) -> None:
    L = 16
    for ell in (3, 8, 13, 16):
        geom = ChainGeometry(L, ell)
        assert special_I_sub_closed_form(geom, I) == pytest.approx(magnon_sub_entropy(geom, I), abs=1e-9)


@pytest.mark.parametrize("L, I", [(10, 3), (12, 1), (9, 4)])
def test_enumeration_matches_hadamard_transform(L: int, I: int) -> None:
    probs = oracle.sigma_x_probs(L, I)
    assert magnon_total_entropy(L, I) == pytest.approx(entropy_of(probs), abs=1e-10)
    for ell in range(1, L):
        marg = oracle.sigma_x_marginal(probs, L, ell)
        assert magnon_sub_entropy(ChainGeometry(L, ell), I) == pytest.approx(entropy_of(marg), abs=1e-10)
    phase = MagnonPhase(L, I)
    for mask in (0, 1, 37, (1 << L) - 1):
        assert phase.config_probability(SigmaXConfig(L, mask)) == pytest.approx(probs[mask], abs=1e-14)


def test_bethe_number_symmetry() -> None:
    L = 12
    for I in (1, 5):
        assert magnon_total_entropy(L, I) == pytest.approx(magnon_total_entropy(L, L - I), abs=1e-10)
        geom = ChainGeometry(L, 5)
        assert magnon_sub_entropy(geom, I) == pytest.approx(magnon_sub_entropy(geom, L - I), abs=1e-10)


def test_single_site_is_maximally_mixed() -> None:
    for L, I in ((8, 3), (13, 0), (20, 7)):
        assert magnon_sub_entropy(ChainGeometry(L, 1), I) == pytest.approx(LOG2, abs=1e-12)


def test_gray_walk_visits_every_code() -> None:
    phases = MagnonPhase(7, 2).phases
    codes = []
    for code, s in iter_gray_sums(phases, 0, 1 << 7):
        s_direct = complex(np.dot(phases, SigmaXConfig(7, code).signs()))
        assert abs(s - s_direct) < 1e-12
        codes.append(code)
    assert sorted(codes) == list(range(1 << 7))
    assert [c for c, _ in iter_gray_sums(phases, 5, 19)] == [gray(g) for g in range(5, 19)]
    assert list(iter_gray_sums(phases, 4, 4)) == []


def test_enumeration_ceiling() -> None:
    with pytest.raises(ParameterError):
        magnon_total_entropy(31, 1)
    with pytest.raises(ParameterError):
        magnon_total_entropy(13, 1, max_L=12)
    with pytest.raises(ParameterError):
        MagnonPhase(8, 8)
    with pytest.raises(ParameterError):
        special_I_total_entropy(9, 3)


def test_thread_count_does_not_change_result() -> None:
    assert magnon_total_entropy(18, 5, threads=1) == magnon_total_entropy(18, 5, threads=4)


def test_ground_state() -> None:
    report = ground_state_report(ChainGeometry(10, 3))
    assert report.h_total == pytest.approx(10 * LOG2)
    assert report.h_sub == pytest.approx(3 * LOG2)
    assert report.mi == pytest.approx(0.0, abs=1e-12)


def test_magnon_report_modes() -> None:
    geom = ChainGeometry(12, 4)
    closed = magnon_report(geom, 6, Mode.CLOSED)
    exact = magnon_report(geom, 6)
    assert closed.mode is Mode.CLOSED
    assert (closed.h_total, closed.h_sub, closed.h_complement) == pytest.approx(
        (exact.h_total, exact.h_sub, exact.h_complement), abs=1e-9
    )
    with pytest.raises(ParameterError):
        magnon_report(geom, 6, Mode.SCALING)


def test_special_constant_at_large_L() -> None:
    L = 4096
    assert abs(L * LOG2 - special_I_total_entropy(L, 0) - 0.730) < 0.01


def test_special_constant_increases_with_L() -> None:
    gaps = [L * LOG2 - special_I_total_entropy(L, 0) for L in (12, 16, 20, 24)]
    assert all(a < b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.730


@pytest.mark.slow
def test_generic_magnon_constant() -> None:
    L = 24
    assert abs(L * LOG2 - magnon_total_entropy(L, 3, threads=4) - 0.404) < 0.05


def test_half_shift_symmetry() -> None:
    for L in (12, 16):
        for I in (1, 3, 5):
            assert magnon_total_entropy(L, I) == pytest.approx(magnon_total_entropy(L, L // 2 - I), abs=1e-10)
    geom = ChainGeometry(12, 5)
    assert magnon_sub_entropy(geom, 2) == pytest.approx(magnon_sub_entropy(geom, 4), abs=1e-10)


def test_gray_walk_recomputes_at_checkpoints(monkeypatch) -> None:
    phases = MagnonPhase(17, 4).phases
    stop = CHECKPOINT_INTERVAL + 2
    *_, (code, s) = iter_gray_sums(phases, 0, stop)
    assert code == gray(stop - 1)
    assert abs(s - complex(np.dot(phases, SigmaXConfig(17, code).signs()))) < 1e-12

    monkeypatch.setattr(sigma_x, "DRIFT_TOL", -1.0)
    with pytest.raises(ConvergenceError) as info:
        for _ in iter_gray_sums(phases, 0, stop):
            pass
    assert info.value.stage == "gray-walk"
    assert str(CHECKPOINT_INTERVAL) in str(info.value)
