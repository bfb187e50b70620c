import math

import numpy as np
import pytest

import oracle
import xxx_chain
from classical import Core, hard_two_identical_sub_table, hard_two_identical_total_table, two_identical_report
from entropy import ChainGeometry, Mode
from errors import NotCaseIIError, ParameterError, SolverError
from xxx_chain import Case, ScalingLimit, bound_sub_table, bound_total_table, case_I_report, case_II_report, \
    case_II_tables, case_IIIa_params, case_IIIa_report, case_IIIb_params, case_IIIb_report, classify_scaling_limit, \
    classify_solution, loose_sub_entropy, loose_total_entropy, minimal_IIIa_bethe_number, scaled_bethe_numbers, \
    single_magnon_report, solve_case_II, tight_mutual_info, tight_sub_entropy, tight_total_entropy, \
    valid_IIIa_bethe_numbers, valid_IIIb_bethe_numbers


def max_diff(a: dict, b: dict) -> float:
    return max(abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in set(a) | set(b))


def test_single_magnon_is_single_particle() -> None:
    assert single_magnon_report(ChainGeometry(12, 4)).h_total == pytest.approx(math.log(12))


def test_case_I_is_hard_core_pair() -> None:
    assert case_I_report(ChainGeometry(4, 2)).h_total == pytest.approx(math.log(6))
    L = 7
    probs = oracle.hard_core_pair_probs(L)
    assert max_diff(hard_two_identical_total_table(L).configurations(L), probs) < 1e-12
    for ell in range(1, L):
        sub = hard_two_identical_sub_table(ChainGeometry(L, ell)).configurations(ell)
        assert max_diff(sub, oracle.marginal(probs, ell)) < 1e-12


def test_case_II_tables_match_wavefunction() -> None:
    L = 8
    solved = 0
    for I1 in range(L):
        for I2 in range(I1 + 1, L):
            try:
                sol = solve_case_II(L, I1, I2)
            except (NotCaseIIError, SolverError):
                continue
            solved += 1
            assert sol.normalization == pytest.approx(oracle.bethe_normalization(sol), rel=1e-10)
            probs = oracle.bethe_probs(sol)
            for ell in range(1, L):
                tables = case_II_tables(ChainGeometry(L, ell), sol)
                assert max_diff(tables.total.configurations(L), probs) < 1e-10
                assert max_diff(tables.sub.configurations(ell), oracle.marginal(probs, ell)) < 1e-10
    assert solved >= L - 1


def test_zero_bethe_number_gives_zero_phase() -> None:
    for I2 in (1, 5, 120):
        sol = solve_case_II(240, 0, I2)
        assert sol.theta.real == pytest.approx(0.0, abs=1e-12)
        assert sol.case is Case.II


def test_invalid_case_II_pairs() -> None:
    with pytest.raises(ParameterError):
        solve_case_II(8, 3, 3)
    with pytest.raises(ParameterError):
        solve_case_II(8, 5, 2)
    with pytest.raises(ParameterError):
        solve_case_II(8, 0, 8)


def test_adjacent_pair_near_quarter_chain_is_degenerate() -> None:
    with pytest.raises((NotCaseIIError, SolverError)):
        solve_case_II(240, 60, 61)


def test_solver_reports_stage_when_out_of_iterations() -> None:
    with pytest.raises(SolverError) as info:
        solve_case_II(20, 1, 3, max_iter=1)
    assert info.value.stage == "bethe-solver"
    assert "[bethe-solver]" in str(info.value)


def test_classifier_rules() -> None:
    assert classify_scaling_limit(0.0, 0.0, I12=-1) == (ScalingLimit.BOSONIC, -1)
    assert classify_scaling_limit(1.0, 1.0, I12=-2) == (ScalingLimit.BOSONIC, -2)
    assert classify_scaling_limit(0.0, 1.0, I12=-7)[0] is ScalingLimit.BOSONIC
    assert classify_scaling_limit(0.3, 0.3, I12=-2) == (ScalingLimit.FERMIONIC, -1)
    assert classify_scaling_limit(0.2, 0.5) == (ScalingLimit.UNIVERSAL, None)


def test_finite_chain_bethe_number_snapping() -> None:
    sol = solve_case_II(100, 0, 95)
    assert scaled_bethe_numbers(sol) == (0.0, 1.0)
    assert classify_solution(sol) == (ScalingLimit.BOSONIC, 5)


@pytest.mark.parametrize("pair, limit", [
    ((0, 1), ScalingLimit.BOSONIC),
    ((60, 62), ScalingLimit.FERMIONIC),
    ((30, 121), ScalingLimit.UNIVERSAL),
])
def test_case_II_scaling_limits(pair: tuple[int, int], limit: ScalingLimit) -> None:
    L = 240
    geom = ChainGeometry(L, L // 2)
    sol = solve_case_II(L, *pair)
    assert classify_solution(sol)[0] is limit
    exact = case_II_report(geom, sol, Mode.EXACT)
    scaling = case_II_report(geom, sol, Mode.SCALING)
    assert abs(exact.h_sub - scaling.h_sub) < 0.02


@pytest.mark.parametrize("L", [8, 12, 16])
def test_bethe_number_windows(L: int) -> None:
    low = minimal_IIIa_bethe_number(L)
    assert low % 2 == 1
    assert low >= 2 * math.sqrt(L) / math.pi
    assert all(I % 2 == 1 and low <= I <= L // 2 - 1 for I in valid_IIIa_bethe_numbers(L))
    assert valid_IIIb_bethe_numbers(L)[-1] == L // 2


def test_bound_state_parameter_validation() -> None:
    with pytest.raises(ParameterError):
        case_IIIa_params(10, 3)
    with pytest.raises(ParameterError):
        case_IIIa_params(12, 4)
    with pytest.raises(ParameterError):
        case_IIIa_params(12, 1)
    with pytest.raises(ParameterError):
        case_IIIb_params(12, 3)
    with pytest.raises(ParameterError):
        case_IIIb_params(12, 8)


@pytest.mark.parametrize("case, I", [(Case.IIIA, 3), (Case.IIIA, 5), (Case.IIIB, 2), (Case.IIIB, 4)])
def test_bound_tables_match_wavefunction(case: Case, I: int) -> None:
    L = 12
    sol = case_IIIa_params(L, I) if case is Case.IIIA else case_IIIb_params(L, I)
    assert sol.normalization == pytest.approx(oracle.bethe_normalization(sol), rel=1e-10)
    probs = oracle.bethe_probs(sol)
    assert max_diff(bound_total_table(sol).configurations(L), probs) < 1e-10
    for ell in range(1, L):
        sub = bound_sub_table(ChainGeometry(L, ell), sol).configurations(ell)
        assert max_diff(sub, oracle.marginal(probs, ell)) < 1e-10


def test_extremely_bound_state_is_single_magnon() -> None:
    sol = case_IIIb_params(12, 6)
    assert math.isinf(sol.v)
    assert case_IIIb_report(ChainGeometry(12, 3), sol).h_total == pytest.approx(math.log(12))


def test_large_chain_bound_tables_do_not_overflow() -> None:
    L = 840
    sol = case_IIIa_params(L, valid_IIIa_bethe_numbers(L)[-1])
    assert sol.u > 700
    assert math.isinf(sol.normalization)
    assert bound_total_table(sol).total() == pytest.approx(1.0, abs=1e-10)
    assert bound_sub_table(ChainGeometry(L, 300), sol).total() == pytest.approx(1.0, abs=1e-10)


def test_tight_limit_mutual_information() -> None:
    L = 840
    geom = ChainGeometry(L, L // 2)
    assert tight_mutual_info(0.5) == pytest.approx(math.log(2))
    exact_a = case_IIIa_report(geom, case_IIIa_params(L, 337))
    exact_b = case_IIIb_report(geom, case_IIIb_params(L, 336))
    assert abs(exact_a.mi - math.log(2)) < 0.02
    assert abs(exact_b.mi - math.log(2)) < 0.02
    assert case_IIIa_report(geom, case_IIIa_params(L, 337), Mode.TIGHT).mi == pytest.approx(math.log(2))


@pytest.mark.parametrize("case", [Case.IIIA, Case.IIIB])
def test_loose_limit_at_smallest_bethe_number(case: Case) -> None:
    L = 840
    geom = ChainGeometry(L, L // 2)
    if case is Case.IIIA:
        sol = case_IIIa_params(L, valid_IIIa_bethe_numbers(L)[0])
        exact, loose = case_IIIa_report(geom, sol), case_IIIa_report(geom, sol, Mode.LOOSE)
    else:
        sol = case_IIIb_params(L, valid_IIIb_bethe_numbers(L)[0])
        exact, loose = case_IIIb_report(geom, sol), case_IIIb_report(geom, sol, Mode.LOOSE)
    assert abs(exact.h_total - loose.h_total) < 0.02
    assert abs(exact.h_sub - loose.h_sub) < 0.02
    assert abs(exact.mi - loose.mi) < 0.02


@pytest.mark.parametrize("case", [Case.IIIA, Case.IIIB])
@pytest.mark.parametrize("u", [40.0, 2000.0, 5000.0])
def test_loose_total_reaches_tight_total_for_large_u(case: Case, u: float) -> None:
    L = 1_000_000
    assert loose_total_entropy(L, u, case) == pytest.approx(tight_total_entropy(L, u / L), abs=1e-5)


@pytest.mark.parametrize("case", [Case.IIIA, Case.IIIB])
@pytest.mark.parametrize("u", [2000.0, 5000.0])
def test_loose_sub_entropy_reaches_tight_for_large_u(case: Case, u: float) -> None:
    L = 1_000_000
    for x in (0.3, 0.7):
        assert abs(loose_sub_entropy(x, L, u, case) - tight_sub_entropy(x, L, u / L)) < 0.02


@pytest.mark.parametrize("case", [Case.IIIA, Case.IIIB])
def test_edge_coordinates_agree_with_direct_integration(case: Case, monkeypatch) -> None:
    L, u = 10_000, 60.0
    total = loose_total_entropy(L, u, case)
    subs = [loose_sub_entropy(x, L, u, case) for x in (0.3, 0.7)]
    monkeypatch.setattr(xxx_chain, "EDGE_COORDINATE_U", math.inf)
    assert loose_total_entropy(L, u, case) == pytest.approx(total, abs=1e-8)
    assert [loose_sub_entropy(x, L, u, case) for x in (0.3, 0.7)] == pytest.approx(subs, abs=1e-8)


def test_u_zero_equals_classical_identical_pair() -> None:
    L = 400
    geom = ChainGeometry(L, 100)
    report = case_IIIb_report(geom, case_IIIb_params(L, 2), Mode.U_ZERO)
    classical = two_identical_report(geom, Core.SOFT, Mode.SCALING)
    assert (report.h_total, report.h_sub, report.h_complement) == (classical.h_total, classical.h_sub,
                                                                    classical.h_complement)
    assert report.mode is Mode.U_ZERO


def test_weakly_bound_state_converges_to_classical_pair() -> None:
    gaps = []
    for L in (400, 800):
        geom = ChainGeometry(L, L // 2)
        exact = case_IIIb_report(geom, case_IIIb_params(L, 2, v=1.0 / L**2))
        classical = two_identical_report(geom, Core.SOFT, Mode.SCALING)
        gaps.append((abs(exact.h_total - classical.h_total), abs(exact.h_sub - classical.h_sub)))
    assert gaps[1][0] < gaps[0][0]
    assert gaps[1][1] < gaps[0][1]


def test_random_case_II_reports_have_nonnegative_mi() -> None:
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(10_000):
        L = int(rng.integers(6, 40))
        I1, I2 = sorted(int(i) for i in rng.choice(L, size=2, replace=False))
        try:
            sol = solve_case_II(L, I1, I2)
        except (NotCaseIIError, SolverError):
            continue
        report = case_II_report(ChainGeometry(L, int(rng.integers(1, L))), sol)
        assert report.mi >= -1e-9
        checked += 1
        if checked == 1000:
            break
    assert checked == 1000
