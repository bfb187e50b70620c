"""
复现各组曲线的数据文件

每个 figure id 生成若干 Panel（一张 CSV），列为精确结果和适用的解析极限。
只输出数据，不画图。
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

from entropy import ChainGeometry, Mode
from errors import ConvergenceError, ParameterError
from free_chain import BOSON, FERMION, Statistics, exceptional_offset, scaling_sub_entropy, sub_table, \
    total_entropy_formula, universal_mutual_info, universal_sub_entropy, universal_total_entropy
from quadrature import DEFAULT_TOL
from sigma_x import magnon_sub_entropy, magnon_total_entropy, special_I_sub_closed_form, special_I_total_entropy
from xxx_chain import Case, case_II_report, case_II_total_table, case_IIIa_params, case_IIIa_report, case_IIIb_params, \
    case_IIIb_report, solve_case_II, valid_IIIa_bethe_numbers, valid_IIIb_bethe_numbers

logger = logging.getLogger(__name__)

LOG2 = math.log(2.0)
SUB_MOMENTA = (1, 2, 3)


@dataclass
class Panel:
    name: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    params: dict = field(default_factory=dict)


def _free_total_panels(stats: Statistics) -> list[Panel]:
    """H(L) 对 k12（L=840）以及例外动量下 H(L) - 2 log L 对 n"""
    L = 840
    vs_k12 = Panel("total_vs_k12", ["k12", "H_exact", "H_universal", "H_exceptional"],
                   params={"model": stats.name, "state": "k1k2", "mode": "exact", "L": L})
    for k12 in range(1, L // 2 + 1):
        n = L // math.gcd(k12, L)
        vs_k12.rows.append({
            "k12": k12,
            "H_exact": total_entropy_formula(L, k12, stats),
            "H_universal": universal_total_entropy(L),
            "H_exceptional": 2.0 * math.log(L) + exceptional_offset(n, stats),
        })
    vs_n = Panel("offset_vs_n", ["n", "offset", "universal"],
                 params={"model": stats.name, "state": "k1k2", "mode": "exceptional"})
    for n in range(2, 101):
        vs_n.rows.append({"n": n, "offset": exceptional_offset(n, stats), "universal": -1.0})
    return [vs_k12, vs_n]


def _free_sub_columns(L: int, stats: Statistics, tol: float) -> dict:
    """ℓ = 1..L-1 上的 H(ℓ)：每个 k12 的精确值和标度公式"""
    ells = range(1, L)
    out = {}
    for k in SUB_MOMENTA:
        out[f"exact_k{k}"] = [sub_table(ChainGeometry(L, ell), k, stats).entropy() for ell in ells]
        out[f"scaling_k{k}"] = [scaling_sub_entropy(ell / L, L, k, stats, tol) for ell in ells]
    out["universal"] = [universal_sub_entropy(ell / L, L) for ell in ells]
    return out


def _free_sub_panel(L: int, stats: Statistics, columns: dict) -> Panel:
    names = [f"H_{key}" for key in columns]
    panel = Panel("sub", ["ell", "x", *names], params={"model": stats.name, "state": "k1k2", "L": L})
    for i, ell in enumerate(range(1, L)):
        row = {"ell": ell, "x": ell / L}
        row.update({f"H_{key}": values[i] for key, values in columns.items()})
        panel.rows.append(row)
    return panel


def _free_mi_panel(L: int, stats: Statistics, columns: dict) -> Panel:
    """M(ℓ) = H(ℓ) + H(L-ℓ) - H(L)，H(L-ℓ) 直接取同一列的对称位置"""
    names = [f"MI_{key}" for key in columns]
    panel = Panel("mi", ["ell", "x", *names], params={"model": stats.name, "state": "k1k2", "L": L})
    totals = {}
    for k in SUB_MOMENTA:
        totals[f"exact_k{k}"] = total_entropy_formula(L, k, stats)
        totals[f"scaling_k{k}"] = universal_total_entropy(L)
    totals["universal"] = universal_total_entropy(L)
    for i, ell in enumerate(range(1, L)):
        row = {"ell": ell, "x": ell / L}
        for key, values in columns.items():
            row[f"MI_{key}"] = values[i] + values[L - 2 - i] - totals[key]
        row["MI_universal"] = universal_mutual_info(ell / L)
        panel.rows.append(row)
    return panel


def figure_2(tol: float, threads: int) -> list[Panel]:
    return _free_total_panels(BOSON)


def figure_3(tol: float, threads: int) -> list[Panel]:
    L = 240
    columns = _free_sub_columns(L, BOSON, tol)
    return [_free_sub_panel(L, BOSON, columns), _free_mi_panel(L, BOSON, columns)]


def figure_4(tol: float, threads: int) -> list[Panel]:
    return _free_total_panels(FERMION)


def figure_5(tol: float, threads: int) -> list[Panel]:
    L = 240
    return [_free_sub_panel(L, FERMION, _free_sub_columns(L, FERMION, tol))]


def figure_6(tol: float, threads: int) -> list[Panel]:
    L = 240
    return [_free_mi_panel(L, FERMION, _free_sub_columns(L, FERMION, tol))]


CASE_II_PAIRS = {"bosonic": (0, 1), "fermionic": (60, 62), "universal": (30, 121)}


def figure_7(tol: float, threads: int) -> list[Panel]:
    """
    case II（L=240）：整体熵对 I2，以及三组代表性 (I1, I2) 的子系统熵和互信息

    (I1, I2) 不是 case II 解的点留空。
    """
    L = 240
    total = Panel("total", ["I1", "I2", "H_exact", "H_universal"],
                  params={"model": "xxx", "state": "caseII", "mode": "exact", "L": L})
    for I1 in (0, 30, 60):
        for I2 in range(I1 + 1, L):
            row = {"I1": I1, "I2": I2, "H_exact": None, "H_universal": universal_total_entropy(L)}
            try:
                sol = solve_case_II(L, I1, I2)
                row["H_exact"] = case_II_total_table(sol).entropy()
            except (ParameterError, ConvergenceError) as e:
                logger.debug(f"跳过 ({I1}, {I2}): {e}")
            total.rows.append(row)

    labels = list(CASE_II_PAIRS)
    sub = Panel("sub", ["ell", "x", *(f"H_exact_{k}" for k in labels), *(f"H_scaling_{k}" for k in labels)],
                params={"model": "xxx", "state": "caseII", "L": L})
    mi = Panel("mi", ["ell", "x", *(f"MI_exact_{k}" for k in labels), *(f"MI_scaling_{k}" for k in labels)],
               params={"model": "xxx", "state": "caseII", "L": L})
    solutions = {label: solve_case_II(L, *pair) for label, pair in CASE_II_PAIRS.items()}
    for ell in range(1, L):
        geom = ChainGeometry(L, ell)
        sub_row = {"ell": ell, "x": ell / L}
        mi_row = {"ell": ell, "x": ell / L}
        for label, sol in solutions.items():
            exact = case_II_report(geom, sol, Mode.EXACT)
            scaling = case_II_report(geom, sol, Mode.SCALING, tol)
            sub_row[f"H_exact_{label}"] = exact.h_sub
            sub_row[f"H_scaling_{label}"] = scaling.h_sub
            mi_row[f"MI_exact_{label}"] = exact.mi
            mi_row[f"MI_scaling_{label}"] = scaling.mi
        sub.rows.append(sub_row)
        mi.rows.append(mi_row)
    return [total, sub, mi]


def _bound_panels(case: Case, tol: float) -> list[Panel]:
    """束缚态（L=840）：整体熵、x=1/2 的子系统熵和互信息对 I，精确值与各极限"""
    L = 840
    geom = ChainGeometry(L, L // 2)
    if case is Case.IIIA:
        bethe_numbers, params, report = valid_IIIa_bethe_numbers(L), case_IIIa_params, case_IIIa_report
        modes = [Mode.EXACT, Mode.TIGHT, Mode.LOOSE]
    else:
        # I = L/2 为单磁振子，不在曲线上
        bethe_numbers, params, report = valid_IIIb_bethe_numbers(L)[:-1], case_IIIb_params, case_IIIb_report
        modes = [Mode.EXACT, Mode.TIGHT, Mode.LOOSE, Mode.U_ZERO]

    names = [m.value for m in modes]
    meta = {"model": "xxx", "state": f"case{case.value}", "L": L}
    panels = {
        key: Panel(key, ["I", "v", *(f"{prefix}_{n}" for n in names)], params=meta)
        for key, prefix in (("total", "H"), ("sub", "H"), ("mi", "MI"))
    }
    for I in bethe_numbers:
        sol = params(L, I)
        rows = {key: {"I": I, "v": sol.v} for key in panels}
        for mode in modes:
            try:
                r = report(geom, sol, mode, tol)
            except ConvergenceError as e:
                logger.warning(f"case {case.value} I={I} [{mode.value}] 未收敛: {e}")
                continue
            rows["total"][f"H_{mode.value}"] = r.h_total
            rows["sub"][f"H_{mode.value}"] = r.h_sub
            rows["mi"][f"MI_{mode.value}"] = r.mi
        for key, row in rows.items():
            panels[key].rows.append(row)
    return list(panels.values())


def figure_8(tol: float, threads: int) -> list[Panel]:
    return _bound_panels(Case.IIIA, tol)


def figure_9(tol: float, threads: int) -> list[Panel]:
    return _bound_panels(Case.IIIB, tol)


def figure_10(tol: float, threads: int) -> list[Panel]:
    """σˣ 基：L log 2 - H 对 L，以及 L=16 时子系统熵和互信息对 ℓ"""
    total = Panel("total", ["L", "C_closed_I0", "C_exact_I1"],
                  params={"model": "sigmax", "state": "magnon", "mode": "exact"})
    for L in range(4, 21, 2):
        total.rows.append({
            "L": L,
            "C_closed_I0": L * LOG2 - special_I_total_entropy(L, 0),
            "C_exact_I1": L * LOG2 - magnon_total_entropy(L, 1, threads),
        })

    L = 16
    h_total = {0: special_I_total_entropy(L, 0), 3: magnon_total_entropy(L, 3, threads)}
    h_sub = {
        0: [special_I_sub_closed_form(ChainGeometry(L, ell), 0) for ell in range(1, L)],
        3: [magnon_sub_entropy(ChainGeometry(L, ell), 3, threads) for ell in range(1, L)],
    }
    sub = Panel("sub", ["ell", "x", "H_I0", "H_I3", "MI_I0", "MI_I3"],
                params={"model": "sigmax", "state": "magnon", "L": L})
    for i, ell in enumerate(range(1, L)):
        row = {"ell": ell, "x": ell / L}
        for I in (0, 3):
            row[f"H_I{I}"] = h_sub[I][i]
            row[f"MI_I{I}"] = h_sub[I][i] + h_sub[I][L - 2 - i] - h_total[I]
        sub.rows.append(row)
    return [total, sub]


FIGURES: dict[int, Callable[[float, int], list[Panel]]] = {
    2: figure_2,
    3: figure_3,
    4: figure_4,
    5: figure_5,
    6: figure_6,
    7: figure_7,
    8: figure_8,
    9: figure_9,
    10: figure_10,
}


def build_figure(fig_id: int, tol: float = DEFAULT_TOL, threads: int = 1) -> list[Panel]:
    if fig_id not in FIGURES:
        raise ParameterError(f"未知的 figure id: {fig_id}（可选 {', '.join(map(str, FIGURES))}）")
    logger.info(f"生成 figure {fig_id} 的数据")
    return FIGURES[fig_id](tol, threads)
