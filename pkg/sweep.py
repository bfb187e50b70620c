"""
单点计算与参数扫描

PointSpec 描述一个计算点（模型、态、求值方式和固定参数），
evaluate_point() 按模型分派到各计算模块。扫描时每个点放进线程池，
用信号量限制并发，结果按扫描顺序返回；单点失败变成带 error 的行。
"""
import asyncio
import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from boson import k1k2_report, kk_report, kr_report, single_particle_report
from classical import ClassicalConfig, Core, multi_species_scaling_report, one_particle_report, \
    r_identical_scaling_report, two_distinguishable_report, two_identical_report
from entropy import ChainGeometry, EntropyReport, Mode
from errors import ParameterError, QShannonError
from fermion import fer_k1k2_report, fer_single_particle_report
from free_chain import ExceptionalMomentum, MomentumPair
from number_dist import number_report
from quadrature import DEFAULT_TOL
from sigma_x import DEFAULT_MAX_L, ground_state_report, magnon_report
from xxx_chain import SOLVER_MAX_ITER, case_I_report, case_II_report, case_IIIa_params, case_IIIa_report, \
    case_IIIb_params, case_IIIb_report, single_magnon_report, solve_case_II

logger = logging.getLogger(__name__)

MODELS = ("bos", "fer", "xxx", "classical", "sigmax", "numdist")

STATES = {
    "bos": ("k", "k2", "k1k2", "r-identical"),
    "fer": ("k", "k1k2"),
    "xxx": ("magnon", "caseI", "caseII", "caseIIIa", "caseIIIb"),
    "classical": ("one", "two-identical", "two-distinguishable", "r-identical", "multi-species"),
    "sigmax": ("ground", "magnon"),
    "numdist": ("k1k2", "k2", "k", "r-identical"),
}

# 只有标度极限的态
SCALING_ONLY = {("bos", "r-identical"), ("classical", "r-identical"), ("classical", "multi-species")}

AXES = ("ell", "k12", "I", "n", "x")

RESULT_COLUMNS = ["x", "H_total", "H_sub", "H_comp", "MI", "mode", "error"]


@dataclass(frozen=True)
class PointSpec:
    model: str
    state: str
    mode: Mode | None = None
    L: int = 0
    ell: int | None = None
    k1: int = 1
    k2: int = 0
    I1: int = 0
    I2: int = 1
    I: int = 0
    r: int = 2
    core: Core = Core.SOFT
    species: tuple[int, ...] = (1, 1)
    n: int | None = None
    statistics: str = "bos"
    v: float | None = None
    tol: float = DEFAULT_TOL
    max_L_sigmax: int = DEFAULT_MAX_L
    solver_max_iter: int = SOLVER_MAX_ITER
    threads: int = 1

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"未知的模型: {self.model!r}（可选 {', '.join(MODELS)}）")
        if self.state not in STATES[self.model]:
            raise ParameterError(f"模型 {self.model} 没有态 {self.state!r}（可选 {', '.join(STATES[self.model])}）")
        if self.L < 1:
            raise ParameterError(f"需要给出链长 L ≥ 1，收到 L={self.L}")
        if self.mode is None:
            default = Mode.SCALING if (self.model, self.state) in SCALING_ONLY else Mode.EXACT
            object.__setattr__(self, "mode", default)
        else:
            object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "core", Core(self.core))

    @property
    def geometry(self) -> ChainGeometry:
        """ℓ 缺省为 L/2"""
        return ChainGeometry(self.L, self.L // 2 if self.ell is None else self.ell)

    def pair(self) -> MomentumPair:
        return MomentumPair.from_momenta(self.k1, self.k2, self.L)

    def exceptional(self) -> ExceptionalMomentum | None:
        """--n 给出时用 |k12| = L/n"""
        if self.n is None:
            return None
        return ExceptionalMomentum(1, self.n).validate_for(self.L)

    def with_axis(self, axis: str, value: float) -> "PointSpec":
        """把扫描轴上的一个取值代入"""
        if axis == "ell":
            return dataclasses.replace(self, ell=int(value))
        if axis == "x":
            return dataclasses.replace(self, ell=int(round(value * self.L)))
        if axis == "k12":
            return dataclasses.replace(self, k2=self.k1 - int(value))
        if axis == "I":
            if self.model == "xxx" and self.state == "caseII":
                return dataclasses.replace(self, I2=int(value))
            return dataclasses.replace(self, I=int(value))
        if axis == "n":
            return dataclasses.replace(self, n=int(value))
        raise ParameterError(f"未知的扫描轴: {axis!r}（可选 {', '.join(AXES)}）")

    def params(self) -> dict:
        out = dataclasses.asdict(self)
        out["mode"] = self.mode.value
        out["core"] = self.core.value
        out["species"] = list(self.species)
        return out


@dataclass(frozen=True)
class SweepAxis:
    """扫描轴 name:lo:hi:step，区间两端都包含"""
    name: str
    lo: float
    hi: float
    step: float

    def values(self) -> list[float | int]:
        count = math.floor((self.hi - self.lo) / self.step + 1e-9) + 1
        if self.name == "x":
            return [self.lo + i * self.step for i in range(count)]
        return [int(round(self.lo + i * self.step)) for i in range(count)]


def parse_sweep_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ParameterError(f"扫描格式应为 axis:lo:hi:step，收到 {text!r}")
    name = parts[0]
    if name not in AXES:
        raise ParameterError(f"未知的扫描轴: {name!r}（可选 {', '.join(AXES)}）")
    try:
        lo, hi, step = (float(p) for p in parts[1:])
    except ValueError:
        raise ParameterError(f"扫描范围必须是数字: {text!r}") from None
    if step <= 0 or hi < lo:
        raise ParameterError(f"扫描范围无效: lo={lo}, hi={hi}, step={step}")
    if name != "x" and any(v != int(v) for v in (lo, hi, step)):
        raise ParameterError(f"扫描轴 {name} 只接受整数: {text!r}")
    return SweepAxis(name, lo, hi, step)


def _evaluate_bos(spec: PointSpec, geom: ChainGeometry) -> EntropyReport:
    if spec.state == "k":
        return single_particle_report(geom)
    if spec.state == "k2":
        return kk_report(geom, spec.mode)
    if spec.state == "r-identical":
        return kr_report(geom, spec.r)
    return k1k2_report(geom, spec.pair(), spec.mode, spec.exceptional(), spec.tol)


def _evaluate_fer(spec: PointSpec, geom: ChainGeometry) -> EntropyReport:
    if spec.state == "k":
        return fer_single_particle_report(geom)
    return fer_k1k2_report(geom, spec.pair(), spec.mode, spec.exceptional(), spec.tol)


def _evaluate_xxx(spec: PointSpec, geom: ChainGeometry) -> EntropyReport:
    if spec.state == "magnon":
        return single_magnon_report(geom)
    if spec.state == "caseI":
        return case_I_report(geom, spec.mode)
    if spec.state == "caseII":
        sol = solve_case_II(spec.L, spec.I1, spec.I2, max_iter=spec.solver_max_iter)
        return case_II_report(geom, sol, spec.mode, spec.tol)
    if spec.state == "caseIIIa":
        return case_IIIa_report(geom, case_IIIa_params(spec.L, spec.I, spec.v), spec.mode, spec.tol)
    return case_IIIb_report(geom, case_IIIb_params(spec.L, spec.I, spec.v), spec.mode, spec.tol)


def _evaluate_classical(spec: PointSpec, geom: ChainGeometry) -> EntropyReport:
    if spec.state == "one":
        return one_particle_report(geom, spec.mode)
    if spec.state == "two-identical":
        return two_identical_report(geom, spec.core, spec.mode)
    if spec.state == "two-distinguishable":
        return two_distinguishable_report(geom, spec.core, spec.mode)
    if spec.state == "r-identical":
        return r_identical_scaling_report(geom.x, geom.L, spec.r)
    return multi_species_scaling_report(geom.x, geom.L, ClassicalConfig(spec.core, spec.species))


def _evaluate_numdist(spec: PointSpec, geom: ChainGeometry) -> EntropyReport:
    if spec.state == "k":
        return number_report(geom, "classical", R=1)
    if spec.state == "k2":
        return number_report(geom, "classical", R=2)
    if spec.state == "r-identical":
        return number_report(geom, "classical", R=spec.r)
    if spec.statistics == "classical":
        return number_report(geom, "classical", R=2)
    return number_report(geom, spec.statistics, pair=spec.pair())


def evaluate_point(spec: PointSpec) -> EntropyReport:
    """
    计算一个点的四元组

    Raises:
        ParameterError: 参数不合法
        ConvergenceError: 积分或 Bethe 方程求解不收敛
    """
    geom = spec.geometry
    if spec.model == "bos":
        return _evaluate_bos(spec, geom)
    if spec.model == "fer":
        return _evaluate_fer(spec, geom)
    if spec.model == "xxx":
        return _evaluate_xxx(spec, geom)
    if spec.model == "classical":
        return _evaluate_classical(spec, geom)
    if spec.model == "sigmax":
        if spec.state == "ground":
            return ground_state_report(geom)
        return magnon_report(geom, spec.I, spec.mode, spec.threads, spec.max_L_sigmax)
    return _evaluate_numdist(spec, geom)


def report_row(report: EntropyReport, x: float) -> dict:
    row = report.as_dict()
    row["x"] = x
    row["error"] = None
    return row


def evaluate_row(base: PointSpec, axis: str, value) -> dict:
    """单点失败不抛出，返回带 error 的行"""
    row = {axis: value}
    try:
        spec = base.with_axis(axis, value)
        row.update(report_row(evaluate_point(spec), spec.geometry.x))
    except QShannonError as e:
        logger.warning(f"扫描点 {axis}={value} 失败: {e}")
        row["error"] = str(e)
    return row


async def run_sweep(base: PointSpec, axis: SweepAxis, threads: int = 1) -> list[dict]:
    """按扫描顺序返回每个点的结果行，并发数为 threads"""
    values = axis.values()
    logger.info(f"开始扫描 {axis.name} ∈ [{axis.lo:g}, {axis.hi:g}]，共 {len(values)} 个点，{threads} 线程")
    loop = asyncio.get_running_loop()
    semaphore = asyncio.Semaphore(threads)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        async def run_one(value):
            async with semaphore:
                return await loop.run_in_executor(pool, evaluate_row, base, axis.name, value)

        rows = await asyncio.gather(*(run_one(v) for v in values))

    failed = sum(1 for r in rows if r.get("error"))
    if failed:
        logger.warning(f"扫描完成，{failed}/{len(rows)} 个点失败")
    else:
        logger.info(f"扫描完成，共 {len(rows)} 个点")
    return list(rows)


def sweep_columns(axis: str) -> list[str]:
    return [axis, *RESULT_COLUMNS]
