import argparse
import asyncio
import logging
import os
import sys
from pathlib import Path

# Ensure project root in path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config import CONFIG_PATH, load_config
from entropy import Mode
from errors import ConvergenceError, ParameterError
from figures import build_figure
from sweep import AXES, MODELS, PointSpec, SweepAxis, evaluate_point, parse_sweep_axis, report_row, run_sweep, \
    sweep_columns
from utils import resolve_threads, setup_logging
from writers import get_writer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4


def cmd_compute(spec: PointSpec, fmt: str, out: Path | None = None) -> int:
    """单点计算，输出一行"""
    report = evaluate_point(spec)
    row = report_row(report, spec.geometry.x)
    row["ell"] = spec.geometry.ell
    get_writer(fmt, spec.params()).write(sweep_columns("ell"), [row], out)
    return EXIT_OK


def cmd_sweep(spec: PointSpec, axis: SweepAxis, threads: int, fmt: str, out: Path | None = None) -> int:
    """参数扫描；所有点都失败时返回参数错误"""
    rows = asyncio.run(run_sweep(spec, axis, threads))
    params = spec.params()
    params["sweep"] = {"axis": axis.name, "lo": axis.lo, "hi": axis.hi, "step": axis.step}
    get_writer(fmt, params).write(sweep_columns(axis.name), rows, out)
    if rows and all(r.get("error") for r in rows):
        logger.error("所有扫描点都失败")
        return EXIT_PARAMETER
    return EXIT_OK


def cmd_figure(fig_id: int, out_dir: Path, fmt: str, tol: float, threads: int) -> int:
    """每个面板写一个文件: fig<id>_<panel>.<fmt>"""
    panels = build_figure(fig_id, tol, threads)
    for panel in panels:
        path = Path(out_dir) / f"fig{fig_id}_{panel.name}.{fmt}"
        get_writer(fmt, panel.params).write(panel.columns, panel.rows, path)
    logger.info(f"figure {fig_id}: 已写入 {len(panels)} 个文件到 {out_dir}")
    return EXIT_OK


def _species(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"组分应为逗号分隔的整数: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="qshannon: 准粒子激发态的 Shannon 熵与互信息")
    parser.add_argument("--model", choices=MODELS, help="模型")
    parser.add_argument("--state", help="态（如 k / k2 / k1k2 / caseII / magnon / ground / r-identical）")
    parser.add_argument("--mode", choices=[m.value for m in Mode], help="求值方式（缺省 exact，只有标度极限的态为 scaling）")
    parser.add_argument("--L", type=int, default=0, help="链长")
    parser.add_argument("--ell", type=int, help="子系统长度（缺省 L/2）")
    parser.add_argument("--k1", type=int, default=1)
    parser.add_argument("--k2", type=int, default=0)
    parser.add_argument("--I1", type=int, default=0)
    parser.add_argument("--I2", type=int, default=1)
    parser.add_argument("--I", type=int, default=0, help="单磁振子 / 束缚态的 Bethe 数")
    parser.add_argument("--v", type=float, help="束缚态参数 v（缺省取渐近值）")
    parser.add_argument("--r", type=int, default=2, help="全同粒子数")
    parser.add_argument("--core", choices=["soft", "hard"], default="soft")
    parser.add_argument("--species", type=_species, default=(1, 1), help="多组分粒子数，如 1,2")
    parser.add_argument("--n", type=int, help="例外动量的分母 n（|k12| = L/n）")
    parser.add_argument("--statistics", choices=["bos", "fer", "classical"], default="bos", help="numdist 的统计")
    parser.add_argument("--sweep", help=f"扫描 axis:lo:hi:step，axis ∈ {{{', '.join(AXES)}}}")
    parser.add_argument("--figure", type=int, help="生成 figure 数据（2..10）")
    parser.add_argument("--format", choices=["csv", "json"], help="输出格式")
    parser.add_argument("--out", type=Path, help="输出文件（缺省标准输出）")
    parser.add_argument("--out-dir", type=Path, help="figure 数据目录")
    parser.add_argument("--threads", type=int, help="工作线程数，0 = 自动")
    parser.add_argument("--tol", type=float, help="积分容差")
    parser.add_argument("--max-L-sigmax", type=int, help="σˣ 枚举的最大格点数")
    parser.add_argument("--config", type=str, default=str(CONFIG_PATH), help="配置文件路径")
    parser.add_argument("--log-dir", type=Path, help="日志目录")
    parser.add_argument("-v", "--verbose", action="store_true", help="控制台输出 DEBUG 日志")
    return parser


def spec_from_args(args: argparse.Namespace, config: dict, threads: int) -> PointSpec:
    compute = config["compute"]
    if not args.model or not args.state:
        raise ParameterError("需要同时给出 --model 和 --state")
    return PointSpec(
        model=args.model,
        state=args.state,
        mode=args.mode,
        L=args.L,
        ell=args.ell,
        k1=args.k1,
        k2=args.k2,
        I1=args.I1,
        I2=args.I2,
        I=args.I,
        r=args.r,
        core=args.core,
        species=args.species,
        n=args.n,
        statistics=args.statistics,
        v=args.v,
        tol=args.tol if args.tol is not None else float(compute["tol"]),
        max_L_sigmax=args.max_L_sigmax if args.max_L_sigmax is not None else int(compute["max_L_sigmax"]),
        solver_max_iter=int(compute["solver_max_iter"]),
        threads=threads,
    )


def main(argv: list[str] | None = None) -> int:
    """CLI 入口，返回退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)

    config = load_config(Path(args.config))
    log_cfg = config["logging"]
    setup_logging(
        args.log_dir or Path(log_cfg["dir"]),
        logging.DEBUG if args.verbose else log_cfg["level"],
    )

    fmt = args.format or config["output"]["format"]
    try:
        threads = resolve_threads(args.threads, config["compute"]["threads"])
        if args.figure is not None:
            out_dir = args.out_dir or Path(config["output"]["figure_dir"])
            tol = args.tol if args.tol is not None else float(config["compute"]["tol"])
            return cmd_figure(args.figure, out_dir, fmt, tol, threads)

        spec = spec_from_args(args, config, threads)
        if args.sweep:
            return cmd_sweep(spec, parse_sweep_axis(args.sweep), threads, fmt, args.out)
        return cmd_compute(spec, fmt, args.out)
    except ParameterError as e:
        logger.error(f"参数错误: {e}")
        return EXIT_PARAMETER
    except ConvergenceError as e:
        logger.error(f"数值计算未收敛 ({e.stage}): {e}")
        return EXIT_CONVERGENCE
    except OSError as e:
        logger.error(f"读写失败: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
