"""
工具函数模块
- 日志配置
- 对数域双曲函数（束缚态在 Lv ≫ 1 时 sinh/cosh 会溢出）
- 线程数解析
"""
import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path

import numpy as np

THREADS_ENV = "QSHANNON_THREADS"
_HANDLER_NAMES = ("qshannon-file", "qshannon-console")


def setup_logging(log_dir: Path = Path("logs"), level: str | int = logging.INFO):
    """配置日志（分级、文件轮转）；控制台走 stderr，stdout 只输出数据"""
    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)

    formatter = logging.Formatter(
        "[%(asctime)s] %(levelname)s %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    # 文件Handler（轮转，最大5MB，保留3份）
    file_handler = RotatingFileHandler(
        log_dir / "qshannon.log",
        maxBytes=5 * 1024 * 1024,
        backupCount=3,
        encoding="utf-8"
    )
    file_handler.set_name(_HANDLER_NAMES[0])
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logging.DEBUG)

    # 控制台Handler
    console_handler = logging.StreamHandler()
    console_handler.set_name(_HANDLER_NAMES[1])
    console_handler.setFormatter(formatter)
    console_handler.setLevel(level)

    root_logger = logging.getLogger()
    # 重复调用时替换上一次装上的 handler
    for handler in list(root_logger.handlers):
        if handler.get_name() in _HANDLER_NAMES:
            root_logger.removeHandler(handler)
            handler.close()
    root_logger.setLevel(logging.DEBUG)
    root_logger.addHandler(file_handler)
    root_logger.addHandler(console_handler)

    # 屏蔽第三方库的废话
    logging.getLogger("asyncio").setLevel(logging.WARNING)

    return root_logger


def log_sinh(z):
    """
    log sinh z（z > 0），按 z - log 2 + log(1 - e^{-2z}) 计算

    z = 0 时返回 -inf。支持标量和 numpy 数组。
    """
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore"):
        out = z - np.log(2.0) + np.log(-np.expm1(-2.0 * z))
    return out if out.ndim else float(out)


def log_cosh(z):
    """log cosh z = |z| - log 2 + log(1 + e^{-2|z|})"""
    z = np.abs(np.asarray(z, dtype=float))
    out = z - np.log(2.0) + np.log1p(np.exp(-2.0 * z))
    return out if out.ndim else float(out)


def resolve_threads(requested: int | None, configured: int | None = None) -> int:
    """
    解析工作线程数：命令行 > 环境变量 QSHANNON_THREADS > 配置文件 > 自动

    0 表示自动（CPU 核数）。
    """
    value = requested
    if value is None:
        env = os.environ.get(THREADS_ENV, "").strip()
        if env:
            try:
                value = int(env)
            except ValueError:
                logging.getLogger(__name__).warning(f"忽略无法解析的 {THREADS_ENV}={env!r}")
    if value is None:
        value = configured or 0
    if value <= 0:
        value = os.cpu_count() or 1
    return value
