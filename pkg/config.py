import copy
import logging
from pathlib import Path

import yaml

logger = logging.getLogger(__name__)

CONFIG_PATH = Path("config.yaml")

DEFAULTS = {
    "compute": {
        "threads": 0,  # 0 = 自动
        "tol": 1e-10,
        "max_L_sigmax": 30,
        "solver_max_iter": 10_000,
    },
    "output": {
        "format": "csv",
        "figure_dir": "figures",
    },
    "logging": {
        "dir": "logs",
        "level": "INFO",
    },
}


def _merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config(path: Path = CONFIG_PATH) -> dict:
    """加载配置文件并合并到默认值上；文件不存在时直接用默认值"""
    path = Path(path)
    if not path.exists():
        logger.debug(f"配置文件未找到: {path}，使用默认配置")
        return copy.deepcopy(DEFAULTS)

    try:
        with open(path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        logger.error(f"加载配置文件失败: {e}")
        return copy.deepcopy(DEFAULTS)

    if not isinstance(loaded, dict):
        logger.error(f"配置文件顶层必须是映射: {path}")
        return copy.deepcopy(DEFAULTS)
    return _merge(DEFAULTS, loaded)
