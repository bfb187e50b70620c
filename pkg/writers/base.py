"""
输出器抽象基类
"""
import logging
import sys
from abc import ABC, abstractmethod
from pathlib import Path

logger = logging.getLogger(__name__)


class BaseWriter(ABC):
    """输出器抽象基类"""

    def __init__(self, params: dict):
        """
        Args:
            params: 本次计算的参数（model / state / mode 等），写入文件头
        """
        self.params = params

    @abstractmethod
    def render(self, columns: list[str], rows: list[dict]) -> str:
        """
        把结果行格式化为文本

        Args:
            columns: 列名（决定输出顺序）
            rows: 每行一个 dict，缺失的键输出为空

        Returns:
            完整的输出文本
        """
        pass

    def write(self, columns: list[str], rows: list[dict], out: Path | None = None):
        """
        写到文件，out 为空时写到标准输出

        Raises:
            OSError: 文件无法写入
        """
        text = self.render(columns, rows)
        if out is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        logger.info(f"已写入 {len(rows)} 行: {out}")
