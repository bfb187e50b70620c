"""输出模块"""
from errors import ParameterError

from .base import BaseWriter
from .csv_writer import CsvWriter
from .json_writer import JsonWriter

WRITERS = {"csv": CsvWriter, "json": JsonWriter}


def get_writer(fmt: str, params: dict) -> BaseWriter:
    try:
        return WRITERS[fmt](params)
    except KeyError:
        raise ParameterError(f"未知的输出格式: {fmt!r}（可选 {', '.join(WRITERS)}）") from None


__all__ = ["BaseWriter", "CsvWriter", "JsonWriter", "get_writer"]
