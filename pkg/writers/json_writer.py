"""
JSON 输出：{"params": {...}, "rows": [...]}，行的键与 CSV 列名一致
"""
import json
import math

from .base import BaseWriter


def _clean(value):
    # JSON 没有 NaN / inf
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


class JsonWriter(BaseWriter):
    def render(self, columns: list[str], rows: list[dict]) -> str:
        payload = {
            "params": self.params,
            "rows": [{c: _clean(row.get(c)) for c in columns} for row in rows],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
