"""
CSV 输出

第一行是注释头 `# qshannon,v1,<model>,<state>,<mode>`，随后是列名和数据；
浮点数一律 17 位有效数字，保证逐位可复现。
"""
import csv
import io

from .base import BaseWriter

FORMAT_VERSION = "v1"


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


class CsvWriter(BaseWriter):
    def header(self) -> str:
        p = self.params
        return f"# qshannon,{FORMAT_VERSION},{p.get('model', '')},{p.get('state', '')},{p.get('mode', '')}\n"

    def render(self, columns: list[str], rows: list[dict]) -> str:
        buf = io.StringIO()
        buf.write(self.header())
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(c)) for c in columns])
        return buf.getvalue()
