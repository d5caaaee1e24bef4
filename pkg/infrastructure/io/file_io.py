"""文件读写：区域与报告 JSON、速率扫描 CSV、矩阵 CSV 导出、XLSX 工作簿。"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

from core.utils.excel_io import read_sheet, write_sheet
from core.utils.matkernel import matrix_to_csv_rows
from core.utils.rational import format_point
from domain.antenna import DofRegion
from models.schemas import RatePoint, SweepSummary

RATE_CSV_HEADER = ("power_db", "r1_bits", "r2_bits", "trial")
REGION_CSV_HEADER = ("d1", "d2")
SWEEP_HEADER = ("属性", "检查数", "通过数", "反例")


def dump_json(data: Any) -> str:
    """单行 JSON（键序保持插入顺序），输出确定。"""
    return json.dumps(data, ensure_ascii=False, separators=(",", ":"))


def read_json(path: Path) -> Any:
    path = Path(path)
    if not path.exists():
        raise RuntimeError(f"文件不存在: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise RuntimeError(f"JSON 解析失败: {path}: {e}") from e


def write_text(text: str, output_path: Path) -> None:
    """写文本文件（UTF-8、\\n 换行），父目录自动创建。"""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def _csv_text(header: tuple[str, ...], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def region_to_csv(region: DofRegion) -> str:
    """顶点列表 CSV：d1,d2 两列，有理数为 "p/q" 文本。"""
    return _csv_text(REGION_CSV_HEADER, [format_point(v) for v in region.vertices])


def _rate_row(point: RatePoint) -> list[Any]:
    return [repr(point.power_db), repr(point.r1), repr(point.r2), point.trial]


def rate_points_to_csv(points: list[RatePoint]) -> str:
    """速率扫描 CSV：power_db,r1_bits,r2_bits,trial；浮点按 repr 输出，相同输入得到逐字节相同文本。"""
    return _csv_text(RATE_CSV_HEADER, [_rate_row(p) for p in points])


def write_rate_points_xlsx(points: list[RatePoint], output_path: Path) -> None:
    rows = [(p.power_db, p.r1, p.r2, p.trial) for p in points]
    write_sheet(Path(output_path), "速率扫描", RATE_CSV_HEADER, rows)


def read_rate_points_xlsx(path: Path) -> list[RatePoint]:
    """读回 write_rate_points_xlsx 写出的工作簿；表头不符时抛 RuntimeError。"""
    header, rows = read_sheet(Path(path))
    if tuple(header) != RATE_CSV_HEADER:
        raise RuntimeError(f"速率工作簿表头应为 {RATE_CSV_HEADER}，得到 {tuple(header)}")
    return [
        RatePoint(power=10.0 ** (float(db) / 10.0), r1=float(r1), r2=float(r2), trial=int(trial))
        for db, r1, r2, trial in rows
    ]


def sweep_to_dict(summary: SweepSummary) -> dict[str, Any]:
    return {
        "max_antennas": summary.max_antennas,
        "all_passed": summary.all_passed,
        "zf_seed": summary.zf_seed,
        "results": [
            {
                "name": r.name,
                "checked": r.checked,
                "passed": r.passed,
                "ok": r.ok,
                "counterexamples": r.counterexamples,
            }
            for r in summary.results
        ],
    }


def sweep_to_table(summary: SweepSummary) -> str:
    """人读的汇总表：每个属性一行，name checked/passed，失败时列出反例。"""
    lines = []
    for r in summary.results:
        status = "OK" if r.ok else "FAIL"
        line = f"{r.name:<8} {r.passed}/{r.checked} {status}"
        if r.counterexamples:
            line += " " + " ".join(r.counterexamples)
        lines.append(line)
    return "\n".join(lines) + "\n"


def write_sweep_xlsx(summary: SweepSummary, output_path: Path) -> None:
    """属性扫描汇总写入工作簿，未全部通过的属性行标红。"""
    rows = [(r.name, r.checked, r.passed, "；".join(r.counterexamples)) for r in summary.results]
    write_sheet(
        Path(output_path),
        "属性扫描",
        SWEEP_HEADER,
        rows,
        failed_row_predicate=lambda row: row[1] != row[2] or bool(row[3]),
    )


def export_matrices(output_dir: Path, matrices: dict[str, Any]) -> list[Path]:
    """每个矩阵写为 <name>.csv，单元格为 "re,im"；返回写出的文件路径（按名称排序）。"""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(matrices):
        path = output_dir / f"{name}.csv"
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(matrix_to_csv_rows(matrices[name]))
        write_text(buf.getvalue(), path)
        written.append(path)
    return written
