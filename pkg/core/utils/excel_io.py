"""Excel 读写公共逻辑：按表头写入数据行（可选标红失败行）、只读方式读回整张表。"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import openpyxl  # type: ignore[import-untyped]
from openpyxl.styles import Font  # type: ignore[import-untyped]


def cell_value(cell_or_value: Any) -> Any:
    """openpyxl Cell 或裸值统一取值；None 视为空串，数值保持原类型。"""
    v = getattr(cell_or_value, "value", cell_or_value)
    if v is None:
        return ""
    return v.strip() if isinstance(v, str) else v


@contextmanager
def open_excel_read(path: Path):
    """以只读、data_only 方式打开工作簿，yield (wb, ws)，退出时关闭 wb。"""
    wb = openpyxl.load_workbook(path, read_only=True, data_only=True)
    try:
        yield wb, wb.active
    finally:
        wb.close()


def write_sheet(
    output_path: Path,
    sheet_title: str,
    headers: Sequence[str],
    rows: Sequence[Sequence[Any]],
    *,
    failed_row_predicate: Callable[[Sequence[Any]], bool] | None = None,
    red_font_hex: str = "FF0000",
) -> None:
    """写表头与数据行；failed_row_predicate(row) 为 True 的行标红。父目录自动创建。"""
    wb = openpyxl.Workbook()
    ws = wb.active
    if ws is None:
        raise RuntimeError("无法创建工作表")
    ws.title = sheet_title
    red_font = Font(color=red_font_hex)
    for col, h in enumerate(headers, start=1):
        ws.cell(row=1, column=col, value=h)
    for row_idx, row_data in enumerate(rows, start=2):
        failed = bool(failed_row_predicate and failed_row_predicate(row_data))
        for col_idx, value in enumerate(row_data, start=1):
            cell = ws.cell(row=row_idx, column=col_idx, value=value)
            if failed:
                cell.font = red_font
    output_path.parent.mkdir(parents=True, exist_ok=True)
    wb.save(output_path)
    wb.close()


def read_sheet(path: Path) -> tuple[list[str], list[list[Any]]]:
    """读取活动工作表：返回 (表头, 数据行)；空表返回 ([], [])。"""
    with open_excel_read(path) as (_wb, ws):
        if ws is None:
            return [], []
        rows = [[cell_value(v) for v in row] for row in ws.iter_rows(values_only=True)]
    if not rows:
        return [], []
    return [str(h) for h in rows[0]], rows[1:]
