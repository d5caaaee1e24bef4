"""公共工具：复数矩阵内核、有理数编解码、Excel 读写。"""

from .excel_io import cell_value, open_excel_read, read_sheet, write_sheet

__all__ = [
    "cell_value",
    "open_excel_read",
    "read_sheet",
    "write_sheet",
]
