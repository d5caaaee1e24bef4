"""
核心：复数矩阵内核、有理数编解码与统一配置。
"""

from .utils.matkernel import (
    ComplexMatrix,
    as_complex_matrix,
    complex_normal,
    dft_matrix,
    is_hermitian,
    kron,
    matrix_to_csv_rows,
    numerical_rank,
    shannon_logdet,
    singular_values,
)
from .utils.rational import format_point, format_rational, parse_point, to_rational

__all__ = [
    "ComplexMatrix",
    "as_complex_matrix",
    "complex_normal",
    "dft_matrix",
    "format_point",
    "format_rational",
    "is_hermitian",
    "kron",
    "matrix_to_csv_rows",
    "numerical_rank",
    "parse_point",
    "shannon_logdet",
    "singular_values",
    "to_rational",
]
