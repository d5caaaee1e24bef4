"""
复数稠密矩阵内核：Kronecker 积、SVD 数值秩、log-det 速率、DFT 矩阵。

所有函数均为纯函数，输入不被修改；返回值为 complex128 / float 的 numpy 数组或标量。
未显式传入的容差取自 app_config.yaml 的 numerics 节。
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np
import numpy.typing as npt

from domain.errors import DomainError, NumericalError, ShapeError, SizingError

ComplexMatrix = npt.NDArray[np.complex128]


def _numerics_config():
    """numerics 配置（来自 app_config.yaml）；未加载时自动加载一次。"""
    from core.config import inject, NumericsConfig
    return inject(NumericsConfig)


def as_complex_matrix(values: Any) -> ComplexMatrix:
    """转为二维 complex128 数组；非二维抛 ShapeError，含 NaN/Inf 抛 NumericalError。"""
    matrix = np.asarray(values, dtype=np.complex128)
    if matrix.ndim != 2:
        raise ShapeError(f"期望二维矩阵，得到 ndim={matrix.ndim}")
    if not np.all(np.isfinite(matrix)):
        raise NumericalError(f"矩阵含 NaN/Inf: shape={matrix.shape}")
    return matrix


def kron(a: Any, b: Any, *, max_elements: int | None = None) -> ComplexMatrix:
    """
    Kronecker 积：结果为 (a.rows*b.rows) x (a.cols*b.cols)，块 (i,j) 为 a[i,j]*b。

    Raises:
        SizingError: 结果元素数超过 max_elements（默认 numerics.max_elements）。
    """
    left = as_complex_matrix(a)
    right = as_complex_matrix(b)
    limit = max_elements if max_elements is not None else _numerics_config().max_elements
    elements = left.size * right.size
    if elements > limit:
        raise SizingError(
            f"Kronecker 积 {left.shape} ⊗ {right.shape} 共 {elements} 个元素，超过上限 {limit}"
        )
    return np.kron(left, right)


def singular_values(a: Any) -> npt.NDArray[np.float64]:
    """降序奇异值；空矩阵返回空数组。"""
    matrix = as_complex_matrix(a)
    if matrix.size == 0:
        return np.zeros(0, dtype=np.float64)
    try:
        return np.linalg.svd(matrix, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"SVD 不收敛: {matrix.shape[0]}x{matrix.shape[1]}") from e


def numerical_rank(a: Any, rel_tol: float | None = None) -> int:
    """
    数值秩：严格大于 rel_tol * 最大奇异值 的奇异值个数；零矩阵返回 0。
    rel_tol 默认取 numerics.rank_rel_tol（1e-10）。
    """
    tol = rel_tol if rel_tol is not None else _numerics_config().rank_rel_tol
    if not 0.0 < tol < 1.0:
        raise DomainError(f"不满足 0 < rel_tol < 1 (rel_tol={tol})")
    sigma = singular_values(a)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > tol * sigma[0]))


def is_hermitian(a: Any, tol: float = 1e-12) -> bool:
    """方阵且 ‖A - Aᴴ‖_F <= tol * max(1, ‖A‖_F)。"""
    matrix = as_complex_matrix(a)
    if matrix.shape[0] != matrix.shape[1]:
        return False
    scale = max(1.0, float(np.linalg.norm(matrix)))
    return float(np.linalg.norm(matrix - matrix.conj().T)) <= tol * scale


def shannon_logdet(g: Any, noise_cov: Any, power_per_stream: float) -> float:
    """
    log₂ det(I + ρ K⁻¹ G Gᴴ)，ρ = power_per_stream，K = noise_cov（Hermitian 正定）。

    通过 Cholesky 分解 K = L Lᴴ 白化：det(I + ρ K⁻¹GGᴴ) = det(I + ρ (L⁻¹G)(L⁻¹G)ᴴ)。

    Raises:
        DomainError: K 非 Hermitian、非正定，或 G 行数与 K 不一致，或 ρ <= 0。
    """
    gain = as_complex_matrix(g)
    cov = as_complex_matrix(noise_cov)
    if not power_per_stream > 0.0:
        raise DomainError(f"不满足 power_per_stream > 0 (power_per_stream={power_per_stream})")
    if cov.shape[0] != cov.shape[1] or gain.shape[0] != cov.shape[0]:
        raise DomainError(f"不满足 g.rows == noise_cov.rows 且 noise_cov 为方阵 (g={gain.shape}, noise_cov={cov.shape})")
    if not is_hermitian(cov, tol=1e-10):
        raise DomainError("噪声协方差不是 Hermitian 矩阵")
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as e:
        raise DomainError(f"噪声协方差非正定（奇异）: {cov.shape[0]}x{cov.shape[1]}") from e
    if gain.shape[1] == 0 or not np.any(gain):
        return 0.0
    whitened = np.linalg.solve(chol, gain)
    gram = whitened.conj().T @ whitened
    system = np.eye(gram.shape[0], dtype=np.complex128) + power_per_stream * gram
    sign, logabsdet = np.linalg.slogdet(system)
    if sign == 0 or not math.isfinite(logabsdet):
        raise NumericalError(f"log-det 计算失败: sign={sign}, logabsdet={logabsdet}")
    return max(0.0, float(logabsdet) / math.log(2.0))


def dft_matrix(n: int) -> ComplexMatrix:
    """n 点 DFT 矩阵：元素 (r,c) = exp(-j·2π·r·c/n)，0 起始下标；指数先对 n 取模以保留精度。"""
    if n < 1:
        raise DomainError(f"不满足 n >= 1 (n={n})")
    index = np.arange(n)
    exponents = np.outer(index, index) % n
    return np.exp(-2j * np.pi * exponents / n)


def matrix_to_csv_rows(a: Any) -> list[list[str]]:
    """每个元素写作 "re,im"（repr 精度），供 CSV 导出。"""
    matrix = as_complex_matrix(a)
    return [[f"{float(z.real)!r},{float(z.imag)!r}" for z in row] for row in matrix]


def complex_normal(rng: np.random.Generator, rows: int, cols: int) -> ComplexMatrix:
    """i.i.d. 圆对称复高斯 CN(0,1)：(randn + j·randn)/√2，每个元素方差为 1。"""
    real = rng.standard_normal((rows, cols))
    imag = rng.standard_normal((rows, cols))
    return (real + 1j * imag) / math.sqrt(2.0)
