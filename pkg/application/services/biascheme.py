"""
盲干扰对齐方案：置零矩阵 Q、预编码 P、Kronecker 扩展、时间扩展信道、特殊实现与三条件校验。

公式中的下标 m、n、t 与文献一致从 1 开始，数组存储从 0 开始，只在公式边界处换算。
发射机 2 只使用前 M2' = min(M2, N2) 根天线。
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from core.utils.matkernel import (
    ComplexMatrix,
    as_complex_matrix,
    complex_normal,
    dft_matrix,
    kron,
    numerical_rank,
    singular_values,
)
from domain.antenna import AntennaConfig
from domain.errors import DomainError, InvariantViolation, ShapeError, require
from domain.scheme import BiaScheme, TimeExpandedChannels
from models.schemas import VerificationReport

logger = logging.getLogger(__name__)


def _numerics_config():
    from core.config import inject, NumericsConfig
    return inject(NumericsConfig)


# ----- Q / P 构造 -----


def build_q(m1: int, n1: int) -> ComplexMatrix:
    """Q 的 (m,n) 元素为 exp(-j2π(m-1)(n-1)/N1)，即 N1 点 DFT 矩阵的前 M1 行。"""
    require(m1 < n1, "M1 < N1", M1=m1, N1=n1)
    require(m1 >= 1, "M1 >= 1", M1=m1)
    return dft_matrix(n1)[:m1, :]


def build_p(m1: int, n1: int) -> ComplexMatrix:
    """P 的列为共轭 DFT 矩阵的后 N1-M1 列，[Qᴴ P] 构成（共轭）FFT 矩阵。"""
    require(m1 < n1, "M1 < N1", M1=m1, N1=n1)
    require(m1 >= 1, "M1 >= 1", M1=m1)
    return dft_matrix(n1).conj()[:, m1:]


def special_h11(t: int, m1: int, n1: int) -> ComplexMatrix:
    """
    第 t 个时隙的特殊信道实现：(r,c) 元素为 W^{(r-1)[(c-1)N1 + t-1]}，W = exp(-j2π/N1²)。

    指数先对 N1² 取模，保证大 N1 时的相位精度。
    """
    require(m1 < n1, "M1 < N1", M1=m1, N1=n1)
    require(1 <= t <= n1, "1 <= t <= N1", t=t, N1=n1)
    period = n1 * n1
    rows = np.arange(n1)[:, None]
    cols = (np.arange(m1) * n1 + (t - 1))[None, :]
    exponents = (rows * cols) % period
    return np.exp(-2j * np.pi * exponents / period)


def special_realizations(m1: int, n1: int) -> list[ComplexMatrix]:
    return [special_h11(t, m1, n1) for t in range(1, n1 + 1)]


def random_realizations(cfg: AntennaConfig, rng: np.random.Generator) -> list[ComplexMatrix]:
    """N1 个独立时隙的 H11(t)，元素 i.i.d. CN(0,1)（发射机 1 切换天线模式产生的信道变化）。"""
    return [complex_normal(rng, cfg.n1, cfg.m1) for _ in range(cfg.n1)]


def build_scheme(cfg: AntennaConfig) -> BiaScheme:
    """
    构造 (M1,N1,M2,N2) 系统的完整方案：Q、P、Q̃ = Q ⊗ I_{N1}、P̃ = P ⊗ I_{M2'}。

    Raises:
        DomainError: 不满足 M1 < N1 < min(M2, N2)。
        InvariantViolation: ‖Q·P‖_F 超过 1e-12·N1。
    """
    require(cfg.m1 < cfg.n1, "M1 < N1", M1=cfg.m1, N1=cfg.n1)
    require(cfg.n1 < min(cfg.m2, cfg.n2), "N1 < min(M2, N2)", N1=cfg.n1, M2=cfg.m2, N2=cfg.n2)
    q = build_q(cfg.m1, cfg.n1)
    p = build_p(cfg.m1, cfg.n1)
    residual = float(np.linalg.norm(q @ p))
    if residual > 1e-12 * cfg.n1:
        raise InvariantViolation(f"Q·P 非零: ‖Q·P‖_F={residual:.3e}, cfg={cfg}")
    scheme = BiaScheme(
        cfg=cfg,
        expansion=cfg.n1,
        q=q,
        p=p,
        q_tilde=kron(q, np.eye(cfg.n1)),
        p_tilde=kron(p, np.eye(cfg.m2_active)),
    )
    logger.debug("方案已构造: cfg=%s, T=%d, ‖QP‖_F=%.3e", cfg, cfg.n1, residual)
    return scheme


# ----- 时间扩展 -----


def _check_slots(h11_slots: list[Any], m1: int, n1: int) -> list[ComplexMatrix]:
    if len(h11_slots) != n1:
        raise ShapeError(f"需要 N1={n1} 个时隙的 H11，得到 {len(h11_slots)} 个")
    slots = []
    for t, slot in enumerate(h11_slots, start=1):
        matrix = as_complex_matrix(slot)
        if matrix.shape != (n1, m1):
            raise ShapeError(f"时隙 t={t} 的 H11 形状应为 ({n1}, {m1})，得到 {matrix.shape}")
        slots.append(matrix)
    return slots


def _active_columns(h: Any, rows: int, m2_active: int, name: str) -> ComplexMatrix:
    """取前 M2' 列；列数少于 M2' 或行数不符时抛 ShapeError。"""
    matrix = as_complex_matrix(h)
    if matrix.shape[0] != rows or matrix.shape[1] < m2_active:
        raise ShapeError(f"{name} 形状应为 ({rows}, >= {m2_active})，得到 {matrix.shape}")
    return matrix[:, :m2_active]


def _block_diagonal(slots: list[ComplexMatrix], m1: int, n1: int) -> ComplexMatrix:
    """H̃11 = blkdiag(H11(1), …, H11(N1))，N1²x(N1·M1)。"""
    h11_tilde = np.zeros((n1 * n1, n1 * m1), dtype=np.complex128)
    for t, slot in enumerate(slots):
        h11_tilde[t * n1:(t + 1) * n1, t * m1:(t + 1) * m1] = slot
    return h11_tilde


def time_expand(cfg: AntennaConfig, h11_slots: list[Any], h12: Any, h22: Any) -> TimeExpandedChannels:
    """H̃11 = blkdiag(H11(1), …, H11(N1))；H̃12 = I_{N1} ⊗ H12（用户 2 信道在 N1 个时隙内不变）。"""
    m1, n1, m2a = cfg.m1, cfg.n1, cfg.m2_active
    slots = _check_slots(h11_slots, m1, n1)
    h12_active = _active_columns(h12, n1, m2a, "H12")
    h22_active = _active_columns(h22, cfg.n2, m2a, "H22")
    return TimeExpandedChannels(
        h11_slots=slots,
        h12=h12_active,
        h22=h22_active,
        h11_tilde=_block_diagonal(slots, m1, n1),
        h12_tilde=kron(np.eye(n1), h12_active),
    )


# ----- Ũ / Ṽ -----


def build_u(q: Any, h11_slots: list[Any]) -> ComplexMatrix:
    """
    Ũ = Q̃·H̃11，(M1·N1)x(M1·N1)；块 (m,t) 为 q[m,t]·H11(t)。

    按块公式构造，并与 kron(Q, I_{N1})·H̃11 交叉核对。
    """
    q_matrix = as_complex_matrix(q)
    m1, n1 = q_matrix.shape
    slots = _check_slots(h11_slots, m1, n1)
    u = np.zeros((m1 * n1, n1 * m1), dtype=np.complex128)
    for m in range(m1):
        for t in range(n1):
            u[m * n1:(m + 1) * n1, t * m1:(t + 1) * m1] = q_matrix[m, t] * slots[t]

    direct = kron(q_matrix, np.eye(n1)) @ _block_diagonal(slots, m1, n1)
    _cross_check(u, direct, "Ũ 块公式与 Q̃·H̃11")
    return u


def build_v(q: Any, p: Any, h12: Any) -> ComplexMatrix:
    """
    Ṽ = Q̃·H̃12·P̃ = (Q·P) ⊗ H12（混合积恒等式）。

    返回 kron(Q·P, H12)，并与三矩阵直接相乘的结果核对。
    """
    q_matrix = as_complex_matrix(q)
    p_matrix = as_complex_matrix(p)
    h12_matrix = as_complex_matrix(h12)
    if q_matrix.shape[1] != p_matrix.shape[0]:
        raise ShapeError(f"Q 列数与 P 行数不一致: Q={q_matrix.shape}, P={p_matrix.shape}")
    n1 = q_matrix.shape[1]
    m2a = h12_matrix.shape[1]
    v = kron(q_matrix @ p_matrix, h12_matrix)
    direct = kron(q_matrix, np.eye(n1)) @ kron(np.eye(n1), h12_matrix) @ kron(p_matrix, np.eye(m2a))
    _cross_check(v, direct, "kron(Q·P, H12) 与 Q̃·H̃12·P̃")
    return v


def _cross_check(a: ComplexMatrix, b: ComplexMatrix, what: str) -> None:
    tol = _numerics_config().consistency_tol
    gap = float(np.linalg.norm(a - b))
    if gap > tol * max(1.0, float(np.linalg.norm(b))):
        raise InvariantViolation(f"{what} 不一致: ‖Δ‖_F={gap:.3e}")


# ----- 校验 -----


def verify(
    cfg: AntennaConfig,
    q: Any,
    p: Any,
    h11_slots: list[Any],
    h12: Any,
    rel_tol: float | None = None,
    nulling_tol: float | None = None,
) -> VerificationReport:
    """
    校验三个充分条件：rank(Ũ) = M1·N1、rank(P̃) = M2'(N1-M1)、Ṽ = 0。

    条件 3 的阈值为 nulling_tol·(‖H12‖_F + 1)。H12 超过 M2' 的列被忽略。

    Raises:
        DomainError: 不满足 M1 < N1 < min(M2, N2)。
        InvariantViolation: rank(P̃) 与 rank(P)·M2' 不一致。
    """
    require(cfg.m1 < cfg.n1, "M1 < N1", M1=cfg.m1, N1=cfg.n1)
    require(cfg.n1 < min(cfg.m2, cfg.n2), "N1 < min(M2, N2)", N1=cfg.n1, M2=cfg.m2, N2=cfg.n2)
    numerics = _numerics_config()
    rank_tol = rel_tol if rel_tol is not None else numerics.rank_rel_tol
    null_tol = nulling_tol if nulling_tol is not None else numerics.nulling_tol
    if not null_tol > 0.0:
        raise DomainError(f"不满足 nulling_tol > 0 (nulling_tol={null_tol})")

    m1, n1, m2a = cfg.m1, cfg.n1, cfg.m2_active
    q_matrix = as_complex_matrix(q)
    p_matrix = as_complex_matrix(p)
    if q_matrix.shape != (m1, n1):
        raise ShapeError(f"Q 形状应为 ({m1}, {n1})，得到 {q_matrix.shape}")
    if p_matrix.shape != (n1, n1 - m1):
        raise ShapeError(f"P 形状应为 ({n1}, {n1 - m1})，得到 {p_matrix.shape}")
    h12_active = _active_columns(h12, n1, m2a, "H12")

    u = build_u(q_matrix, h11_slots)
    rank_u = numerical_rank(u, rank_tol)
    sigma = singular_values(u)
    min_singular_u = float(sigma[-1]) if sigma.size else 0.0

    p_tilde = kron(p_matrix, np.eye(m2a))
    rank_p_tilde = numerical_rank(p_tilde, rank_tol)
    rank_p = numerical_rank(p_matrix, rank_tol)
    if rank_p_tilde != rank_p * m2a:
        raise InvariantViolation(f"rank(P̃)={rank_p_tilde} 与 rank(P)·M2'={rank_p * m2a} 不一致")

    v = build_v(q_matrix, p_matrix, h12_active)
    v_frobenius = float(np.linalg.norm(v))
    v_tolerance = null_tol * (float(np.linalg.norm(h12_active)) + 1.0)

    rank_u_required = m1 * n1
    rank_p_required = m2a * (n1 - m1)
    passed = rank_u == rank_u_required and rank_p_tilde == rank_p_required and v_frobenius <= v_tolerance
    if not passed:
        logger.info(
            "方案校验未通过: cfg=%s, rank_u=%d/%d, rank_p_tilde=%d/%d, ‖Ṽ‖_F=%.3e (阈值 %.3e)",
            cfg, rank_u, rank_u_required, rank_p_tilde, rank_p_required, v_frobenius, v_tolerance,
        )
    return VerificationReport(
        rank_u=rank_u,
        rank_u_required=rank_u_required,
        rank_p_tilde=rank_p_tilde,
        rank_p_required=rank_p_required,
        rank_p=rank_p,
        v_frobenius=v_frobenius,
        v_tolerance=v_tolerance,
        min_singular_u=min_singular_u,
        rank_rel_tol=rank_tol,
        nulling_tol=null_tol,
        passed=passed,
    )


def report_to_dict(report: VerificationReport, cfg: AntennaConfig | None = None) -> dict[str, Any]:
    """报告的 JSON 对象：全部字段与所用容差，可选附带天线配置标签。"""
    data = report.to_json_dict()
    if cfg is not None:
        data = {"config": cfg.label(), **data}
    return data


# ----- FFT 结构检查 -----


def fft_column_order(m1: int, n1: int) -> list[int]:
    """列置换 (0, N1, …, (M1-1)N1), (1, N1+1, …), …：Ũ 的第 (t-1)·M1+(c-1) 列对应 FFT 第 (c-1)·N1+(t-1) 列。"""
    return [c * n1 + t for t in range(n1) for c in range(m1)]


def fft_minor(m1: int, n1: int) -> ComplexMatrix:
    """N1² 点 DFT 矩阵按 fft_column_order 置换列后的前 M1·N1 阶主子式。"""
    require(m1 < n1, "M1 < N1", M1=m1, N1=n1)
    side = m1 * n1
    return dft_matrix(n1 * n1)[:side, fft_column_order(m1, n1)]


def fft_structure_residual(m1: int, n1: int) -> float:
    """‖Ũ(特殊实现) - fft_minor‖_F。"""
    u = build_u(build_q(m1, n1), special_realizations(m1, n1))
    return float(np.linalg.norm(u - fft_minor(m1, n1)))


def fft_frame_residual(m1: int, n1: int) -> float:
    """‖[Qᴴ P] - conj(F_{N1})‖_F：[Qᴴ P] 是（共轭）FFT 矩阵。"""
    frame = np.hstack([build_q(m1, n1).conj().T, build_p(m1, n1)])
    return float(np.linalg.norm(frame - dft_matrix(n1).conj()))
