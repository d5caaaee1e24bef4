"""异常层次：同时继承对应的内置异常，调用方可按 ValueError / RuntimeError 捕获。"""

from __future__ import annotations


class DofLabError(Exception):
    """本项目所有异常的根类。"""


class DomainError(DofLabError, ValueError):
    """前置条件或取值范围不满足（消息中给出不成立的不等式原文，如 "M1 < N1"）。"""


class ShapeError(DofLabError, ValueError):
    """矩阵维度不匹配。"""


class SizingError(DofLabError, ValueError):
    """Kronecker 积等构造的结果元素数超过 numerics.max_elements。"""


class NumericalError(DofLabError, RuntimeError):
    """SVD 不收敛、噪声协方差奇异或出现 NaN/Inf。"""


class InvariantViolation(DofLabError, RuntimeError):
    """两种独立计算结果不一致等内部一致性检查失败。"""


def require(condition: bool, inequality: str, **values: object) -> None:
    """condition 为假时抛出 DomainError，消息形如「不满足 M1 < N1 (M1=2, N1=2)」。"""
    if condition:
        return
    detail = ", ".join(f"{k}={v}" for k, v in values.items())
    message = f"不满足 {inequality}"
    if detail:
        message = f"{message} ({detail})"
    raise DomainError(message)
