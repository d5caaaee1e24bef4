"""有理数文本编解码："p/q" 规范形式（整数写作 "p"），与 fractions.Fraction 互转。"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

Rational = Fraction
RationalPoint = tuple[Fraction, Fraction]


def to_rational(value: Any) -> Fraction:
    """
    统一转为 Fraction：支持 int、Fraction、"p/q" / "p" 字符串。
    float 不接受，避免把 1.5 之类的二进制近似值混入精确计算。
    """
    if isinstance(value, bool):
        raise TypeError(f"不支持 bool 作为有理数: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("有理数字符串为空")
        return Fraction(text)
    raise TypeError(f"不支持的有理数类型: {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """规范文本：分母为 1 时只写分子。"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_point(point: RationalPoint) -> list[str]:
    return [format_rational(point[0]), format_rational(point[1])]


def parse_point(raw: Any) -> RationalPoint:
    """解析 ["p/q", "p/q"] 形式的坐标对。"""
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ValueError(f"坐标应为长度 2 的数组: {raw!r}")
    return to_rational(raw[0]), to_rational(raw[1])
