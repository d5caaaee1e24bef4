"""
DoF 区域：四种场景（Z/全干扰 × 有/无 CSIT）的精确有理数多边形、顶点枚举与包含/相等判定。

全部使用 fractions.Fraction 精确运算，区域相等（ZIC/FIC 等价）不依赖任何浮点容差。
"""

from __future__ import annotations

import itertools
import logging
import math
from fractions import Fraction
from functools import cmp_to_key
from typing import Any

from core.utils.rational import RationalPoint, format_point, format_rational, parse_point
from domain.antenna import (
    NONNEGATIVE_D1,
    NONNEGATIVE_D2,
    AntennaConfig,
    ChannelKind,
    DofRegion,
    HalfPlane,
)
from domain.errors import DomainError, require

logger = logging.getLogger(__name__)

ORIGIN: RationalPoint = (Fraction(0), Fraction(0))


# ----- 顶点枚举 -----


def _intersect(h: HalfPlane, g: HalfPlane) -> RationalPoint | None:
    """两条边界直线的交点（Cramer 法则）；平行时返回 None。"""
    det = h.a1 * g.a2 - h.a2 * g.a1
    if det == 0:
        return None
    d1 = (h.b * g.a2 - h.a2 * g.b) / det
    d2 = (h.a1 * g.b - h.b * g.a1) / det
    return (d1, d2)


def _is_bounded(halfplanes: list[HalfPlane]) -> bool:
    """
    可行域有界当且仅当回收锥 {u : a·u <= 0} 只含零向量。
    二维回收锥若非零，其边界射线必沿某条约束直线方向 ±(-a2, a1)。
    """
    if not halfplanes:
        return False
    for hp in halfplanes:
        for sign in (1, -1):
            u = (-hp.a2 * sign, hp.a1 * sign)
            if all(g.a1 * u[0] + g.a2 * u[1] <= 0 for g in halfplanes):
                return False
    return True


def _sort_counter_clockwise(points: list[RationalPoint]) -> list[RationalPoint]:
    """绕重心按极角逆时针排序（精确叉积比较），再旋转使 (0,0)（若存在）或最左下点位于首位。"""
    if len(points) <= 1:
        return list(points)
    cx = sum((p[0] for p in points), Fraction(0)) / len(points)
    cy = sum((p[1] for p in points), Fraction(0)) / len(points)

    def half(p: RationalPoint) -> int:
        x, y = p[0] - cx, p[1] - cy
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def compare(p: RationalPoint, q: RationalPoint) -> int:
        hp, hq = half(p), half(q)
        if hp != hq:
            return hp - hq
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    ordered = sorted(points, key=cmp_to_key(compare))
    start = ORIGIN if ORIGIN in ordered else min(ordered, key=lambda p: (p[1], p[0]))
    i = ordered.index(start)
    return ordered[i:] + ordered[:i]


def vertices(halfplanes: list[HalfPlane]) -> list[RationalPoint]:
    """
    枚举多边形顶点：所有边界直线两两交点中满足全部约束者，去重后从 (0,0) 开始逆时针排列。

    Raises:
        DomainError: 原点不可行（某个 b < 0）或约束系统无界。
    """
    for hp in halfplanes:
        if hp.b < 0:
            raise DomainError(f"不满足 0 <= b（原点不可行）: {hp.describe()}")
    if not _is_bounded(halfplanes):
        raise DomainError("约束系统无界")
    found: set[RationalPoint] = set()
    for h, g in itertools.combinations(halfplanes, 2):
        point = _intersect(h, g)
        if point is None or point in found:
            continue
        if all(hp.satisfied_by(point) for hp in halfplanes):
            found.add(point)
    return _sort_counter_clockwise(list(found))


def _region(halfplanes: list[HalfPlane]) -> DofRegion:
    return DofRegion(halfplanes=halfplanes, vertices=vertices(halfplanes))


def _box(cfg: AntennaConfig) -> list[HalfPlane]:
    """d1, d2 >= 0；di <= min(Mi, Ni)。"""
    return [
        NONNEGATIVE_D1,
        NONNEGATIVE_D2,
        HalfPlane.of(1, 0, min(cfg.m1, cfg.n1)),
        HalfPlane.of(0, 1, min(cfg.m2, cfg.n2)),
    ]


def _weighted_bound_user1(cfg: AntennaConfig) -> HalfPlane:
    """d1 + [min(N1,N2,M2)/min(N2,M2)]·d2 <= min(M1+M2, N1)。"""
    weight = Fraction(min(cfg.n1, cfg.n2, cfg.m2), min(cfg.n2, cfg.m2))
    return HalfPlane.of(1, weight, min(cfg.m1 + cfg.m2, cfg.n1))


def _weighted_bound_user2(cfg: AntennaConfig) -> HalfPlane:
    """[min(N1,N2,M1)/min(N1,M1)]·d1 + d2 <= min(M1+M2, N2)。"""
    weight = Fraction(min(cfg.n1, cfg.n2, cfg.m1), min(cfg.n1, cfg.m1))
    return HalfPlane.of(weight, 1, min(cfg.m1 + cfg.m2, cfg.n2))


# ----- 四种区域 -----


def fic_csit_region(cfg: AntennaConfig) -> DofRegion:
    """全干扰信道、有 CSIT：d1+d2 <= min(max(N1,M2), max(M1,N2), N1+N2, M1+M2)。"""
    total = min(max(cfg.n1, cfg.m2), max(cfg.m1, cfg.n2), cfg.n1 + cfg.n2, cfg.m1 + cfg.m2)
    return _region(_box(cfg) + [HalfPlane.of(1, 1, total)])


def zic_csit_region(cfg: AntennaConfig) -> DofRegion:
    """Z 干扰信道、有 CSIT：和约束中去掉 max(M1,N2) 项。"""
    total = min(max(cfg.n1, cfg.m2), cfg.n1 + cfg.n2, cfg.m1 + cfg.m2)
    return _region(_box(cfg) + [HalfPlane.of(1, 1, total)])


def fic_nocsit_region(cfg: AntennaConfig) -> DofRegion:
    """全干扰信道、无 CSIT：箱约束加两条加权和约束（发射机 1 可切换天线模式时为精确区域）。"""
    return _region(_box(cfg) + [_weighted_bound_user1(cfg), _weighted_bound_user2(cfg)])


def zic_nocsit_region(cfg: AntennaConfig) -> DofRegion:
    """Z 干扰信道、无 CSIT：接收机 2 无干扰，只保留用户 1 侧的加权和约束。"""
    return _region(_box(cfg) + [_weighted_bound_user1(cfg)])


def build_region(cfg: AntennaConfig, channel: ChannelKind | str, csit: bool) -> DofRegion:
    """按信道类型与 CSIT 选择区域构造函数。"""
    kind = ChannelKind(channel)
    if kind is ChannelKind.ZIC:
        return zic_csit_region(cfg) if csit else zic_nocsit_region(cfg)
    return fic_csit_region(cfg) if csit else fic_nocsit_region(cfg)


# ----- 判定 -----


def contains(region: DofRegion, point: RationalPoint) -> bool:
    """点满足全部半平面约束（精确比较）。"""
    return region.contains(point)


def regions_equal(a: DofRegion, b: DofRegion) -> bool:
    """顶点集合相同；对凸多边形等价于相互包含。"""
    return set(a.vertices) == set(b.vertices)


def region_contains_region(outer: DofRegion, inner: DofRegion) -> bool:
    """inner 的每个顶点都在 outer 内，即 outer ⊇ inner。"""
    return all(outer.contains(v) for v in inner.vertices)


def unknown_corner_point(cfg: AntennaConfig) -> RationalPoint:
    """
    M1 < N1 < min(M2, N2) 时外界的角点 (M1, min(M2,N2)·(N1-M1)/N1)。

    Raises:
        DomainError: 前置条件不成立，消息给出不成立的不等式。
    """
    require(cfg.m1 < cfg.n1, "M1 < N1", M1=cfg.m1, N1=cfg.n1)
    require(cfg.n1 < min(cfg.m2, cfg.n2), "N1 < min(M2, N2)", N1=cfg.n1, M2=cfg.m2, N2=cfg.n2)
    return (Fraction(cfg.m1), Fraction(cfg.m2_active * (cfg.n1 - cfg.m1), cfg.n1))


def corner_is_tight(cfg: AntennaConfig) -> bool:
    """角点使用户 1 侧加权和约束取等号，且位于 zic_nocsit 区域边界上。"""
    corner = unknown_corner_point(cfg)
    region = zic_nocsit_region(cfg)
    bound = _weighted_bound_user1(cfg)
    on_boundary = any(hp.is_active(corner) for hp in region.halfplanes if not hp.is_axis)
    return bound.is_active(corner) and region.contains(corner) and on_boundary


def single_slot_zf_point(cfg: AntennaConfig) -> RationalPoint:
    """单时隙迫零：用户 1 发 M1 流时，用户 2 在不干扰接收机 1 的前提下最多发 N1-M1 流。"""
    require(cfg.m1 < cfg.n1, "M1 < N1", M1=cfg.m1, N1=cfg.n1)
    return (Fraction(cfg.m1), Fraction(min(cfg.n1 - cfg.m1, cfg.m2_active)))


def integer_points(region: DofRegion) -> list[tuple[int, int]]:
    """区域内全部整数点，按 (d1, d2) 升序。"""
    if not region.vertices:
        return []
    max_d1 = math.floor(max(v[0] for v in region.vertices))
    max_d2 = math.floor(max(v[1] for v in region.vertices))
    return [
        (d1, d2)
        for d1 in range(max_d1 + 1)
        for d2 in range(max_d2 + 1)
        if region.contains((Fraction(d1), Fraction(d2)))
    ]


# ----- JSON 编解码 -----


def region_to_dict(region: DofRegion) -> dict[str, Any]:
    """{"halfplanes": [{"a1","a2","b"}...], "vertices": [["p/q","p/q"]...]}，有理数为 "p/q" 字符串。"""
    return {
        "halfplanes": [
            {"a1": format_rational(hp.a1), "a2": format_rational(hp.a2), "b": format_rational(hp.b)}
            for hp in region.halfplanes
        ],
        "vertices": [format_point(v) for v in region.vertices],
    }


def region_from_dict(data: dict[str, Any]) -> DofRegion:
    """由 JSON 对象重建区域：按半平面重新计算顶点，与文件中的顶点集合不一致时抛 DomainError。"""
    try:
        halfplanes = [HalfPlane.of(h["a1"], h["a2"], h["b"]) for h in data["halfplanes"]]
        listed = [parse_point(v) for v in data.get("vertices", [])]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise DomainError(f"区域 JSON 格式错误: {e}") from e
    region = _region(halfplanes)
    if listed and set(listed) != set(region.vertices):
        raise DomainError("区域 JSON 中的顶点与半平面不一致")
    return region
