"""天线配置与 DoF 区域相关数据模型（Pydantic V2，有理数坐标使用 fractions.Fraction）。"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.utils.rational import RationalPoint, format_rational, to_rational


class ChannelKind(str, Enum):
    """信道类型：Z 干扰信道（H21 = 0）或全干扰信道。"""

    ZIC = "zic"
    FIC = "fic"


class AntennaConfig(BaseModel):
    """(M1, N1, M2, N2) 系统：发射机 i 有 Mi 根天线，接收机 i 有 Ni 根天线。"""

    m1: int = Field(ge=1, description="发射机 1 天线数")
    n1: int = Field(ge=1, description="接收机 1 天线数")
    m2: int = Field(ge=1, description="发射机 2 天线数")
    n2: int = Field(ge=1, description="接收机 2 天线数")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def of(cls, m1: int, n1: int, m2: int, n2: int) -> AntennaConfig:
        return cls(m1=m1, n1=n1, m2=m2, n2=n2)

    @property
    def m2_active(self) -> int:
        """发射机 2 实际使用的天线数 M2' = min(M2, N2)。"""
        return min(self.m2, self.n2)

    @property
    def is_scheme_case(self) -> bool:
        """M1 < N1 < min(M2, N2)：需要时间扩展盲对齐方案的情形。"""
        return self.m1 < self.n1 < min(self.m2, self.n2)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.m1, self.n1, self.m2, self.n2)

    def label(self) -> str:
        return "({},{},{},{})".format(*self.as_tuple())

    def __str__(self) -> str:
        return self.label()


class HalfPlane(BaseModel):
    """约束 a1·d1 + a2·d2 <= b，系数均为精确有理数。"""

    a1: Fraction
    a2: Fraction
    b: Fraction

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("a1", "a2", "b", mode="before")
    @classmethod
    def coerce_rational(cls, v: Any) -> Fraction:
        return to_rational(v)

    @model_validator(mode="after")
    def nonzero_normal(self) -> HalfPlane:
        if self.a1 == 0 and self.a2 == 0:
            raise ValueError("半平面法向量 (a1, a2) 不能为 (0, 0)")
        return self

    @classmethod
    def of(cls, a1: Any, a2: Any, b: Any) -> HalfPlane:
        return cls(a1=a1, a2=a2, b=b)

    def value(self, point: RationalPoint) -> Fraction:
        return self.a1 * point[0] + self.a2 * point[1]

    def satisfied_by(self, point: RationalPoint) -> bool:
        return self.value(point) <= self.b

    def is_active(self, point: RationalPoint) -> bool:
        return self.value(point) == self.b

    @property
    def is_axis(self) -> bool:
        """是否为非负约束 -d1 <= 0 或 -d2 <= 0。"""
        return self.b == 0 and (self.a1, self.a2) in ((-1, 0), (0, -1))

    def describe(self) -> str:
        return f"{format_rational(self.a1)}*d1 + {format_rational(self.a2)}*d2 <= {format_rational(self.b)}"


NONNEGATIVE_D1 = HalfPlane(a1=-1, a2=0, b=0)
NONNEGATIVE_D2 = HalfPlane(a1=0, a2=-1, b=0)


class DofRegion(BaseModel):
    """二维 DoF 多边形：半平面列表（含 d1>=0、d2>=0）与逆时针顶点列表（从 (0,0) 开始、无重复）。"""

    halfplanes: list[HalfPlane]
    vertices: list[RationalPoint]

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def vertices_feasible(self) -> DofRegion:
        for vertex in self.vertices:
            for hp in self.halfplanes:
                if not hp.satisfied_by(vertex):
                    raise ValueError(f"顶点 {vertex} 不满足约束 {hp.describe()}")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("顶点列表存在重复")
        return self

    def contains(self, point: RationalPoint) -> bool:
        return all(hp.satisfied_by(point) for hp in self.halfplanes)
