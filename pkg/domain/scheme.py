"""盲干扰对齐方案与时间扩展信道的数据模型；矩阵字段为 complex128 numpy 数组。"""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from domain.antenna import AntennaConfig


def _shape(matrix: np.ndarray) -> tuple[int, ...]:
    return tuple(int(x) for x in matrix.shape)


class BiaScheme(BaseModel):
    """
    时间扩展 T = N1 个时隙的方案：接收机 1 置零矩阵 Q (M1xN1)、发射机 2 预编码 P (N1x(N1-M1))，
    以及 Q̃ = Q ⊗ I_{N1}、P̃ = P ⊗ I_{M2'}。
    """

    cfg: AntennaConfig
    expansion: int = Field(ge=1, description="时间扩展长度 T = N1")
    q: np.ndarray
    p: np.ndarray
    q_tilde: np.ndarray
    p_tilde: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_shapes(self) -> BiaScheme:
        m1, n1, m2a = self.cfg.m1, self.cfg.n1, self.cfg.m2_active
        expected = {
            "q": (m1, n1),
            "p": (n1, n1 - m1),
            "q_tilde": (m1 * n1, n1 * n1),
            "p_tilde": (m2a * n1, m2a * (n1 - m1)),
        }
        for name, shape in expected.items():
            actual = _shape(getattr(self, name))
            if actual != shape:
                raise ValueError(f"{name} 形状应为 {shape}，得到 {actual}")
        if self.expansion != n1:
            raise ValueError(f"时间扩展长度应为 N1={n1}，得到 {self.expansion}")
        return self


class ChannelDraw(BaseModel):
    """一次信道实现：N1 个时隙的 H11(t)（N1xM1）、恒定的 H12（N1xM2'）与 H22（N2xM2'）。"""

    h11_slots: list[np.ndarray]
    h12: np.ndarray
    h22: np.ndarray
    seed: int | None = None
    trial: int | None = None

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class TimeExpandedChannels(BaseModel):
    """时间扩展后的信道：H̃11 块对角（N1²x(N1·M1)），H̃12 = I_{N1} ⊗ H12（N1²x(N1·M2')）。"""

    h11_slots: list[np.ndarray]
    h12: np.ndarray
    h22: np.ndarray
    h11_tilde: np.ndarray
    h12_tilde: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
