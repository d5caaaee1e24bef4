"""
Pydantic V2 Schema：统一配置 app_config.yaml 各节、校验报告、速率点与 DoF 估计、属性扫描汇总。

- AppConfigSchema 及各 Section: YAML 配置解析，供 core.config 使用。
- VerificationReport: 盲干扰对齐方案三个充分条件的校验结果。
- RatePoint / DofEstimate: Monte Carlo 速率扫描与斜率估计。
- MonteCarloRankResult / PropertyResult / SweepSummary: 批量校验与属性扫描的汇总。
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# ----- 统一 YAML 配置 app_config.yaml -----


class NumericsSection(BaseModel):
    """数值容差与规模上限。"""

    rank_rel_tol: float = Field(default=1e-10, gt=0.0, lt=1.0, description="数值秩相对容差")
    nulling_tol: float = Field(default=1e-9, gt=0.0, description="条件 3 置零容差系数：‖Ṽ‖_F <= tol*(‖H12‖_F+1)")
    consistency_tol: float = Field(default=1e-9, gt=0.0, description="两种独立计算之间允许的最大 Frobenius 偏差")
    max_elements: int = Field(default=2**20, ge=1, description="Kronecker 积结果元素数上限")
    max_antennas: int = Field(default=64, ge=1, description="单个天线数上限")


class SimulationSection(BaseModel):
    """Monte Carlo 仿真默认参数。"""

    seed: int = Field(default=1, ge=0, description="主随机种子")
    trials: int = Field(default=50, ge=1, description="每个功率点的信道试验次数")
    powers_db: list[float] = Field(default_factory=lambda: [60.0, 80.0], description="发射功率（dB）")
    max_workers: int = Field(default=4, ge=1, description="并发试验数，可被 DOF_LAB_THREADS 覆盖")
    min_power: float = Field(default=1e3, gt=0.0, description="斜率估计允许的最小线性功率（高 SNR 区）")


class SweepSection(BaseModel):
    """属性扫描参数。"""

    max_antennas: int = Field(default=4, ge=1, le=6, description="扫描的单个天线数上限")
    zf_seed: int = Field(default=7, ge=0, description="迫零可行性检查的随机种子")


class LoggingSection(BaseModel):
    """日志：级别、按大小切割时的单文件上限与保留备份数。"""

    level: str = Field(default="INFO", description="根日志级别")
    log_rotate_max_bytes: int = Field(
        default=10 * 1024 * 1024,
        ge=1024,
        description="单日志文件超过该字节数时切割（默认 10MB）",
    )
    log_rotate_backup_count: int = Field(
        default=5,
        ge=0,
        description="切割后保留的历史文件个数",
    )

    @field_validator("level", mode="before")
    @classmethod
    def upper_level(cls, v: Any) -> str:
        if v is None:
            return "INFO"
        return str(v).strip().upper() or "INFO"


class AppConfigSchema(BaseModel):
    """统一配置文件 app_config.yaml 的完整结构；缺省节使用默认值。"""

    numerics: NumericsSection = Field(default_factory=NumericsSection, description="数值容差")
    simulation: SimulationSection = Field(default_factory=SimulationSection, description="仿真参数")
    sweep: SweepSection = Field(default_factory=SweepSection, description="属性扫描参数")
    logging: LoggingSection = Field(default_factory=LoggingSection, description="日志参数")


class RunConfigSchema(BaseModel):
    """运行时路径配置：日志目录。"""

    log_dir: Path = Field(description="日志文件目录")

    model_config = {"frozen": False}


# ----- 方案校验报告 -----


class VerificationReport(BaseModel):
    """三个充分条件：rank(Ũ)=M1N1、rank(P̃)=M2'(N1-M1)、Ṽ=0。"""

    rank_u: int = Field(ge=0, description="rank(Ũ)")
    rank_u_required: int = Field(ge=0, description="M1·N1")
    rank_p_tilde: int = Field(ge=0, description="rank(P̃)")
    rank_p_required: int = Field(ge=0, description="M2'·(N1-M1)")
    rank_p: int = Field(ge=0, description="rank(P)，用于交叉检查 rank(P̃)=rank(P)·M2'")
    v_frobenius: float = Field(ge=0.0, description="‖Ṽ‖_F")
    v_tolerance: float = Field(ge=0.0, description="条件 3 实际使用的阈值")
    min_singular_u: float = Field(ge=0.0, description="Ũ 的最小奇异值")
    rank_rel_tol: float = Field(gt=0.0, lt=1.0, description="数值秩相对容差")
    nulling_tol: float = Field(gt=0.0, description="置零容差系数")
    passed: bool = Field(alias="pass", description="三个条件是否同时成立")

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    @model_validator(mode="after")
    def check_pass_consistency(self) -> VerificationReport:
        expected = (
            self.rank_u == self.rank_u_required
            and self.rank_p_tilde == self.rank_p_required
            and self.v_frobenius <= self.v_tolerance
        )
        if self.passed != expected:
            raise ValueError(f"pass={self.passed} 与三个条件的结果 {expected} 不一致")
        return self

    def to_json_dict(self) -> dict[str, Any]:
        """序列化为 JSON 对象，字段名 pass 使用别名。"""
        return self.model_dump(by_alias=True)


# ----- 速率与 DoF -----


class RatePoint(BaseModel):
    """单个 (功率, 试验) 上两用户每时隙速率（bit/channel use）。"""

    power: float = Field(gt=0.0, description="每发射机总功率 P（线性）")
    r1: float = Field(ge=0.0, description="用户 1 速率")
    r2: float = Field(ge=0.0, description="用户 2 速率")
    trial: int = Field(default=0, ge=0, description="试验编号")

    @field_validator("r1", "r2", mode="after")
    @classmethod
    def finite_rate(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"速率必须有限: {v}")
        return v

    @property
    def power_db(self) -> float:
        return 10.0 * math.log10(self.power)

    model_config = ConfigDict(frozen=True)


class DofEstimate(BaseModel):
    """由 >= 2 个不同功率的速率点最小二乘斜率得到的 (d1, d2) 估计。"""

    d1_hat: float
    d2_hat: float
    points: list[RatePoint] = Field(default_factory=list, description="参与拟合的速率点")
    seed: int | None = Field(default=None, description="产生速率点的主种子")

    @model_validator(mode="after")
    def enough_points(self) -> DofEstimate:
        if len({p.power for p in self.points}) < 2:
            raise ValueError("DoF 估计至少需要 2 个不同功率的速率点")
        return self


# ----- 批量校验与属性扫描 -----


class MonteCarloRankResult(BaseModel):
    """随机信道下方案校验的通过比例。"""

    config: str = Field(description="天线配置，如 (1,2,3,3)")
    trials: int = Field(ge=1)
    passed: int = Field(ge=0)
    seed: int = Field(ge=0)

    @property
    def fraction(self) -> float:
        return self.passed / self.trials


class PropertyResult(BaseModel):
    """单个属性在全部配置上的检查结果。"""

    name: str = Field(description="属性名：lemma3 / strict / csit / zic / corner / zf")
    checked: int = Field(default=0, ge=0, description="检查的实例数")
    passed: int = Field(default=0, ge=0, description="通过的实例数")
    counterexamples: list[str] = Field(default_factory=list, description="反例配置")

    @property
    def ok(self) -> bool:
        return self.passed == self.checked and not self.counterexamples


class SweepSummary(BaseModel):
    """属性扫描汇总。"""

    max_antennas: int = Field(ge=1)
    results: list[PropertyResult] = Field(default_factory=list)
    zf_seed: int | None = Field(default=None, description="zf 属性使用的随机种子（未检查 zf 时为 None）")

    @property
    def all_passed(self) -> bool:
        return all(r.ok for r in self.results)
