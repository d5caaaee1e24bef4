"""Pydantic 模型与 Schema：配置、校验报告、速率点、扫描汇总。"""

from .schemas import (
    AppConfigSchema,
    DofEstimate,
    LoggingSection,
    MonteCarloRankResult,
    NumericsSection,
    PropertyResult,
    RatePoint,
    RunConfigSchema,
    SimulationSection,
    SweepSection,
    SweepSummary,
    VerificationReport,
)

__all__ = [
    "AppConfigSchema",
    "DofEstimate",
    "LoggingSection",
    "MonteCarloRankResult",
    "NumericsSection",
    "PropertyResult",
    "RatePoint",
    "RunConfigSchema",
    "SimulationSection",
    "SweepSection",
    "SweepSummary",
    "VerificationReport",
]
