"""
依赖组装：为 CLI 提供统一入口，仅做依赖汇集，不包含业务逻辑与算法。
"""

from __future__ import annotations

from application.services.biascheme import (
    build_scheme,
    build_u,
    build_v,
    report_to_dict,
    special_realizations,
    verify,
)
from application.services.dofregion import build_region, region_from_dict, region_to_dict
from application.services.simulate import check_estimate_within_region, estimate_dof, sample_channels
from application.use_cases.monte_carlo import simulate_dof
from application.use_cases.property_sweep import PROPERTIES, run_sweep
from core.config import (
    LoggingConfig,
    NumericsConfig,
    SimulationConfig,
    SweepConfig,
    get_log_dir,
    inject,
    load_app_config,
    normalize_input_path,
    reset_app_config,
)
from domain.antenna import AntennaConfig, ChannelKind
from domain.errors import DofLabError, DomainError, ShapeError
from infrastructure.io.file_io import (
    dump_json,
    export_matrices,
    rate_points_to_csv,
    read_json,
    read_rate_points_xlsx,
    region_to_csv,
    sweep_to_dict,
    sweep_to_table,
    write_rate_points_xlsx,
    write_sweep_xlsx,
    write_text,
)
from models.schemas import DofEstimate, RunConfigSchema

__all__ = [
    "AntennaConfig",
    "ChannelKind",
    "DofEstimate",
    "DofLabError",
    "DomainError",
    "LoggingConfig",
    "NumericsConfig",
    "PROPERTIES",
    "RunConfigSchema",
    "ShapeError",
    "SimulationConfig",
    "SweepConfig",
    "build_region",
    "build_scheme",
    "build_u",
    "build_v",
    "check_estimate_within_region",
    "dump_json",
    "estimate_dof",
    "export_matrices",
    "get_log_dir",
    "inject",
    "load_app_config",
    "normalize_input_path",
    "rate_points_to_csv",
    "read_json",
    "read_rate_points_xlsx",
    "region_from_dict",
    "region_to_csv",
    "region_to_dict",
    "report_to_dict",
    "reset_app_config",
    "run_sweep",
    "sample_channels",
    "simulate_dof",
    "special_realizations",
    "sweep_to_dict",
    "sweep_to_table",
    "verify",
    "write_rate_points_xlsx",
    "write_sweep_xlsx",
    "write_text",
]
