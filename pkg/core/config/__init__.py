"""
core.config：整合路径、统一 YAML 配置 app_config.yaml 及加载。

- 配置：config/app_config.yaml（含 numerics、simulation、sweep、logging）。
- 路径：config 目录及 logs（见 .paths）
- 统一加载：load_app_config() 启动时调用一次；配置通过 inject(Annotated 类型) 获取。
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Annotated

from models.schemas import (
    AppConfigSchema,
    LoggingSection,
    NumericsSection,
    SimulationSection,
    SweepSection,
)

from . import deps as _deps
from . import loader as _loader
from . import paths as _paths

Depends = _deps.Depends
inject = _deps.inject
logger = logging.getLogger(__name__)

# ----- 路径（直接转发） -----

get_config_dir_raw = _paths.get_config_dir_raw
get_app_config_path = _paths.get_app_config_path
get_base_dir = _paths.get_base_dir
get_log_dir = _paths.get_log_dir
normalize_input_path = _paths.normalize_input_path
THREADS_ENV = _loader.THREADS_ENV

# ----- 统一加载与缓存 -----

_app_config: AppConfigSchema | None = None
_app_config_path: Path | None = None


def load_app_config(yaml_path: Path | None = None) -> None:
    """加载全部配置：从 config/app_config.yaml（或 yaml_path）读取并缓存；已加载时不重复读取。"""
    global _app_config, _app_config_path

    if _app_config is not None:
        return

    _app_config_path = yaml_path or get_app_config_path()
    _app_config = _loader.load_app_config_yaml(_app_config_path)
    logger.debug("配置已加载: config_file=%s", _app_config_path)


def reset_app_config() -> None:
    """清空缓存，下次 inject 时重新加载（单测与 CLI 覆盖配置文件时使用）。"""
    global _app_config, _app_config_path
    _app_config = None
    _app_config_path = None


def _resolve_app_config() -> AppConfigSchema:
    if _app_config is None:
        load_app_config()
    assert _app_config is not None
    return _app_config


def _resolve_app_config_path() -> Path:
    _resolve_app_config()
    assert _app_config_path is not None
    return _app_config_path


def _get_numerics_config() -> NumericsSection:
    return _resolve_app_config().numerics


def _get_simulation_config() -> SimulationSection:
    return _resolve_app_config().simulation


def _get_sweep_config() -> SweepSection:
    return _resolve_app_config().sweep


def _get_logging_config() -> LoggingSection:
    return _resolve_app_config().logging


# ----- 依赖注入：Annotated 类型别名（供 inject() 使用） -----

AppConfig = Annotated[AppConfigSchema, Depends(_resolve_app_config)]
AppConfigFilePath = Annotated[Path, Depends(_resolve_app_config_path)]
NumericsConfig = Annotated[NumericsSection, Depends(_get_numerics_config)]
SimulationConfig = Annotated[SimulationSection, Depends(_get_simulation_config)]
SweepConfig = Annotated[SweepSection, Depends(_get_sweep_config)]
LoggingConfig = Annotated[LoggingSection, Depends(_get_logging_config)]


def main_show() -> None:
    """命令行：uv run -m core.config，打印生效配置与来源文件。"""
    config = inject(AppConfig)
    print(json.dumps(
        {"config_file": str(inject(AppConfigFilePath)), **config.model_dump()},
        ensure_ascii=False,
        indent=2,
    ))


__all__ = [
    "load_app_config",
    "reset_app_config",
    "main_show",
    "get_app_config_path",
    "get_base_dir",
    "get_config_dir_raw",
    "get_log_dir",
    "normalize_input_path",
    "THREADS_ENV",
    "Depends",
    "inject",
    "AppConfig",
    "AppConfigFilePath",
    "NumericsConfig",
    "SimulationConfig",
    "SweepConfig",
    "LoggingConfig",
]
