"""统一配置加载：从 app_config.yaml 读取并校验；支持 ${VAR_NAME} 环境变量占位与 DOF_LAB_THREADS 覆盖。"""

from __future__ import annotations

import logging
import os
import re
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from models.schemas import AppConfigSchema

from . import paths as _paths

logger = logging.getLogger(__name__)

THREADS_ENV = "DOF_LAB_THREADS"
_ENV_PLACEHOLDER = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)\}")


def _substitute_env_vars(content: str) -> str:
    """将原始文本中的 ${VAR_NAME} 替换为环境变量值；未定义则替换为空。"""
    return _ENV_PLACEHOLDER.sub(lambda m: os.environ.get(m.group(1), ""), content)


def _load_yaml(path: Path) -> dict[str, Any] | None:
    """读取 YAML 文件，先解析 ${VAR_NAME} 再交给 PyYAML；文件不存在或解析失败返回 None。"""
    if not path.exists():
        return None
    try:
        content = _substitute_env_vars(path.read_text(encoding="utf-8"))
        data = yaml.safe_load(content) or {}
    except (yaml.YAMLError, OSError) as error:
        logger.warning("读取 YAML 失败 %s: %s", path, error)
        return None
    if not isinstance(data, dict):
        logger.warning("配置文件顶层不是映射，忽略: %s", path)
        return None
    return data


def _apply_thread_cap(config: AppConfigSchema) -> AppConfigSchema:
    """DOF_LAB_THREADS 为正整数时，将 simulation.max_workers 限制在该值以内。"""
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return config
    try:
        cap = int(raw)
    except ValueError:
        logger.warning("%s 不是整数，忽略: %r", THREADS_ENV, raw)
        return config
    if cap < 1:
        logger.warning("%s 必须为正整数，忽略: %d", THREADS_ENV, cap)
        return config
    config.simulation.max_workers = min(config.simulation.max_workers, cap)
    return config


def load_app_config_yaml(yaml_path: Path | None = None) -> AppConfigSchema:
    """
    从 config/app_config.yaml（或指定路径）加载统一配置；不存在或校验失败时使用默认值。
    返回 AppConfigSchema，各节均有默认值。
    """
    path = yaml_path or _paths.get_app_config_path()
    config_data: dict[str, Any] = _load_yaml(path) or {}
    try:
        config = AppConfigSchema.model_validate(config_data)
    except ValidationError as error:
        logger.warning("配置校验失败，使用默认配置: %s", error)
        config = AppConfigSchema()
    return _apply_thread_cap(config)
