"""
路径解析：基准目录、配置目录、日志目录及用户输入路径规范化。

- 配置：config 目录下 app_config.yaml
- 运行产物：logs
"""

from __future__ import annotations

import os
import re
import sys
from pathlib import Path

APP_CONFIG_FILENAME = "app_config.yaml"


def get_base_dir() -> Path:
    """基准目录：打包后为可执行文件所在目录，否则为项目根（core 的父目录）。"""
    if getattr(sys, "frozen", False):
        return Path(sys.executable).resolve().parent
    return Path(__file__).resolve().parent.parent.parent


def get_config_dir_raw() -> Path:
    """配置文件目录（不触发加载）。"""
    return get_base_dir() / "config"


def get_app_config_path() -> Path:
    """app_config.yaml 路径。"""
    return get_config_dir_raw() / APP_CONFIG_FILENAME


def get_log_dir() -> Path:
    """日志文件目录。"""
    return get_base_dir() / "logs"


def normalize_input_path(user_input: str) -> Path:
    """
    规范化用户输入的文件路径：去首尾引号/空白；WSL 下将 Windows 盘符路径转为 /mnt/<盘符>/...。
    例：'c:/Users/me/out.csv' -> /mnt/c/Users/me/out.csv
    """
    path_str = user_input.strip().strip("\"'")
    if not path_str:
        return Path("")
    if os.name == "posix" and len(path_str) >= 2:
        match = re.match(r"^([a-zA-Z])\s*:[\\/](.*)$", path_str)
        if match:
            drive_letter = match.group(1).lower()
            path_after_drive = (match.group(2) or "").replace("\\", "/").strip("/")
            path_str = f"/mnt/{drive_letter}/{path_after_drive}" if path_after_drive else f"/mnt/{drive_letter}"
    return Path(path_str)


__all__ = [
    "APP_CONFIG_FILENAME",
    "get_app_config_path",
    "get_base_dir",
    "get_config_dir_raw",
    "get_log_dir",
    "normalize_input_path",
]
