"""pytest 共享 fixture 与配置。"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import pytest

# 保证项目根在 sys.path 中，便于导入 core / domain / application
_root = Path(__file__).resolve().parent.parent
if str(_root) not in sys.path:
    sys.path.insert(0, str(_root))

from core.config import THREADS_ENV, reset_app_config  # noqa: E402


@pytest.fixture(autouse=True)
def _fresh_app_config(monkeypatch: pytest.MonkeyPatch):
    """每个用例使用默认配置（不受 DOF_LAB_THREADS 与上一个用例的缓存影响）。"""
    monkeypatch.delenv(THREADS_ENV, raising=False)
    reset_app_config()
    yield
    reset_app_config()


@pytest.fixture
def restore_root_handlers():
    """CLI 用例会向根 logger 添加文件 handler，结束后移除并关闭。"""
    root = logging.getLogger()
    before = list(root.handlers)
    level = root.level
    yield
    for h in list(root.handlers):
        if h not in before:
            root.removeHandler(h)
            h.close()
    root.setLevel(level)
