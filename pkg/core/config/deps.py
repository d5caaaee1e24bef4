"""
依赖注入：Annotated[T, Depends(getter)] 声明「如何取得 T」，inject() 负责解析。

用法：
    from core.config import inject, NumericsConfig

    tol = inject(NumericsConfig).rank_rel_tol
"""

from __future__ import annotations

from typing import Annotated, Any, Callable, get_args, get_origin


class Depends:
    """依赖标记：保存无参解析函数 getter。"""

    __slots__ = ("getter",)

    def __init__(self, getter: Callable[[], Any]) -> None:
        self.getter = getter

    def __repr__(self) -> str:
        return f"Depends({getattr(self.getter, '__name__', self.getter)!r})"


def _find_depends(typed: Any) -> Depends:
    if get_origin(typed) is not Annotated:
        raise TypeError(f"期望 Annotated 类型，得到: {typed}")
    for meta in get_args(typed)[1:]:
        if isinstance(meta, Depends):
            return meta
    raise TypeError(f"未找到 Depends 元数据: {typed}")


def inject(typed: Any) -> Any:
    """解析 Annotated[T, Depends(getter)]，返回 getter() 的结果；类型不符抛 TypeError。"""
    return _find_depends(typed).getter()
