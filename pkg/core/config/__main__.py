"""uv run -m core.config：打印当前生效配置（JSON）。"""

from . import main_show

if __name__ == "__main__":
    main_show()
