"""
CLI 入口：委托给 interface.cli.main，保证 python main.py 与 dof-lab 控制台脚本可用。
"""

import sys

from interface.cli import main

if __name__ == "__main__":
    sys.exit(main())
