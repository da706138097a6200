"""
FilePath: /lie_quotient_rep/main.py
Description:
    lie-rep 命令行入口点

    支持两种运行方式：
    1. 直接运行: python main.py build-rep catalog/heisenberg3.json
    2. 通过 uv tool install 安装后: lie-rep build-rep catalog/heisenberg3.json
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
