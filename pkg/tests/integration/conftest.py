"""
Integration Test Configuration
集成测试配置 - 目录全流程

对 catalog/ 中的每个李代数：解析分解 → 组装忠实表示 → 精确验证 → 与各上界比较。
"""

from typing import Callable

import pytest

from src.services.catalog import ResolvedAlgebra, resolve_decomposition


# =============================================================================
# Fixtures
# =============================================================================
@pytest.fixture
def resolve(load_catalog) -> Callable[[str], ResolvedAlgebra]:
    """按名称加载目录项并解析分解"""

    def _resolve(name: str) -> ResolvedAlgebra:
        return resolve_decomposition(load_catalog(name))

    return _resolve
