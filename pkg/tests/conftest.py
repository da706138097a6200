from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Callable

import pytest

from src.algebra.liealg import LieAlgebra
from src.schemas.algebra import LieAlgebraFile
from src.services.catalog import algebra_from_model, load_algebra_file


# =============================================================================
# Pytest Markers Registration
# =============================================================================
def pytest_configure(config):
    """注册自定义标记以避免警告。"""
    config.addinivalue_line(
        "markers",
        "integration: mark test as integration test (runs the full catalog pipeline)",
    )


# =============================================================================
# Catalog Fixtures
# =============================================================================
CATALOG_DIR = Path(__file__).parent.parent / "catalog"


@pytest.fixture
def catalog_dir() -> Path:
    return CATALOG_DIR


@pytest.fixture
def load_catalog() -> Callable[[str], LieAlgebraFile]:
    """
    从 catalog/ 加载李代数文件。

    用法:
        def test_example(load_catalog):
            model = load_catalog("heisenberg3")
    """

    def _load(name: str) -> LieAlgebraFile:
        filepath = CATALOG_DIR / f"{name}.json"
        if not filepath.exists():
            raise FileNotFoundError(f"目录文件不存在: {filepath}")
        return load_algebra_file(filepath)

    return _load


@pytest.fixture
def load_algebra(load_catalog) -> Callable[[str], LieAlgebra]:
    def _load(name: str) -> LieAlgebra:
        return algebra_from_model(load_catalog(name))

    return _load


# =============================================================================
# Logging Configuration
# =============================================================================
# 配置测试日志
logging.basicConfig(
    level=logging.DEBUG,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)
logger.info("测试日志配置完成: level=DEBUG")


@pytest.fixture(autouse=True)
def log_test_info(request):
    """自动记录每个测试的开始和结束。"""
    logger.info("=" * 60)
    logger.info("开始测试: %s", request.node.name)
    yield
    logger.info("结束测试: %s", request.node.name)
