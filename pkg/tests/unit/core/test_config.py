import logging

from src.core.config import Settings


def test_settings_load_from_env(monkeypatch):
    """Test that settings load correctly from environment variables."""
    monkeypatch.setenv("CATALOG_DIR", "/tmp/lie-catalog")
    monkeypatch.setenv("BUILD_THREADS", "4")
    monkeypatch.setenv("STRAIGHTEN_CACHE_SIZE", "100")
    monkeypatch.setenv("MAX_MODULE_DIM", "250")
    monkeypatch.setenv("NIL_DEFECT_MAX_SUBSET", "3")

    # We pass _env_file=None to ignore the .env file and rely on monkeypatch
    settings = Settings(_env_file=None)

    assert settings.CATALOG_DIR == "/tmp/lie-catalog"
    assert settings.BUILD_THREADS == 4
    assert settings.STRAIGHTEN_CACHE_SIZE == 100
    assert settings.MAX_MODULE_DIM == 250
    assert settings.NIL_DEFECT_MAX_SUBSET == 3


def test_settings_defaults(monkeypatch):
    """Test default values for optional settings."""
    for key in ["CATALOG_DIR", "BUILD_THREADS", "STRAIGHTEN_CACHE_SIZE", "MAX_MODULE_DIM",
                "NIL_DEFECT_MAX_SUBSET", "LOG_LEVEL"]:
        monkeypatch.delenv(key, raising=False)

    settings = Settings(_env_file=None)
    assert settings.CATALOG_DIR == "catalog"
    assert settings.BUILD_THREADS == 1
    assert settings.MAX_MODULE_DIM == 5000
    assert settings.NIL_DEFECT_MAX_SUBSET == 2
    assert settings.LOG_LEVEL == "INFO"


def test_get_log_level(monkeypatch):
    """日志级别字符串转换为 logging 常量，未知值回落到 INFO"""
    monkeypatch.setenv("LOG_LEVEL", "debug")
    assert Settings(_env_file=None).get_log_level() == logging.DEBUG

    monkeypatch.setenv("LOG_LEVEL", "VERBOSE")
    assert Settings(_env_file=None).get_log_level() == logging.INFO
