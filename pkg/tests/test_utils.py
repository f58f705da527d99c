"""
测试工具函数、配置与日志
覆盖：formatting、validators、log_filters、config、app.setup_logging
"""
import importlib
import logging

import pytest


# ==================== 工具函数 ====================
class TestFormatting:
    def test_format_residual(self):
        from src.utils import format_residual
        assert format_residual(None) == "n/a"
        assert format_residual(1.234e-10) == "1.23e-10"
        assert format_residual(0) == "0.00e+00"

    def test_format_multiset(self):
        from src.utils import format_multiset
        assert format_multiset([0.8, 0.3]) == "[0.8, 0.3]"
        assert format_multiset(()) == "[]"

    def test_format_signature(self):
        from src.matcore import Field
        from src.utils import format_signature
        assert format_signature(2, 3, 3, 2, Field.REAL) == "M_2,3 -> M_3,2 (real)"
        assert format_signature(2, 2, 4, 4, "complex") == "M_2,2 -> M_4,4 (complex)"

    def test_format_duration(self):
        from src.utils import format_duration
        assert format_duration(-1) == "0ms"
        assert format_duration(0.35) == "350ms"
        assert format_duration(5) == "5.0s"
        assert format_duration(65.2) == "1m 5.2s"

    def test_make_excerpt(self):
        from src.utils import make_excerpt
        assert make_excerpt(None) == ""
        assert make_excerpt("a\n   b") == "a b"
        assert make_excerpt("x" * 200, limit=10) == "x" * 10 + "..."


class TestValidators:
    def test_is_valid_dimension(self):
        from src.utils import is_valid_dimension
        assert is_valid_dimension(2) is True
        assert is_valid_dimension(0) is False
        assert is_valid_dimension(True) is False
        assert is_valid_dimension(2.0) is False
        assert is_valid_dimension(0, minimum=0) is True


# ==================== 日志过滤 ====================
class TestArrayAbbreviation:
    def test_long_array_shortened(self):
        from src.utils import abbreviate
        text = "witness " + str(list(range(100)))
        out = abbreviate(text, limit=80)
        assert out.startswith("witness [0, 1, 2")
        assert out.endswith("<100 numbers>")

    def test_short_array_kept(self):
        from src.utils import abbreviate
        assert abbreviate("Q1=[0.5, 0.25]") == "Q1=[0.5, 0.25]"
        assert abbreviate("") == ""

    def test_filter_rewrites_record(self):
        from src.utils import ArrayAbbreviationFilter
        record = logging.LogRecord("preserver", logging.INFO, __file__, 1, "images %s", (list(range(200)),), None)
        assert ArrayAbbreviationFilter(limit=40).filter(record) is True
        assert "<200 numbers>" in record.getMessage()
        assert record.args == ()


# ==================== 配置 ====================
class TestConfig:
    def test_env_float(self, monkeypatch):
        import config
        monkeypatch.setenv("PRESERVER_TEST_VALUE", "2.5")
        assert config._env_float("PRESERVER_TEST_VALUE", 1.0) == 2.5
        monkeypatch.setenv("PRESERVER_TEST_VALUE", "  ")
        assert config._env_float("PRESERVER_TEST_VALUE", 1.0) == 1.0
        monkeypatch.setenv("PRESERVER_TEST_VALUE", "tiny")
        with pytest.raises(ValueError):
            config._env_float("PRESERVER_TEST_VALUE", 1.0)

    def test_env_int(self, monkeypatch):
        import config
        monkeypatch.setenv("PRESERVER_TEST_VALUE", "12")
        assert config._env_int("PRESERVER_TEST_VALUE", 1) == 12
        monkeypatch.setenv("PRESERVER_TEST_VALUE", "1.5")
        with pytest.raises(ValueError):
            config._env_int("PRESERVER_TEST_VALUE", 1)

    def test_strtobool(self):
        import config
        assert config._strtobool("Yes") is True
        assert config._strtobool("off") is False
        assert config._strtobool(None, default=True) is True

    def test_normalize_log_level(self):
        import config
        assert config.normalize_log_level(" info ") == "INFO"
        with pytest.raises(ValueError):
            config.normalize_log_level("TRACE")

    def test_environment_overrides(self, monkeypatch):
        import config
        monkeypatch.setenv("PRESERVER_RESIDUAL", "1e-6")
        monkeypatch.setenv("PRESERVER_FUZZ_WORKERS", "4")
        try:
            reloaded = importlib.reload(config)
            assert reloaded.RESIDUAL == 1e-6
            assert reloaded.FUZZ_WORKERS == 4
        finally:
            monkeypatch.delenv("PRESERVER_RESIDUAL")
            monkeypatch.delenv("PRESERVER_FUZZ_WORKERS")
            importlib.reload(config)


# ==================== 日志 ====================
class TestSetupLogging:
    def test_file_handler(self, tmp_path, monkeypatch):
        import app
        monkeypatch.setattr(app.setup_logging, "_configured", False, raising=False)
        logger = app.setup_logging(log_dir=str(tmp_path), level="INFO")
        try:
            logger.info("decompose done")
            for handler in logger.handlers:
                handler.flush()
            assert "decompose done" in (tmp_path / "preserver.log").read_text(encoding="utf-8")
            handlers = list(logger.handlers)
            assert app.setup_logging(log_dir=str(tmp_path)) is logger
            assert logger.handlers == handlers
        finally:
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()
            logger.propagate = True
            logger.setLevel(logging.NOTSET)
