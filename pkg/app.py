#!/usr/bin/env python3
"""不交保持映射分析工具 - 命令行入口"""

import os
import sys

# ==================== 日志系统 ====================
import logging
from logging.handlers import RotatingFileHandler

from config import LOG_DIR, LOG_LEVEL
from src.utils.log_filters import ArrayAbbreviationFilter

logger = logging.getLogger("preserver")

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def setup_logging(log_dir=LOG_DIR, level=LOG_LEVEL):
    """
    给 "preserver" logger 挂上 stderr 与（可选的）滚动文件 handler

    重复调用不会叠加 handler。标准输出只留给结果 JSON。
    """
    if getattr(setup_logging, "_configured", False):
        return logger
    logger.setLevel(level)
    logger.propagate = False
    formatter = logging.Formatter(LOG_FORMAT)
    _abbreviation_filter = ArrayAbbreviationFilter()

    _stream_handler = logging.StreamHandler(sys.stderr)
    _stream_handler.setFormatter(formatter)
    _stream_handler.addFilter(_abbreviation_filter)
    logger.addHandler(_stream_handler)

    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        fh = RotatingFileHandler(
            os.path.join(log_dir, "preserver.log"),
            maxBytes=10 * 1024 * 1024,
            backupCount=30,
            encoding="utf-8",
        )
        fh.setFormatter(formatter)
        fh.addFilter(_abbreviation_filter)
        logger.addHandler(fh)

    setup_logging._configured = True
    return logger


def main(argv=None):
    setup_logging()
    from src.cli import cli

    cli.main(args=argv, prog_name="preserver")


if __name__ == "__main__":
    main()
