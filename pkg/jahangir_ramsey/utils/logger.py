import logging
import os
import sys
from typing import Union

from jahangir_ramsey.core.config import settings

# ANSI escape sequences for colored log level names
RESET = "\x1b[0m"
LEVEL_COLORS = {
    logging.DEBUG: "\x1b[90m",
    logging.INFO: "\x1b[32m",
    logging.WARNING: "\x1b[33m",
    logging.ERROR: "\x1b[31m",
    logging.CRITICAL: "\x1b[41m",
}

LOG_FMT = "%(asctime)s - %(levelname)s - %(message)s (%(name)s)"
DATE_FMT = "%Y-%m-%d %H:%M:%S"
LOG_FILE_NAME = "jahangir_ramsey.log"

# Global variable to track if logging has been configured
_logging_configured = False


class ColoredFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        color = LEVEL_COLORS.get(record.levelno, RESET)
        record.levelname = f"{color}{record.levelname}{RESET}"
        return super().format(record)


def _console_handler(level: int) -> logging.Handler:
    # Standard output carries reports, so logs go to stderr.
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    if handler.stream.isatty():
        formatter: Union[ColoredFormatter, logging.Formatter] = ColoredFormatter(
            LOG_FMT, datefmt=DATE_FMT
        )
    else:
        formatter = logging.Formatter(LOG_FMT, datefmt=DATE_FMT)
    handler.setFormatter(formatter)
    return handler


def _file_handler() -> logging.Handler:
    os.makedirs(settings.log_dir, exist_ok=True)
    handler = logging.FileHandler(os.path.join(settings.log_dir, LOG_FILE_NAME), encoding="utf-8")
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter(LOG_FMT, datefmt=DATE_FMT))
    return handler


def setup_custom_logging() -> None:
    """Setup logging for the command line front end"""
    global _logging_configured

    # Avoid duplicate setup
    if _logging_configured:
        return

    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    log_level = getattr(logging, settings.log_level.upper(), logging.INFO)
    root_logger.setLevel(logging.DEBUG if settings.log_to_file else log_level)
    root_logger.addHandler(_console_handler(log_level))
    if settings.log_to_file:
        root_logger.addHandler(_file_handler())

    # Module loggers created at import time hand over to the root handlers
    for name, existing in logging.Logger.manager.loggerDict.items():
        if name.startswith("jahangir_ramsey.") and isinstance(existing, logging.Logger):
            existing.handlers.clear()
            existing.propagate = True
            existing.setLevel(logging.NOTSET)

    # Pool workers inherit these loggers; keep third-party noise down
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)
    logging.getLogger("asyncio").setLevel(logging.WARNING)

    _logging_configured = True


def get_logger(name: str) -> logging.Logger:
    """Get logger with specified name"""
    logger = logging.getLogger(f"jahangir_ramsey.{name}")

    # Once global logging is configured the root logger's handlers apply
    if _logging_configured:
        return logger

    # Library use without the CLI: attach a basic stderr handler once
    if not logger.handlers:
        logger.setLevel(logging.INFO)
        logger.propagate = False
        logger.addHandler(_console_handler(logging.INFO))

    return logger
