# -*- coding: utf-8
"""
Module to handle logging. Importing this module provides the package logger "hyperjet", which logs to stderr with
the level INFO by default, in the format "{time} {level} {file}/{function}:{line}: {message}".

set_logging_level changes the level of the logger and of all its handlers, add_logging_file adds a file handler
with the current level. Once set_logging_level has been called, warnings issued with warnings.warn (for example
SeriesSaturationWarning from the 3F2 summation) go to the same handlers instead of being printed separately.

Uncaught hyperjet errors are logged as a single line without traceback, all other uncaught exceptions with their
traceback.
"""
import sys
import logging
from hyperjet.errors import HyperjetError

logger = logging.getLogger("hyperjet")
logger.setLevel(logging.INFO)
handler = logging.StreamHandler(sys.stderr)
formatter = logging.Formatter("{asctime} {levelname} {filename}/{funcName}:{lineno}: {message}", datefmt='%Y-%m-%d %H:%M:%S', style="{")
handler.setFormatter(formatter)
logger.addHandler(handler)

warnings_logger = logging.getLogger("py.warnings")
warnings_logger.propagate = False


def handle_exception(exc_type, exc_value, exc_traceback):
    if issubclass(exc_type, KeyboardInterrupt):
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return
    if issubclass(exc_type, HyperjetError):
        logger.error(f"{exc_type.__name__} (exit code {exc_type.exit_code}): {exc_value}")
        return
    logger.error("Exception", exc_info=(exc_type, exc_value, exc_traceback))


sys.excepthook = handle_exception


def _share_handlers():
    for h in logger.handlers:
        if h not in warnings_logger.handlers:
            warnings_logger.addHandler(h)


def set_logging_level(level: int):
    """
    Set the logging level of the logger and all its handlers and route warnings to the handlers.
    :param level: the logging level to set
    """
    logger.setLevel(level)
    warnings_logger.setLevel(level)
    for h in logger.handlers:
        h.setLevel(level)
    logging.captureWarnings(True)
    _share_handlers()


def add_logging_file(file: str):
    """
    Add a file handler for the given file with the current logging level.
    :param file: the file to log to
    """
    file_handler = logging.FileHandler(file)
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logger.level)
    logger.addHandler(file_handler)
    if warnings_logger.handlers:
        warnings_logger.addHandler(file_handler)
    logger.debug(f"Logging to {file}, command line: {' '.join(sys.argv)}")
