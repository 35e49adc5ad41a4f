"""
Logging setup for the spiral surrogate toolkit.

Modules log through ``logging.getLogger(__name__)``; entry points call
``setup_logging`` once to attach handlers built from LOGGING_CONFIG.
"""

import logging
from pathlib import Path
from typing import Optional, Union

from src.config import LOGGING_CONFIG

_PACKAGE_LOGGER = 'src'


def setup_logging(
    level: Optional[str] = None,
    log_file: Optional[Union[str, Path]] = None,
) -> logging.Logger:
    """
    Configure the package logger.

    Args:
        level: Log level name (default from LOGGING_CONFIG)
        log_file: Optional file to mirror console output into

    Returns:
        The configured package logger
    """
    logger = logging.getLogger(_PACKAGE_LOGGER)
    logger.setLevel(level or LOGGING_CONFIG['level'])

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOGGING_CONFIG['format'])

    console = logging.StreamHandler()
    console.setFormatter(formatter)
    logger.addHandler(console)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger
