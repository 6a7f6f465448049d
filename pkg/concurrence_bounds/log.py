"""Logging configuration for concurrence-bounds.

All modules should import logger from here:
    from concurrence_bounds.log import logger

Nothing is emitted until ``configure_logging`` installs a sink; the CLI
does that once per invocation.
"""
import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

# Remove loguru's default stderr handler
logger.remove()

_FILE_FORMAT = ('{time:YYYY-MM-DD HH:mm:ss} | {level:<8} | '
                '{module}:{function}:{line} | {message}')


def configure_logging(level: str = 'WARNING',
                      log_file: Optional[Union[str, Path]] = None) -> None:
    """Install the stderr sink and, outside of tests, an optional file sink."""
    logger.remove()
    logger.add(sys.stderr, level=level.upper(),
               format='<level>{level: <8}</level> | {message}')

    # Skip file sink during tests
    if log_file and 'pytest' not in sys.modules:
        logger.add(
            Path(log_file),
            level='DEBUG',
            rotation='10 MB',
            retention=3,
            format=_FILE_FORMAT,
            encoding='utf-8',
        )


def verbosity_level(verbose: int, default: str = 'WARNING') -> str:
    """Map a count of ``-v`` flags onto a loguru level name."""
    if verbose >= 2:
        return 'DEBUG'
    if verbose == 1:
        return 'INFO'
    return default
