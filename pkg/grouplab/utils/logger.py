import logging
import sys
from typing import Optional

from grouplab.config import get_settings

ROOT_LOGGER = "grouplab"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _level(name: Optional[str] = None) -> int:
    return getattr(logging, (name or get_settings().log_level).upper())


def setup_logger(name: str) -> logging.Logger:
    """
    Returns a child of the "grouplab" logger. The single handler sits on the
    parent and writes to stderr; stdout is reserved for reports.
    """
    root = logging.getLogger(ROOT_LOGGER)
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.setLevel(_level())
        root.propagate = False
    if name != ROOT_LOGGER and not name.startswith(ROOT_LOGGER + "."):
        name = f"{ROOT_LOGGER}.{name}"
    return logging.getLogger(name)


def set_level(level: str) -> None:
    """Overrides the configured level for every grouplab logger."""
    logging.getLogger(ROOT_LOGGER).setLevel(_level(level))
