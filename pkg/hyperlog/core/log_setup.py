"""
Logging configuration
"""

import logging
import sys
from typing import Optional

from hyperlog.core.config import LOG_LEVEL

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """Send hyperlog logs to stderr; stdout carries the JSON document"""
    root = logging.getLogger("hyperlog")
    root.setLevel((level or LOG_LEVEL).upper())
    # sys.stderr may have been swapped (or closed) since the last call
    for old in [h for h in root.handlers if getattr(h, "_hyperlog", False)]:
        root.removeHandler(old)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._hyperlog = True
    root.addHandler(handler)
