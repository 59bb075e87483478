"""Logging setup: ``[TAG] message`` lines on stderr.

TAG is the upper-cased last component of the logger name, so
``quiver_cells.flows`` logs as ``[FLOWS] ...``.
"""
from __future__ import annotations

import logging
import sys
from typing import Optional

from quiver_cells import config

_configured = False


class TagFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        tag = record.name.rsplit(".", 1)[-1].upper()
        if record.levelno >= logging.WARNING:
            tag = f"{tag}:{record.levelname}"
        return f"[{tag}] {record.getMessage()}"


def configure_logging(level: Optional[str] = None) -> None:
    """Install the stderr handler on the package logger (idempotent)."""
    global _configured
    root = logging.getLogger("quiver_cells")
    root.setLevel((level or config.LOG_LEVEL).upper())
    if _configured:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(TagFormatter())
    root.addHandler(handler)
    root.propagate = False
    _configured = True


def get_logger(name: str) -> logging.Logger:
    """Return a package logger; ``name`` is usually ``__name__``."""
    if not name.startswith("quiver_cells"):
        name = f"quiver_cells.{name}"
    return logging.getLogger(name)
