"""Context variable tagging log records with the run they belong to."""

import logging
from contextvars import ContextVar
from typing import Optional

# Label of the unit of work executing in the current thread, e.g.
# "mod5/0007/de_lpr/1". Worker threads set it before running.
current_run: ContextVar[Optional[str]] = ContextVar("current_run", default=None)


def get_current_run() -> Optional[str]:
    """Get the run label for the current context."""
    return current_run.get()


def set_current_run(label: str) -> None:
    """Set the run label for the current context."""
    current_run.set(label)


def clear_current_run() -> None:
    """Clear the run label for the current context."""
    current_run.set(None)


class RunContextFilter(logging.Filter):
    """Injects the current run label as ``record.run`` ("-" when unset)."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run = get_current_run() or "-"
        return True
