"""Atomic file output and float formatting shared by every writer."""

import csv
import io
import os
import tempfile
from pathlib import Path
from typing import Sequence


def format_float(value: float) -> str:
    """Render a float at 17 significant digits; NaN becomes ``NA``."""
    if value != value:
        return "NA"
    return f"{value:.17g}"


def csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """Render a header and rows as CSV with ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_text_atomic(path: Path, text: str) -> None:
    """
    Write ``text`` to ``path`` by writing a temporary sibling and renaming it.

    Readers never observe a half-written file, and a crashed worker leaves at
    most a stray temporary file behind.

    Args:
        path: Destination file; parent directories are created
        text: Full file contents
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
