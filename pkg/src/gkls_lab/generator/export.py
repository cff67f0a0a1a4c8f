"""CSV exports of minimizer-value statistics."""

from pathlib import Path
from typing import Sequence

from ..storage import csv_text, format_float, write_text_atomic
from .models import MinimaStats

MINIMA_HISTOGRAM_FILE = "minima_histogram.csv"
NEGATIVE_COUNTS_FILE = "minima_negative_counts.csv"
NEGATIVE_VALUES_FILE = "minima_negative_values.csv"


def write_minima_stats(stats: MinimaStats, problems: Sequence[str], directory: Path) -> None:
    """
    Write the value histogram and both scatters of ``stats`` below ``directory``.

    Files:
        minima_histogram.csv: bin centre and relative frequency (``x,y``)
        minima_negative_counts.csv: per problem, h and the number of minima below 0
        minima_negative_values.csv: h and value of every minimum below 0

    Args:
        stats: Output of ``local_minima_stats``
        problems: Problem ids, in the order the stats were computed
        directory: Destination directory

    Raises:
        ValueError: If ``problems`` and the stats disagree in length
    """
    if len(problems) != len(stats.count_scatter):
        raise ValueError(f"{len(problems)} problem ids for stats over {len(stats.count_scatter)} problems")
    edges = stats.bin_edges
    centres = (edges[:-1] + edges[1:]) / 2.0
    write_text_atomic(
        directory / MINIMA_HISTOGRAM_FILE,
        csv_text(["x", "y"], [[format_float(x), format_float(y)] for x, y in zip(centres, stats.frequencies)]),
    )
    write_text_atomic(
        directory / NEGATIVE_COUNTS_FILE,
        csv_text(["problem", "h", "count"], [[p, h, c] for p, (h, c) in zip(problems, stats.count_scatter)]),
    )
    write_text_atomic(
        directory / NEGATIVE_VALUES_FILE,
        csv_text(["h", "value"], [[h, format_float(v)] for h, v in stats.negative_value_scatter]),
    )
