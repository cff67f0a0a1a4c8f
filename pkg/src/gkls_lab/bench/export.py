"""CSV and JSON writers for benchmark outputs.

Every file is written atomically with floats at 17 significant digits, so
an unchanged experiment rewrites byte-identical files.
"""

from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..storage import csv_text, format_float, write_text_atomic
from .convergence import ConvergenceTable
from .ecdf import EcdfCurve
from .params import ParamRow
from .targets import TargetLadder
from .trace import RunTrace, first_hits


class RunRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    problem: str
    optimizer: str
    repetition: int
    seed: int
    evaluations: int
    budget: int
    final_error: Optional[float]
    targets_hit: int
    trace_file: str


class FailureRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    problem: str
    optimizer: str
    repetition: int
    error: str


class RunSummary(BaseModel):
    """Per (suite, optimizer) record of what ran, what failed and how far runs got."""

    model_config = ConfigDict(extra="forbid")

    suite: str
    optimizer: str
    budget: int
    stop_error: float
    runs: list[RunRecord]
    failures: list[FailureRecord]
    ecdf_terminal: Optional[float]


def trace_file_name(problem: str, repetition: int) -> str:
    return f"{problem}_r{repetition}.csv"


def run_record(trace: RunTrace, repetition: int, ladder: TargetLadder) -> RunRecord:
    hits = sum(1 for _, hit in first_hits(trace, ladder) if hit is not None)
    return RunRecord(
        problem=trace.problem,
        optimizer=trace.optimizer,
        repetition=repetition,
        seed=trace.seed,
        evaluations=trace.used,
        budget=trace.budget,
        final_error=trace.final_error if np.isfinite(trace.final_error) else None,
        targets_hit=hits,
        trace_file=trace_file_name(trace.problem, repetition),
    )


def write_curve(x: np.ndarray, y: np.ndarray, path: Path) -> None:
    """Two-column ``x,y`` curve."""
    rows = [(format_float(float(a)), format_float(float(b))) for a, b in zip(x, y)]
    write_text_atomic(path, csv_text(["x", "y"], rows))


def write_ecdf(curve: EcdfCurve, path: Path) -> None:
    write_curve(curve.x, curve.y, path)


def write_convergence(table: ConvergenceTable, directory: Path) -> None:
    """Mean and median curves, plus every trace's curve in long form."""
    write_curve(table.grid, table.mean, directory / "convergence_mean.csv")
    write_curve(table.grid, table.median, directory / "convergence_median.csv")
    rows = [
        (label, format_float(float(x)), format_float(float(y)))
        for label, curve in zip(table.labels, table.per_trace)
        for x, y in zip(table.grid, curve)
    ]
    write_text_atomic(directory / "convergence_runs.csv", csv_text(["run", "x", "y"], rows))


def write_param_table(problems: Sequence[str], rows: Sequence[ParamRow], path: Path) -> None:
    body = [
        (
            problem,
            row.fn_type,
            format_float(row.dist_to_vertex),
            format_float(row.global_radius),
            row.num_minima,
            format_float(row.best_error),
        )
        for problem, row in zip(problems, rows)
    ]
    write_text_atomic(path, csv_text(["problem", "type", "d", "r", "h", "best_error"], body))


def write_summary(summary: RunSummary, path: Path) -> None:
    write_text_atomic(path, summary.model_dump_json(indent=2) + "\n")


def read_summary(path: Path) -> RunSummary:
    return RunSummary.model_validate_json(path.read_text(encoding="utf-8"))
