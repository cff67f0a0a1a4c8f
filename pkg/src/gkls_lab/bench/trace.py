"""Run traces: the improvement history of one optimizer run."""

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from ..exceptions import LabError
from ..storage import format_float, write_text_atomic
from .targets import TargetLadder

TRACE_HEADER = ["problem", "optimizer", "seed", "eval", "best_error"]


class TraceFormatError(LabError):
    """Raised when a trace file cannot be parsed."""

    def __init__(self, path: Path, message: str):
        self.path = path
        self.message = message
        super().__init__(f"Malformed trace {path}: {message}")


@dataclass(frozen=True, eq=False)
class RunTrace:
    """
    Best error so far of one run, recorded at every improvement.

    ``evals[k]`` is the 1-based index of the evaluation that produced best
    error ``errors[k]``. Between two improvements the best error is constant.
    """

    problem: str
    optimizer: str
    seed: int
    evals: np.ndarray
    errors: np.ndarray
    used: int
    budget: int

    def __post_init__(self):
        evals = np.asarray(self.evals, dtype=np.int64)
        errors = np.asarray(self.errors, dtype=np.float64)
        if evals.shape != errors.shape or evals.ndim != 1:
            raise ValueError("evals and errors must be 1-D arrays of equal length")
        if np.any(np.diff(evals) <= 0):
            raise ValueError("evaluation indices must be strictly increasing")
        if np.any(np.diff(errors) > 0):
            raise ValueError("best errors must be non-increasing")
        if len(evals) and (evals[0] < 1 or evals[-1] > self.used):
            raise ValueError("improvement indices must lie in 1..used")
        if self.used > self.budget:
            raise ValueError(f"run used {self.used} evaluations with a budget of {self.budget}")
        object.__setattr__(self, "evals", evals)
        object.__setattr__(self, "errors", errors)

    @property
    def final_error(self) -> float:
        return float(self.errors[-1]) if len(self.errors) else float("inf")

    def best_error_at(self, checkpoints: np.ndarray) -> np.ndarray:
        """Best error after each checkpoint's number of evaluations (inf before the first)."""
        checkpoints = np.asarray(checkpoints)
        padded = np.concatenate(([np.inf], self.errors))
        return padded[np.searchsorted(self.evals, checkpoints, side="right")]

    def same_as(self, other: "RunTrace") -> bool:
        return (
            self.problem == other.problem
            and self.optimizer == other.optimizer
            and self.seed == other.seed
            and self.used == other.used
            and self.budget == other.budget
            and np.array_equal(self.evals, other.evals)
            and np.array_equal(self.errors, other.errors)
        )


def first_hits(trace: RunTrace, ladder: TargetLadder) -> list[tuple[float, Optional[int]]]:
    """
    First evaluation at which each target is attained.

    Args:
        trace: A run
        ladder: Error thresholds

    Returns:
        (target, evaluation index) per target, in ladder order; the index is
        None for targets the run never reached
    """
    if len(trace.errors) == 0:
        return [(float(t), None) for t in ladder.errors]
    # errors are non-increasing, so the first index at or below a target is a searchsorted on the negation
    positions = np.searchsorted(-trace.errors, -ladder.errors, side="left")
    out = []
    for target, pos in zip(ladder.errors, positions):
        out.append((float(target), int(trace.evals[pos]) if pos < len(trace.evals) else None))
    return out


def hit_evaluations(trace: RunTrace, ladder: TargetLadder) -> list[Optional[int]]:
    return [hit for _, hit in first_hits(trace, ladder)]


def dump_trace(trace: RunTrace) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for evaluation, error in zip(trace.evals, trace.errors):
        writer.writerow([trace.problem, trace.optimizer, trace.seed, int(evaluation), format_float(float(error))])
    return buffer.getvalue()


def write_trace(trace: RunTrace, path: Path) -> None:
    write_text_atomic(path, dump_trace(trace))


def read_trace(path: Path, budget: int, used: Optional[int] = None) -> RunTrace:
    """
    Load a trace written by ``write_trace``.

    The file holds improvement points only; ``budget`` (and ``used`` when
    known, otherwise the last improvement index) come from the run summary.
    """
    with path.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    if not rows or rows[0] != TRACE_HEADER:
        raise TraceFormatError(path, f"expected header {','.join(TRACE_HEADER)}")
    body = rows[1:]
    if not body:
        raise TraceFormatError(path, "no improvement rows")
    try:
        evals = [int(row[3]) for row in body]
        errors = [float(row[4]) for row in body]
        seed = int(body[0][2])
    except (IndexError, ValueError) as e:
        raise TraceFormatError(path, str(e)) from e
    return RunTrace(
        problem=body[0][0],
        optimizer=body[0][1],
        seed=seed,
        evals=np.array(evals),
        errors=np.array(errors),
        used=used if used is not None else evals[-1],
        budget=budget,
    )
