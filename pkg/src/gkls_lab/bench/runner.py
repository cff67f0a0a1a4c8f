"""Batch execution of optimizer runs over a suite."""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from ..generator import GklsProblem
from ..optim import BlackBox, OptimizerConfig, run_optimizer, validate_params
from ..rng import derive_seed
from ..run_context import clear_current_run, set_current_run
from ..suites import problem_id
from .trace import RunTrace

logger = logging.getLogger(__name__)


def run_seed(master_seed: int, suite: str, problem_index: int, optimizer: str, repetition: int) -> int:
    return derive_seed("gkls-run", master_seed, suite, problem_index, optimizer, repetition)


@dataclass(frozen=True)
class RunFailure:
    problem: str
    optimizer: str
    repetition: int
    error: str


@dataclass(frozen=True)
class FinishedRun:
    repetition: int
    trace: RunTrace


@dataclass
class BatchResult:
    """Finished runs sorted by (optimizer, problem, repetition) plus the failed runs."""

    suite: str
    budget: int
    runs: list[FinishedRun] = field(default_factory=list)
    failures: list[RunFailure] = field(default_factory=list)

    @property
    def traces(self) -> list[RunTrace]:
        return [run.trace for run in self.runs]

    def runs_for(self, optimizer: str) -> list[FinishedRun]:
        return [run for run in self.runs if run.trace.optimizer == optimizer]

    def failures_for(self, optimizer: str) -> list[RunFailure]:
        return [failure for failure in self.failures if failure.optimizer == optimizer]


class RunLedger:
    """Thread-safe collector of finished and failed runs."""

    def __init__(self):
        self._runs: dict[tuple[str, str, int], FinishedRun] = {}
        self._failures: dict[tuple[str, str, int], RunFailure] = {}
        self._lock = threading.Lock()

    def record(self, key: tuple[str, str, int], trace: RunTrace) -> None:
        with self._lock:
            self._runs[key] = FinishedRun(repetition=key[2], trace=trace)

    def fail(self, key: tuple[str, str, int], failure: RunFailure) -> None:
        with self._lock:
            self._failures[key] = failure

    def sorted_runs(self) -> list[FinishedRun]:
        with self._lock:
            return [self._runs[key] for key in sorted(self._runs, key=lambda k: (k[1], k[0], k[2]))]

    def sorted_failures(self) -> list[RunFailure]:
        with self._lock:
            return [self._failures[key] for key in sorted(self._failures, key=lambda k: (k[1], k[0], k[2]))]


@dataclass(frozen=True)
class _RunRequest:
    problem: GklsProblem
    config: OptimizerConfig
    repetition: int


def _execute(suite: str, request: _RunRequest, budget: int, stop_error: float, ledger: RunLedger) -> None:
    pid = problem_id(request.problem.problem_index)
    key = (pid, request.config.name, request.repetition)
    set_current_run(f"{suite}/{pid}/{request.config.name}/{request.repetition}")
    try:
        box = BlackBox.for_problem(request.problem, label=pid)
        trace = run_optimizer(request.config, box, budget, stop_error)
        ledger.record(key, trace)
    except Exception as e:
        message = str(e) or type(e).__name__
        logger.error(f"Run failed: {message}")
        ledger.fail(key, RunFailure(pid, request.config.name, request.repetition, message))
    finally:
        clear_current_run()


def run_batch(
    suite: str,
    problems: Sequence[GklsProblem],
    optimizers: Sequence[tuple[str, dict[str, Any]]],
    budget: int,
    stop_error: float,
    master_seed: int,
    repetitions: int = 1,
    threads: int = 1,
) -> BatchResult:
    """
    Run every optimizer on every problem ``repetitions`` times.

    Args:
        suite: Suite name, mixed into the run seeds
        problems: Problems of the suite
        optimizers: (name, parameter map) pairs
        budget: Evaluations per run
        stop_error: Error at which a run counts as solved
        master_seed: Experiment seed
        repetitions: Runs per (problem, optimizer)
        threads: Worker threads; results do not depend on it

    Returns:
        BatchResult; failed runs are listed rather than raised

    Raises:
        UnknownOptimizer, InvalidParameters: Before any run starts
    """
    for name, params in optimizers:
        validate_params(name, params)

    requests: list[_RunRequest] = []
    for name, params in optimizers:
        for problem in problems:
            for repetition in range(1, repetitions + 1):
                seed = run_seed(master_seed, suite, problem.problem_index, name, repetition)
                config = OptimizerConfig(name=name, seed=seed, params=params)
                requests.append(_RunRequest(problem, config, repetition))

    logger.info(f"Running {len(requests)} runs on suite {suite} with budget {budget} ({threads} threads)")
    ledger = RunLedger()
    if threads <= 1:
        for request in requests:
            _execute(suite, request, budget, stop_error, ledger)
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            futures = [executor.submit(_execute, suite, r, budget, stop_error, ledger) for r in requests]
            for future in futures:
                future.result()

    result = BatchResult(suite=suite, budget=budget, runs=ledger.sorted_runs(), failures=ledger.sorted_failures())
    logger.info(f"Suite {suite}: {len(result.runs)} runs finished, {len(result.failures)} failed")
    return result


def replay(
    trace: RunTrace, problem: GklsProblem, stop_error: float, params: Optional[dict[str, Any]] = None
) -> RunTrace:
    """Re-run the optimizer of ``trace`` with its recorded seed and budget."""
    config = OptimizerConfig(name=trace.optimizer, seed=trace.seed, params=params or {})
    box = BlackBox.for_problem(problem, label=trace.problem)
    return run_optimizer(config, box, trace.budget, stop_error)
