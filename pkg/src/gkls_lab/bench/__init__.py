"""Benchmark protocol: target ladder, run traces, runtime distributions and aggregates.

The batch runner lives in ``gkls_lab.bench.runner``; it depends on the
optimizers, which in turn build on the trace types exported here.
"""

from .convergence import ConvergenceTable, MixedBudgets, convergence_aggregate
from .ecdf import EcdfCurve, ecdf, ecdf_grid
from .params import LengthMismatch, ParamRow, param_dependence
from .targets import TargetLadder, make_targets
from .trace import RunTrace, TraceFormatError, dump_trace, first_hits, hit_evaluations, read_trace, write_trace

__all__ = [
    "TargetLadder",
    "make_targets",
    "RunTrace",
    "TraceFormatError",
    "first_hits",
    "hit_evaluations",
    "dump_trace",
    "write_trace",
    "read_trace",
    "EcdfCurve",
    "ecdf",
    "ecdf_grid",
    "ConvergenceTable",
    "MixedBudgets",
    "convergence_aggregate",
    "ParamRow",
    "LengthMismatch",
    "param_dependence",
]
