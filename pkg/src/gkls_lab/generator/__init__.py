"""GKLS-style test functions with exactly known minima."""

from .construction import PlacementFailure, generate_problem, problem_seed
from .distortion import OutOfDomain, Unsupported, evaluate, evaluate_gradient, evaluate_many, locate
from .export import write_minima_stats
from .manifest import ProblemManifest, dump_problem, load_problem, parse_problem, save_problem
from .models import FunctionType, GklsProblem, GklsSpec, InvalidSpec, MinimaStats, Minimizer
from .oracle import known_minima, local_minima_stats

__all__ = [
    "FunctionType",
    "GklsSpec",
    "GklsProblem",
    "Minimizer",
    "MinimaStats",
    "InvalidSpec",
    "PlacementFailure",
    "OutOfDomain",
    "Unsupported",
    "generate_problem",
    "problem_seed",
    "evaluate",
    "evaluate_many",
    "evaluate_gradient",
    "locate",
    "known_minima",
    "local_minima_stats",
    "write_minima_stats",
    "ProblemManifest",
    "dump_problem",
    "parse_problem",
    "save_problem",
    "load_problem",
]
