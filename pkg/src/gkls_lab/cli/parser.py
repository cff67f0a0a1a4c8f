"""Command-line argument parsing."""

import argparse
from pathlib import Path
from typing import Any

from .. import __version__
from ..suites import Difficulty

COMMANDS = ("generate", "bench", "ela", "report")

# argparse dest -> ExperimentConfig field
_FIELDS = {
    "class_id": "class_id",
    "dim": "dim",
    "difficulty": "difficulty",
    "mod": "mod",
    "seed": "seed",
    "suite_size": "suite_size",
    "budget_mult": "budget_multiplier",
    "optimizers": "optimizers",
    "out": "out",
    "imports": "imports",
    "threads": "threads",
    "repetitions": "repetitions",
    "sample_mult": "sample_multiplier",
}


def _options() -> argparse.ArgumentParser:
    """Options shared by every command. Unset flags stay None so config-file values apply."""
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--config", type=Path, default=None, help="KEY=VALUE experiment file; flags override it")
    selection = options.add_argument_group("suite selection")
    selection.add_argument("--class", dest="class_id", type=int, default=None, help="Canonical class id (1-8)")
    selection.add_argument("--dim", type=int, default=None, help="Dimension of an extended or mod suite")
    selection.add_argument(
        "--difficulty", choices=[d.value for d in Difficulty], default=None, help="Extended class difficulty"
    )
    selection.add_argument("--mod", action="store_true", default=None, help="Randomized mod class")
    selection.add_argument("--seed", type=int, default=None, help="Master seed (also the suite seed)")
    selection.add_argument("--suite-size", type=int, default=None, help="Override the number of problems")
    options.add_argument("--budget-mult", type=int, default=None, help="Evaluations per dimension per run")
    options.add_argument("--optimizers", default=None, help="Comma-separated optimizer names")
    options.add_argument("--repetitions", type=int, default=None, help="Runs per (problem, optimizer)")
    options.add_argument("--sample-mult", type=int, default=None, help="ELA samples per dimension")
    options.add_argument(
        "--import", dest="imports", type=Path, action="append", default=None, help="External feature CSV (repeatable)"
    )
    options.add_argument("--out", type=Path, default=None, help="Output directory")
    options.add_argument("--threads", type=int, default=None, help="Worker threads")
    options.add_argument("--log-level", default=None, help="Logging level (default from GKLS_LAB_LOG_LEVEL)")
    return options


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkls-lab",
        description="GKLS test-function generation, benchmarking and landscape analysis",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    options = _options()
    helps = {
        "generate": "Materialize a suite and write its manifests",
        "bench": "Run optimizers on a generated suite",
        "ela": "Compute landscape features, clean them and embed the problems",
        "report": "Rebuild summaries, ECDF and convergence files from stored traces",
    }
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[options], help=helps[command])
    return parser


def config_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """ExperimentConfig fields set on the command line."""
    return {field: getattr(args, dest) for dest, field in _FIELDS.items() if getattr(args, dest) is not None}
