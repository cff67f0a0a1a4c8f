"""Batch command line: generate, bench, ela and report."""

from .commands import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_PARTIAL,
    MissingSuite,
    NothingToAnalyse,
    cmd_bench,
    cmd_ela,
    cmd_generate,
    cmd_report,
)
from .experiment import ExperimentConfig, OptimizerChoice, dump_config, load_config_file, resolve_config
from .parser import build_arg_parser, config_overrides

COMMAND_HANDLERS = {
    "generate": cmd_generate,
    "bench": cmd_bench,
    "ela": cmd_ela,
    "report": cmd_report,
}

__all__ = [
    "EXIT_OK",
    "EXIT_INVALID",
    "EXIT_PARTIAL",
    "COMMAND_HANDLERS",
    "MissingSuite",
    "NothingToAnalyse",
    "ExperimentConfig",
    "OptimizerChoice",
    "build_arg_parser",
    "config_overrides",
    "dump_config",
    "load_config_file",
    "resolve_config",
    "cmd_generate",
    "cmd_bench",
    "cmd_ela",
    "cmd_report",
]
