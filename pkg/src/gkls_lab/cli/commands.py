"""The four batch commands: generate, bench, ela and report.

Each command takes a resolved ExperimentConfig, writes only below
``config.out`` and returns a process exit code.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ..bench import (
    convergence_aggregate,
    ecdf,
    ecdf_grid,
    hit_evaluations,
    make_targets,
    param_dependence,
    read_trace,
    write_trace,
)
from ..bench.export import (
    FailureRecord,
    RunSummary,
    read_summary,
    run_record,
    trace_file_name,
    write_convergence,
    write_ecdf,
    write_param_table,
    write_summary,
)
from ..bench.runner import FinishedRun, RunFailure, run_batch
from ..ela import (
    FeatureMatrix,
    FeatureVector,
    clean_features,
    compute_features,
    draw_sample,
    export_features,
    import_features,
    merge,
    normalize,
    pca_fit,
    sample_seed,
    tsne_embed,
    write_dropped_report,
    write_embedding,
    write_pca_report,
)
from ..exceptions import LabError
from ..generator import GklsProblem, load_problem, local_minima_stats, save_problem, write_minima_stats
from ..rng import derive_seed
from ..run_context import clear_current_run, set_current_run
from ..suites import SuiteManifest, load_suite, materialize, problem_id, save_suite, suite_from_selection
from .experiment import ExperimentConfig, write_provenance

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARTIAL = 2

SUITE_FILE = "suite.json"
SUMMARY_FILE = "summary.json"


class MissingSuite(LabError):
    def __init__(self, name: str, directory: Path):
        self.name = name
        self.directory = directory
        super().__init__(f"Suite {name} not found in {directory}; run `gkls-lab generate` first")


class NothingToAnalyse(LabError):
    def __init__(self, directory: Path):
        self.directory = directory
        super().__init__(f"No feature files in {directory} and no --import given")


def _suite_dir(config: ExperimentConfig, name: str) -> Path:
    return config.out / "suites" / name


def _problem_path(directory: Path, index: int) -> Path:
    return directory / "problems" / f"{problem_id(index)}.json"


def load_suite_problems(config: ExperimentConfig, name: str) -> tuple[SuiteManifest, list[GklsProblem]]:
    directory = _suite_dir(config, name)
    if not (directory / SUITE_FILE).exists():
        raise MissingSuite(name, directory)
    manifest = load_suite(directory / SUITE_FILE)
    problems = [load_problem(_problem_path(directory, index)) for index, _ in manifest.numbered_specs()]
    return manifest, problems


# generate


def cmd_generate(config: ExperimentConfig) -> int:
    manifest = suite_from_selection(
        class_id=config.class_id,
        dim=config.dim,
        difficulty=config.difficulty,
        mod=config.mod,
        suite_seed=config.seed,
        count=config.suite_size,
    )
    problems = materialize(manifest, threads=config.threads)

    directory = _suite_dir(config, manifest.name)
    save_suite(manifest, directory / SUITE_FILE)
    for problem in problems:
        save_problem(problem, _problem_path(directory, problem.problem_index))
    if problems:
        stats = local_minima_stats(problems)
        write_minima_stats(stats, [problem_id(p.problem_index) for p in problems], directory)
    write_provenance(config, "generate", directory)

    attempts = np.array([p.placement_attempts for p in problems])
    print(
        f"{manifest.name}: {len(problems)} problems (dim {manifest.dim}) written to {directory}\n"
        f"placement attempts: total {attempts.sum()}, mean {attempts.mean():.1f}, max {attempts.max()}"
    )
    return EXIT_OK


# bench and report


def _best_errors(runs: Sequence[FinishedRun], manifest: SuiteManifest) -> list[float]:
    """Median final error per problem over its finished repetitions (NaN if none finished)."""
    by_problem: dict[str, list[float]] = {}
    for run in runs:
        by_problem.setdefault(run.trace.problem, []).append(run.trace.final_error)
    return [
        float(np.median(by_problem[problem_id(index)])) if problem_id(index) in by_problem else float("nan")
        for index, _ in manifest.numbered_specs()
    ]


def write_reports(
    config: ExperimentConfig,
    manifest: SuiteManifest,
    optimizer: str,
    budget: int,
    stop_error: float,
    runs: Sequence[FinishedRun],
    failures: Sequence[RunFailure],
    directory: Path,
) -> RunSummary:
    """ECDF, convergence, parameter table and summary for one (suite, optimizer)."""
    ladder = make_targets()
    terminal: Optional[float] = None
    if runs and config.targets:
        curve = ecdf([hit_evaluations(run.trace, ladder) for run in runs], budget, config.ecdf_grid_size)
        write_ecdf(curve, directory / "ecdf.csv")
        terminal = curve.terminal
    if runs:
        table = convergence_aggregate([run.trace for run in runs], ecdf_grid(budget, config.ecdf_grid_size))
        write_convergence(table, directory)
    if manifest.name.startswith("mod"):
        numbered = manifest.numbered_specs()
        rows = param_dependence(_best_errors(runs, manifest), [spec.to_spec() for _, spec in numbered])
        write_param_table([problem_id(index) for index, _ in numbered], rows, directory / "params.csv")

    summary = RunSummary(
        suite=manifest.name,
        optimizer=optimizer,
        budget=budget,
        stop_error=stop_error,
        runs=[run_record(run.trace, run.repetition, ladder) for run in runs],
        failures=[
            FailureRecord(problem=f.problem, optimizer=f.optimizer, repetition=f.repetition, error=f.error)
            for f in failures
        ],
        ecdf_terminal=terminal,
    )
    write_summary(summary, directory / SUMMARY_FILE)
    return summary


def cmd_bench(config: ExperimentConfig) -> int:
    name = config.suite_name()
    manifest, problems = load_suite_problems(config, name)
    budget = config.budget_multiplier * manifest.dim
    result = run_batch(
        name,
        problems,
        [(choice.name, choice.params) for choice in config.optimizers],
        budget=budget,
        stop_error=config.stop_error,
        master_seed=config.seed,
        repetitions=config.repetitions,
        threads=config.threads,
    )

    bench_dir = config.out / "bench" / name
    for choice in config.optimizers:
        directory = bench_dir / choice.name
        runs = result.runs_for(choice.name)
        for run in runs:
            write_trace(run.trace, directory / "traces" / trace_file_name(run.trace.problem, run.repetition))
        failures = result.failures_for(choice.name)
        summary = write_reports(config, manifest, choice.name, budget, config.stop_error, runs, failures, directory)
        terminal = "n/a" if summary.ecdf_terminal is None else f"{summary.ecdf_terminal:.4f}"
        print(f"{name}/{choice.name}: {len(summary.runs)} runs, {len(failures)} failed, ECDF terminal {terminal}")
    write_provenance(config, "bench", bench_dir)

    code = EXIT_PARTIAL if result.failures else EXIT_OK
    if config.ela:
        code = max(code, cmd_ela(config))
    return code


def cmd_report(config: ExperimentConfig) -> int:
    """Rebuild ECDF, convergence and summary files from stored traces."""
    bench_root = config.out / "bench"
    if config.has_selection:
        names = [config.suite_name()]
    else:
        names = sorted(p.name for p in bench_root.iterdir() if p.is_dir()) if bench_root.exists() else []

    for name in names:
        manifest_path = _suite_dir(config, name) / SUITE_FILE
        if not manifest_path.exists():
            raise MissingSuite(name, manifest_path.parent)
        manifest = load_suite(manifest_path)
        for summary_path in sorted((bench_root / name).glob(f"*/{SUMMARY_FILE}")):
            directory = summary_path.parent
            old = read_summary(summary_path)
            runs = [
                FinishedRun(
                    repetition=record.repetition,
                    trace=read_trace(directory / "traces" / record.trace_file, record.budget, record.evaluations),
                )
                for record in old.runs
            ]
            failures = [RunFailure(f.problem, f.optimizer, f.repetition, f.error) for f in old.failures]
            summary = write_reports(
                config, manifest, old.optimizer, old.budget, old.stop_error, runs, failures, directory
            )
            print(f"{name}/{summary.optimizer}: report rebuilt from {len(runs)} traces")
        write_provenance(config, "report", bench_root / name)
    return EXIT_OK


# ela


def _problem_features(suite: str, problem: GklsProblem, config: ExperimentConfig) -> FeatureVector:
    pid = problem_id(problem.problem_index)
    set_current_run(f"{suite}/{pid}/ela")
    try:
        sample = draw_sample(
            problem,
            n=config.sample_multiplier * problem.dim,
            seed=sample_seed(config.seed, suite, problem.problem_index),
        )
        return FeatureVector(suite=suite, problem=pid, values=compute_features(sample))
    finally:
        clear_current_run()


def suite_features(config: ExperimentConfig, suite: str, problems: Sequence[GklsProblem]) -> FeatureMatrix:
    logger.info(f"Computing features for {len(problems)} problems of {suite}")
    if config.threads <= 1:
        vectors = [_problem_features(suite, problem, config) for problem in problems]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            vectors = list(executor.map(lambda p: _problem_features(suite, p, config), problems))
    return FeatureMatrix.from_vectors(vectors)


def cmd_ela(config: ExperimentConfig) -> int:
    ela_dir = config.out / "ela"
    features_dir = ela_dir / "features"
    if config.has_selection:
        name = config.suite_name()
        _, problems = load_suite_problems(config, name)
        export_features(suite_features(config, name, problems), features_dir / f"{name}.csv")

    sources = sorted(features_dir.glob("*.csv")) if features_dir.exists() else []
    matrices = [import_features(path) for path in [*sources, *config.imports]]
    if not matrices:
        raise NothingToAnalyse(features_dir)
    combined = reduce(merge, matrices)
    export_features(combined, ela_dir / "feature_matrix.csv")

    cleaned = clean_features(combined, config.corr_threshold)
    export_features(cleaned, ela_dir / "cleaned.csv")
    write_dropped_report(cleaned, ela_dir / "dropped.csv")
    normalized = normalize(cleaned, config.normalization)
    export_features(normalized, ela_dir / "normalized.csv")

    data = normalized.data
    rank = int(np.linalg.matrix_rank(data - data.mean(axis=0)))
    k = min(config.pca_components, rank, len(data) - 1)
    if k < config.pca_components:
        logger.warning(f"Keeping {k} principal components instead of {config.pca_components} (rank {rank})")
    model, coordinates = pca_fit(data, k)
    write_pca_report(model.explained_variance_ratio, ela_dir / "pca_report.csv")
    print(
        f"PCA: {len(data)} rows, {len(cleaned.features)} features, "
        f"first {k} components explain {model.cumulative_ratio:.4%}"
    )

    rows = len(data)
    perplexity = min(config.tsne_perplexity, (rows - 1) / 3 - 1.0)
    if rows < 10 or k < 2 or perplexity <= 0:
        logger.warning(f"Skipping t-SNE for {rows} rows and {k} components")
    else:
        if perplexity < config.tsne_perplexity:
            logger.warning(f"Lowering t-SNE perplexity to {perplexity:.4g} for {rows} rows")
        seed = derive_seed("gkls-ela-tsne", config.seed)
        result = tsne_embed(coordinates, perplexity, config.tsne_iterations, seed=seed)
        write_embedding(normalized, result.embedding, ela_dir / "embedding.csv")

    write_provenance(config, "ela", ela_dir)
    return EXIT_OK
