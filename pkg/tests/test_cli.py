import csv
import json

import numpy as np
import pytest

from gkls_lab.cli import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_PARTIAL,
    ExperimentConfig,
    build_arg_parser,
    config_overrides,
    dump_config,
    resolve_config,
)
from gkls_lab.ela import FEATURE_NAMES
from gkls_lab.main import main
from gkls_lab.optim import OptimizerParams, registry


def _rows(path):
    with path.open(newline="") as handle:
        return list(csv.reader(handle))


@pytest.fixture
def out(tmp_path):
    return tmp_path / "out"


def _generate(out, *selection):
    return main(["generate", *selection, "--out", str(out)])


# configuration


def test_flags_become_overrides():
    args = build_arg_parser().parse_args(["bench", "--class", "7", "--budget-mult", "200", "--threads", "2"])
    assert args.command == "bench"
    assert config_overrides(args) == {"class_id": 7, "budget_multiplier": 200, "threads": 2}


def test_flags_win_over_the_config_file(tmp_path):
    path = tmp_path / "experiment.env"
    path.write_text("BUDGET_MULTIPLIER=500\nOPTIMIZERS=de_lpr,direct_lite\nseed=3\nSUITE_SIZE=\n")
    config = resolve_config(path, {"budget_multiplier": 100})
    assert config.budget_multiplier == 100
    assert [choice.name for choice in config.optimizers] == ["de_lpr", "direct_lite"]
    assert config.seed == 3
    assert config.suite_size is None


def test_dumped_config_reloads_identically(tmp_path):
    config = ExperimentConfig(
        difficulty="hard",
        dim=6,
        optimizers=[{"name": "de_lpr", "params": {"memory_size": 4}}],
        imports=[tmp_path / "bbob.csv"],
        stop_error=1e-10,
        ela=True,
    )
    path = tmp_path / "bench.config.env"
    path.write_text(dump_config(config))
    assert resolve_config(path, {}) == config


def test_suite_names():
    assert ExperimentConfig(class_id=3).suite_name() == "class3"
    assert ExperimentConfig(mod=True, dim=10).suite_name() == "mod10"
    assert ExperimentConfig(difficulty="simple", dim=5).suite_name() == "simple5"
    with pytest.raises(ValueError):
        ExperimentConfig(mod=True).suite_name()
    with pytest.raises(ValueError):
        ExperimentConfig().suite_name()


def test_unknown_config_key_is_invalid(tmp_path, out):
    path = tmp_path / "bad.env"
    path.write_text("BUDGET_MULTIPLER=5\n")
    assert main(["generate", "--class", "1", "--config", str(path), "--out", str(out)]) == EXIT_INVALID


def test_conflicting_selection_is_invalid(out):
    assert _generate(out, "--class", "1", "--mod", "--dim", "2") == EXIT_INVALID
    assert not out.exists()


# generate


def test_generate_writes_manifests(out, capsys):
    assert _generate(out, "--class", "2", "--suite-size", "4", "--seed", "9") == EXIT_OK
    suite_dir = out / "suites" / "class2"
    manifest = json.loads((suite_dir / "suite.json").read_text())
    assert manifest["name"] == "class2"
    assert manifest["suite_seed"] == 9
    assert sorted(p.name for p in (suite_dir / "problems").iterdir()) == [f"000{i}.json" for i in range(1, 5)]
    assert (suite_dir / "VERSION").read_text().startswith("gkls-lab ")
    assert "SEED=9" in (suite_dir / "generate.config.env").read_text()
    assert "class2: 4 problems" in capsys.readouterr().out


def test_generate_is_byte_identical(tmp_path):
    for run in ("a", "b"):
        assert _generate(tmp_path / run, "--difficulty", "hard", "--dim", "3", "--suite-size", "3") == EXIT_OK
    for name in ("suite.json", "problems/0001.json", "problems/0003.json"):
        first = (tmp_path / "a" / "suites" / "hard3" / name).read_bytes()
        assert first == (tmp_path / "b" / "suites" / "hard3" / name).read_bytes()


def test_generate_writes_minima_statistics(out):
    assert _generate(out, "--difficulty", "simple", "--dim", "3", "--suite-size", "4") == EXIT_OK
    suite_dir = out / "suites" / "simple3"
    histogram = _rows(suite_dir / "minima_histogram.csv")
    assert histogram[0] == ["x", "y"]
    assert sum(float(row[1]) for row in histogram[1:]) == pytest.approx(1.0)
    counts = _rows(suite_dir / "minima_negative_counts.csv")
    assert counts[0] == ["problem", "h", "count"]
    assert [row[0] for row in counts[1:]] == ["0001", "0002", "0003", "0004"]
    values = _rows(suite_dir / "minima_negative_values.csv")
    assert values[0] == ["h", "value"]
    assert len(values) - 1 == sum(int(row[2]) for row in counts[1:])
    assert all(float(row[1]) < 0.0 for row in values[1:])


# bench and report


def _bench(out, *extra):
    return main(
        ["bench", "--class", "1", "--budget-mult", "50", "--optimizers", "random_search,direct_lite", "--out", str(out)]
        + list(extra)
    )


def test_bench_needs_a_generated_suite(out):
    assert _bench(out) == EXIT_INVALID


def test_bench_outputs(out):
    assert _generate(out, "--class", "1", "--suite-size", "6") == EXIT_OK
    assert _bench(out) == EXIT_OK
    for optimizer in ("random_search", "direct_lite"):
        directory = out / "bench" / "class1" / optimizer
        summary = json.loads((directory / "summary.json").read_text())
        assert summary["budget"] == 100
        assert len(summary["runs"]) == 6
        assert summary["failures"] == []
        assert 0.0 <= summary["ecdf_terminal"] <= 1.0
        ecdf_rows = _rows(directory / "ecdf.csv")
        assert ecdf_rows[0] == ["x", "y"]
        assert float(ecdf_rows[-1][0]) == 100.0
        trace = _rows(directory / "traces" / "0001_r1.csv")
        assert trace[0] == ["problem", "optimizer", "seed", "eval", "best_error"]
        assert all(int(row[3]) <= 100 for row in trace[1:])
        assert (directory / "convergence_median.csv").exists()
        assert not (directory / "params.csv").exists()
    assert (out / "bench" / "class1" / "bench.config.env").exists()


def test_bench_reruns_are_byte_identical(tmp_path):
    files = ("summary.json", "ecdf.csv", "convergence_mean.csv", "traces/0002_r1.csv")
    contents = []
    for run in ("a", "b"):
        out = tmp_path / run
        assert _generate(out, "--class", "1", "--suite-size", "3") == EXIT_OK
        assert _bench(out, "--threads", "1" if run == "a" else "3") == EXIT_OK
        contents.append([(out / "bench" / "class1" / "random_search" / f).read_bytes() for f in files])
    assert contents[0] == contents[1]


def test_report_rebuilds_from_traces(out):
    assert _generate(out, "--class", "1", "--suite-size", "3") == EXIT_OK
    assert _bench(out) == EXIT_OK
    directory = out / "bench" / "class1" / "direct_lite"
    ecdf_before = (directory / "ecdf.csv").read_bytes()
    summary_before = (directory / "summary.json").read_bytes()
    (directory / "ecdf.csv").unlink()
    assert main(["report", "--out", str(out)]) == EXIT_OK
    assert (directory / "ecdf.csv").read_bytes() == ecdf_before
    assert (directory / "summary.json").read_bytes() == summary_before


def test_mod_suite_gets_a_parameter_table(out):
    assert _generate(out, "--mod", "--dim", "10", "--suite-size", "3", "--seed", "2") == EXIT_OK
    assert main(["bench", "--mod", "--dim", "10", "--budget-mult", "5", "--seed", "2", "--out", str(out)]) == EXIT_OK
    rows = _rows(out / "bench" / "mod10" / "random_search" / "params.csv")
    assert rows[0] == ["problem", "type", "d", "r", "h", "best_error"]
    assert [row[0] for row in rows[1:]] == ["0001", "0002", "0003"]
    assert all(row[1] in ("D", "ND") and 10 <= int(row[4]) <= 1000 for row in rows[1:])


def test_failed_runs_give_a_partial_exit_code(out, monkeypatch):
    def explode(box, rng, params):
        raise ArithmeticError("diverged")

    monkeypatch.setitem(
        registry._REGISTRY, "broken", registry.RegisteredOptimizer("broken", OptimizerParams, explode, False)
    )
    assert _generate(out, "--class", "1", "--suite-size", "2") == EXIT_OK
    code = main(["bench", "--class", "1", "--budget-mult", "10", "--optimizers", "broken", "--out", str(out)])
    assert code == EXIT_PARTIAL
    summary = json.loads((out / "bench" / "class1" / "broken" / "summary.json").read_text())
    assert [f["problem"] for f in summary["failures"]] == ["0001", "0002"]
    assert summary["ecdf_terminal"] is None


def test_unknown_optimizer_is_invalid(out):
    assert _generate(out, "--class", "1", "--suite-size", "2") == EXIT_OK
    assert main(["bench", "--class", "1", "--optimizers", "simplex", "--out", str(out)]) == EXIT_INVALID


# ela


def test_ela_needs_something_to_analyse(out):
    assert main(["ela", "--out", str(out)]) == EXIT_INVALID


def test_ela_pipeline(out, tmp_path):
    assert _generate(out, "--class", "1", "--suite-size", "12") == EXIT_OK
    assert main(["ela", "--class", "1", "--sample-mult", "30", "--out", str(out)]) == EXIT_OK
    ela_dir = out / "ela"
    features = _rows(ela_dir / "features" / "class1.csv")
    assert features[0] == ["suite", "problem", *FEATURE_NAMES]
    assert len(features) == 13

    normalized = _rows(ela_dir / "normalized.csv")
    values = np.array([[float(v) for v in row[2:]] for row in normalized[1:]])
    assert values.min() >= 0.0 and values.max() <= 1.0

    report = _rows(ela_dir / "pca_report.csv")
    assert float(report[-1][2]) == 1.0
    embedding = _rows(ela_dir / "embedding.csv")
    assert embedding[0] == ["suite", "problem", "x", "y"]
    assert len(embedding) == 13
    first_embedding = (ela_dir / "embedding.csv").read_bytes()

    # external rows join the stored GKLS features
    rng = np.random.default_rng(0)
    external = tmp_path / "bbob.csv"
    lines = [",".join(["suite", "problem", *FEATURE_NAMES])]
    for i in range(1, 25):
        lines.append(",".join(["BBOB", f"f{i}", *map(repr, rng.uniform(size=len(FEATURE_NAMES)).tolist())]))
    external.write_text("\n".join(lines) + "\n")
    assert main(["ela", "--import", str(external), "--out", str(out)]) == EXIT_OK
    embedding = _rows(ela_dir / "embedding.csv")
    assert len(embedding) == 37
    assert {row[0] for row in embedding[1:]} == {"class1", "BBOB"}
    assert first_embedding != (ela_dir / "embedding.csv").read_bytes()


def test_ela_is_byte_identical(tmp_path):
    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        assert _generate(out, "--class", "2", "--suite-size", "10") == EXIT_OK
        threads = "1" if run == "a" else "4"
        assert main(["ela", "--class", "2", "--sample-mult", "30", "--threads", threads, "--out", str(out)]) == EXIT_OK
        outputs.append([(out / "ela" / name).read_bytes() for name in ("feature_matrix.csv", "embedding.csv")])
    assert outputs[0] == outputs[1]


@pytest.mark.slow
def test_class7_smoke_scale(out):
    assert _generate(out, "--class", "7") == EXIT_OK
    assert main(["bench", "--class", "7", "--budget-mult", "200", "--out", str(out)]) == EXIT_OK
    summary = json.loads((out / "bench" / "class7" / "random_search" / "summary.json").read_text())
    assert len(summary["runs"]) == 100
    assert 0.0 <= summary["ecdf_terminal"] <= 1.0


@pytest.mark.slow
def test_simple10_runs_plateau_below_the_vertex(out):
    assert _generate(out, "--difficulty", "simple", "--dim", "10", "--suite-size", "20") == EXIT_OK
    bench = ["bench", "--difficulty", "simple", "--dim", "10", "--budget-mult", "1000"]
    assert main([*bench, "--optimizers", "random_search,de_lpr", "--out", str(out)]) == EXIT_OK
    for optimizer in ("random_search", "de_lpr"):
        summary = json.loads((out / "bench" / "simple10" / optimizer / "summary.json").read_text())
        assert summary["budget"] == 10_000
        assert len(summary["runs"]) == 20
        # almost only the targets above the vertex value are reached
        assert 0.18 <= summary["ecdf_terminal"] <= 0.25


@pytest.mark.slow
def test_simple10_feature_bands(out):
    assert _generate(out, "--difficulty", "simple", "--dim", "10", "--suite-size", "30") == EXIT_OK
    assert main(["ela", "--difficulty", "simple", "--dim", "10", "--out", str(out)]) == EXIT_OK
    rows = _rows(out / "ela" / "features" / "simple10.csv")
    header, body = rows[0], rows[1:]
    assert len(body) == 30
    column = {name: np.array([float(row[header.index(name)]) for row in body]) for name in header[2:]}

    assert np.all(column["ela_meta.quad_simple.adj_r2"] >= 0.99)
    assert set(column["ela_distr.number_of_peaks"].tolist()) <= {1.0, 2.0}
    assert np.mean(np.abs(column["pca.expl_var.cor_init"] - 9 / 11) <= 1e-12) >= 0.9
    assert np.all((column["nbc.nb_fitness.cor"] >= -0.50) & (column["nbc.nb_fitness.cor"] <= -0.30))


def _output_tree(root):
    """Every file below ``root`` by relative path, with the OUT line of config files dropped."""
    tree = {}
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        content = path.read_bytes()
        if path.name.endswith(".config.env"):
            content = b"".join(line for line in content.splitlines(True) if not line.startswith(b"OUT="))
        tree[path.relative_to(root).as_posix()] = content
    return tree


@pytest.mark.slow
def test_mod5_pipeline_is_byte_identical(tmp_path):
    trees = []
    for run in ("a", "b"):
        out = str(tmp_path / run)
        assert main(["generate", "--mod", "--dim", "5", "--seed", "3", "--out", out]) == EXIT_OK
        assert main(["bench", "--mod", "--dim", "5", "--seed", "3", "--budget-mult", "5", "--out", out]) == EXIT_OK
        assert main(["ela", "--mod", "--dim", "5", "--seed", "3", "--out", out]) == EXIT_OK
        trees.append(_output_tree(tmp_path / run))
    assert sorted(trees[0]) == sorted(trees[1])
    assert "suites/mod5/minima_histogram.csv" in trees[0]
    assert "ela/embedding.csv" in trees[0]
    for name, content in trees[0].items():
        assert content == trees[1][name], name
