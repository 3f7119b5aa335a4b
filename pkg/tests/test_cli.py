"""Tests for the command-line experiment runner.

Everything runs in-process through run_experiment / main so the tests
can inspect the report object directly; the end-to-end double-invocation
determinism check lives with the acceptance tests.
"""

import json
import os

import numpy as np
import pytest

from snmfkit.cli import (
    MetricsReport,
    RunConfig,
    _parse_synthetic,
    main,
    run_experiment,
    strip_volatile,
)
from snmfkit.costmodel import flops_admm
from snmfkit.evaluate import SyntheticSpec


def blob_config(tmp_path, **overrides):
    settings = dict(
        k=3,
        synthetic="blobs:n=60",
        solver="both",
        restarts=2,
        seed=0,
        out=str(tmp_path / "out"),
    )
    settings.update(overrides)
    return RunConfig(**settings)


class TestRunConfig:
    def test_requires_exactly_one_source(self):
        with pytest.raises(ValueError, match="exactly one"):
            RunConfig(k=3)
        with pytest.raises(ValueError, match="exactly one"):
            RunConfig(k=3, points_path="a.csv", synthetic="blobs")

    def test_rejects_unknown_solver(self):
        with pytest.raises(ValueError, match="unknown solver"):
            RunConfig(k=3, synthetic="blobs", solver="newton")

    def test_rejects_bad_restarts(self):
        with pytest.raises(ValueError, match="restarts"):
            RunConfig(k=3, synthetic="blobs", restarts=0)


class TestParseSynthetic:
    def test_bare_kind_uses_defaults(self):
        spec = _parse_synthetic("blobs", k=3, seed=7)
        assert spec == SyntheticSpec(
            kind="blobs", n_per_cluster=100, k=3, noise=0.05, seed=7
        )

    def test_parameters(self):
        spec = _parse_synthetic("rings:n=300,noise=0.1", k=3, seed=0)
        assert spec.n_per_cluster == 100
        assert spec.noise == 0.1

    def test_n_must_divide_by_k(self):
        with pytest.raises(ValueError, match="multiple of k"):
            _parse_synthetic("blobs:n=10", k=3, seed=0)

    def test_malformed_parameter(self):
        with pytest.raises(ValueError, match="malformed synthetic parameter"):
            _parse_synthetic("blobs:n", k=3, seed=0)

    def test_unknown_parameter(self):
        with pytest.raises(ValueError, match="unknown synthetic parameter"):
            _parse_synthetic("blobs:m=10", k=2, seed=0)

    def test_unknown_kind_propagates(self):
        with pytest.raises(ValueError, match="kind must be one of"):
            _parse_synthetic("spirals", k=2, seed=0)


class TestStripVolatile:
    def test_removes_only_volatile_fields(self, tmp_path):
        report = run_experiment(blob_config(tmp_path, restarts=1)).as_dict()
        stripped = strip_volatile(report)
        assert "timing" not in stripped and "environment" not in stripped
        assert all("wall_time_s" not in run for run in stripped["runs"])
        # nothing else went missing, and the input is not mutated
        assert set(report) - set(stripped) == {"timing", "environment"}
        assert all("wall_time_s" in run for run in report["runs"])
        kept = {k for run in stripped["runs"] for k in run}
        assert {"solver", "restart", "seed", "init_checksum", "objective"} <= kept


class TestRunExperiment:
    def test_synthetic_both_solvers(self, tmp_path):
        cfg = blob_config(tmp_path)
        report = run_experiment(cfg)
        assert isinstance(report, MetricsReport)
        runs = report.runs
        assert len(runs) == 4  # 2 restarts x 2 solvers
        assert {run["solver"] for run in runs} == {"apg", "admm"}
        # synthetic data carries gold labels, so every run is scored
        assert all(0.0 <= run["ac"] <= 100.0 for run in runs)
        # per-restart: both solvers started from the same factor
        for restart in (0, 1):
            checksums = {
                run["init_checksum"] for run in runs if run["restart"] == restart
            }
            assert len(checksums) == 1
        assert runs[0]["init_checksum"] != runs[2]["init_checksum"]
        # solver-specific diagnostics
        for run in runs:
            if run["solver"] == "apg":
                assert "split_gap" in run and "kkt" not in run
            else:
                assert "kkt" in run and "split_gap" not in run
        assert "graph_s" in report.timing
        assert report.input["source"] == "synthetic"
        assert report.input["graph"]["q"] == 6  # floor(log2 60) + 1
        assert report.cost_estimate == flops_admm(60, 3).as_dict()
        assert set(report.aggregate) == {"apg", "admm"}
        for summary in report.aggregate.values():
            assert {"best_objective", "mean_objective", "std_objective"} <= set(summary)
            assert "mean_ac" in summary

    def test_writes_report_and_label_files(self, tmp_path):
        cfg = blob_config(tmp_path)
        report = run_experiment(cfg)
        names = sorted(os.listdir(cfg.out))
        assert names == [
            "labels_admm_r0.csv",
            "labels_admm_r1.csv",
            "labels_apg_r0.csv",
            "labels_apg_r1.csv",
            "report.json",
        ]
        on_disk = json.loads((tmp_path / "out" / "report.json").read_text())
        assert on_disk == report.as_dict()
        labels = np.loadtxt(tmp_path / "out" / "labels_apg_r0.csv", dtype=np.int64)
        assert labels.shape == (60,)
        assert np.all((labels >= 0) & (labels < 3))

    def test_adjacency_input_skips_graph_and_scoring(self, tmp_path):
        path = tmp_path / "adj.txt"
        path.write_text("4 4\n0 1 1.0\n1 2 1.0\n2 3 1.0\n3 0 1.0\n")
        cfg = RunConfig(
            k=2, adjacency_path=str(path), solver="admm", out=str(tmp_path / "out")
        )
        report = run_experiment(cfg)
        assert report.input["source"] == "adjacency"
        assert "graph" not in report.input
        assert "graph_s" not in report.timing
        assert all("ac" not in run for run in report.runs)
        assert "mean_ac" not in report.aggregate["admm"]

    def test_points_input_with_labels_and_header(self, tmp_path):
        rng = np.random.default_rng(0)
        lines = ["x,y,gold"]
        for label, center in enumerate(((0.0, 0.0), (4.0, 0.0))):
            for _ in range(15):
                x, y = center + 0.05 * rng.standard_normal(2)
                lines.append(f"{x},{y},{label}")
        path = tmp_path / "pts.csv"
        path.write_text("\n".join(lines) + "\n")
        cfg = RunConfig(
            k=2,
            points_path=str(path),
            solver="apg",
            labeled=True,
            header=True,
            out=str(tmp_path / "out"),
        )
        report = run_experiment(cfg)
        assert report.input["source"] == "points"
        assert report.input["n"] == 30
        assert report.runs[0]["ac"] == 100.0

    def test_deterministic_reports(self, tmp_path):
        first = run_experiment(blob_config(tmp_path, out=str(tmp_path / "a")))
        second = run_experiment(blob_config(tmp_path, out=str(tmp_path / "b")))
        assert strip_volatile(first.as_dict()) == strip_volatile(second.as_dict())

    def test_max_iter_override_caps_both_solvers(self, tmp_path):
        report = run_experiment(blob_config(tmp_path, restarts=1, max_iter=2))
        for run in report.runs:
            assert run["iterations"] <= 2
            assert not run["converged"]


class TestMain:
    def test_success_exit_and_summary(self, tmp_path, capsys):
        code = main(
            [
                "--synthetic", "blobs:n=30",
                "--k", "3",
                "--solver", "admm",
                "--out", str(tmp_path / "out"),
            ]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "admm: best objective" in out
        assert "report written to" in out
        assert (tmp_path / "out" / "report.json").exists()

    def test_config_error_exits_2(self, tmp_path, capsys):
        code = main(
            ["--synthetic", "blobs:n=10", "--k", "3", "--out", str(tmp_path / "o")]
        )
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exits_2(self, tmp_path, capsys):
        code = main(
            ["--input", str(tmp_path / "nope.csv"), "--k", "2", "--out", str(tmp_path / "o")]
        )
        assert code == 2
        assert "error:" in capsys.readouterr().err

    def test_conflicting_sources_rejected_by_parser(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main(["--synthetic", "blobs", "--input", "a.csv", "--k", "2"])
        assert info.value.code == 2
