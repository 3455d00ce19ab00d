"""test lib/report.py - run configuration, clustering error and report files"""

import json
import os

import numpy as np
import pandas as pd
import pytest

from lib.report import (
    RunConfig,
    RunReport,
    clustering_error,
    make_config,
    side_assignment,
    write_matrix,
    write_reports,
)
from spectral.errors import ConfigError, LabelArityMismatch


def report(algorithm, alpha, conductance, error):
    return RunReport(
        algorithm=algorithm,
        value=conductance,
        conductance=conductance,
        error=error,
        side=[0, 1],
        wall_time=0.01,
        seed=0,
        alpha=alpha,
    )


class TestMakeConfig:
    def test_defaults(self):
        config = make_config()
        assert isinstance(config, RunConfig)
        assert config.algorithms == ["ipm-s", "ipm-h"]
        assert config.inner == "rcdm"
        assert config.restarts == 3
        assert config.start_draws == 64
        assert config.alpha == []
        assert config.p == 1.0
        assert config.warnings == []

    def test_clamping_warns(self):
        config = make_config({"restarts": 5000, "workers": 0, "max_n": 40})
        assert config.restarts == 1000
        assert config.workers == 1
        assert config.max_n == 12
        assert len(config.warnings) == 3
        assert "restarts clamped from 5000 to 1000 (range 1-1000)" in config.warnings

    def test_invalid_number_uses_default(self):
        config = make_config({"restarts": "many"})
        assert config.restarts == 3
        assert "restarts ignored" in config.warnings[0]

    @pytest.mark.parametrize(
        "data",
        [
            {"algorithms": ["kmeans"]},
            {"algorithms": []},
            {"alpha": [0.7]},
            {"alpha": [0.0]},
            {"alpha": ["small"]},
            {"seed": -1},
            {"seed": True},
            {"seed": 1.5},
            {"inner": "newton"},
            {"method": "lanczos"},
            {"suite": "nope"},
        ],
    )
    def test_rejects(self, data):
        with pytest.raises(ConfigError):
            make_config(data)

    def test_not_a_dict(self):
        with pytest.raises(ConfigError):
            make_config([1, 2])

    def test_alpha_grid_sorted_unique(self):
        assert make_config({"alpha": [0.3, 0.04, 0.3]}).alpha == [0.04, 0.3]
        assert make_config({"alpha": 0.1}).alpha == [0.1]

    def test_algorithms_deduplicated(self):
        assert make_config({"algorithms": ["sdp", "ipm-s", "sdp"]}).algorithms == ["sdp", "ipm-s"]
        assert make_config({"algorithms": "sdp"}).algorithms == ["sdp"]

    def test_sdp_method_forces_p2(self):
        config = make_config({"method": "sdp", "p": 3})
        assert config.p == 2.0
        assert any("p changed from 3.0 to 2.0" in w for w in config.warnings)
        assert make_config({"method": "dense"}).warnings == []
        assert make_config({"method": "dense"}).p == 2.0

    def test_ipm_method_forces_p1(self):
        config = make_config({"method": "ipm", "p": 2})
        assert config.p == 1.0
        assert config.warnings == ["method 'ipm' works at p = 1; p changed from 2.0 to 1.0"]
        assert make_config({"method": "ipm", "p": 1}).warnings == []

    def test_ipm_kwargs_and_echo(self):
        config = make_config({"max_outer": 7, "restarts": 5000})
        assert config.ipm_kwargs()["max_outer"] == 7
        assert config.ipm_kwargs()["start_draws"] == 64
        echo = config.echo()
        assert "warnings" not in echo
        assert echo["restarts"] == 1000


class TestClusteringError:
    def test_examples(self):
        assert clustering_error([0, 0, 1, 1], ["a", "a", "b", "b"]) == 0
        assert clustering_error([1, 1, 0, 0], ["a", "a", "b", "b"]) == 0
        assert clustering_error([0, 1, 1, 1], ["a", "a", "b", "b"]) == 1

    def test_never_exceeds_half(self, rng):
        partition = rng.integers(0, 2, size=20)
        labels = rng.integers(0, 2, size=20)
        assert clustering_error(partition, labels) <= 10

    def test_single_side(self):
        assert clustering_error([0, 0, 0, 0], ["a", "a", "b", "b"]) == 2

    def test_mismatch(self):
        with pytest.raises(LabelArityMismatch):
            clustering_error([0, 1], ["a", "b", "b"])
        with pytest.raises(LabelArityMismatch):
            clustering_error([0, 1, 1], ["a", "b", "c"])

    def test_side_assignment(self):
        np.testing.assert_array_equal(side_assignment(5, [1, 3]), [0, 1, 0, 1, 0])
        np.testing.assert_array_equal(side_assignment(3, []), [0, 0, 0])


class TestReportFiles:
    def test_to_dict(self):
        data = report("ipm-s", 0.04, 0.25, 1).to_dict()
        assert set(data) == {
            "algorithm", "alpha", "value", "conductance", "error", "side", "wall_time", "seed", "config", "details",
        }

    def test_write_reports(self, temp_dir):
        path = write_reports([report("ipm-s", None, 0.5, None), report("sdp", None, 0.4, 2)],
                             os.path.join(temp_dir, "out", "runs.jsonl"))
        with open(path, encoding="utf-8") as f:
            lines = [json.loads(line) for line in f]
        assert [line["algorithm"] for line in lines] == ["ipm-s", "sdp"]
        assert lines[0]["error"] is None

    def test_write_matrix(self, temp_dir):
        reports = [
            report("ipm-s", 0.04, 0.2, 1),
            report("ipm-h", 0.04, 0.3, 2),
            report("ipm-s", 0.1, 0.25, 0),
            report("ipm-h", 0.1, 0.3, 2),
        ]
        path = write_matrix(reports, os.path.join(temp_dir, "matrix.csv"))
        frame = pd.read_csv(path)
        assert list(frame["alpha"]) == [0.04, 0.1]
        assert set(frame.columns) == {
            "alpha", "ipm-s_conductance", "ipm-h_conductance", "ipm-s_error", "ipm-h_error",
        }
        assert list(frame["ipm-s_conductance"]) == [0.2, 0.25]
        assert list(frame["ipm-h_error"]) == [2, 2]
