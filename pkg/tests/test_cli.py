#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

import json

import numpy as np
import pytest
from click.testing import CliRunner

import optframe_core
from optframe_cli.main import cli

from tests.conftest import ELEVEN_ALPHA, ELEVEN_SMALLER_ALPHA


def as_flag(values):
    return ",".join(str(v) for v in values)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def solved(runner, tmp_path):
    """Small example solved into a JSON file."""
    path = tmp_path / "small.json"
    result = runner.invoke(
        cli, ["solve", "--alpha", "10,10,10,1,1", "--dims", "4,2", "--out", str(path)]
    )
    assert result.exit_code == 0, result.output
    return path


class TestGroup:
    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert optframe_core.__version__ in result.output

    def test_help_lists_commands(self, runner):
        result = runner.invoke(cli, ["--help"])
        for name in ["solve", "synth", "verify", "sample", "mono"]:
            assert name in result.output


class TestSolve:
    def test_small_example(self, solved):
        document = json.loads(solved.read_text())
        assert document["schema"] == 1
        np.testing.assert_allclose(document["lambda_sorted"], [6, 6, 6, 6, 6, 2], atol=1e-9)
        assert document["blocks"]["mults"] == [5, 1]
        assert document["potentials"]["fp"] == pytest.approx(184.0)
        assert document["potentials"]["mse"] == pytest.approx(4.0 / 3.0)

    def test_eleven_weights_csv(self, runner, tmp_path):
        path = tmp_path / "eleven.csv"
        result = runner.invoke(
            cli,
            ["solve", "--alpha", as_flag(ELEVEN_ALPHA), "--dims", "7,5,3",
             "--format", "csv", "--out", str(path)],
        )
        assert result.exit_code == 0, result.output
        matrix = np.loadtxt(path, delimiter=",")
        assert matrix.shape == (11, 3)
        np.testing.assert_allclose(matrix.sum(axis=1), ELEVEN_ALPHA, atol=1e-4)
        np.testing.assert_allclose(matrix[0], [3.0, 3.0, 3.0], atol=1e-3)
        np.testing.assert_allclose(matrix[1], [2.7583, 2.7583, 2.4833], atol=1e-3)

    def test_unsorted_input_order(self, runner, tmp_path):
        path = tmp_path / "unsorted.json"
        result = runner.invoke(
            cli, ["solve", "--alpha", "1,10,10,1,10", "--dims", "2,4", "--out", str(path)]
        )
        assert result.exit_code == 0, result.output
        document = json.loads(path.read_text())
        assert document["alpha"] == [10, 10, 10, 1, 1]
        assert document["input_order"]["alpha"] == [1, 10, 10, 1, 10]
        rows = np.array(document["input_order"]["partition"])
        np.testing.assert_allclose(rows.sum(axis=1), [1, 10, 10, 1, 10], atol=1e-9)

    def test_job_file(self, runner, tmp_path):
        job = tmp_path / "job.yaml"
        job.write_text("alpha: [10, 10, 10, 1, 1]\ndims: [4, 2]\nformat: csv\n")
        path = tmp_path / "job.csv"
        result = runner.invoke(cli, ["solve", "--job", str(job), "--out", str(path)])
        assert result.exit_code == 0, result.output
        assert np.loadtxt(path, delimiter=",").shape == (5, 2)

    def test_job_file_tolerances(self, runner, tmp_path):
        job = tmp_path / "job.yaml"
        job.write_text(
            "alpha: [" + as_flag(ELEVEN_ALPHA) + "]\ndims: [7, 5, 3]\n"
            "tolerances:\n  flat_rel: 10.0\n"
        )
        loose = runner.invoke(cli, ["solve", "--job", str(job), "--out", str(tmp_path / "a.json")])
        assert loose.exit_code == 3
        flag_wins = runner.invoke(
            cli,
            ["solve", "--job", str(job), "--tol-flat", "1e-9", "--out", str(tmp_path / "b.json")],
        )
        assert flag_wins.exit_code == 0, flag_wins.output
        assert json.loads((tmp_path / "b.json").read_text())["stop_iteration"] == 2

    def test_unknown_job_tolerance(self, runner, tmp_path):
        job = tmp_path / "job.yaml"
        job.write_text("alpha: [1, 1]\ndims: [1]\ntolerances:\n  flatness: 0.1\n")
        result = runner.invoke(cli, ["solve", "--job", str(job)])
        assert result.exit_code == 2

    def test_plot_data(self, runner, tmp_path):
        plot = tmp_path / "plot.csv"
        result = runner.invoke(
            cli,
            ["solve", "--alpha", "10,10,10,1,1", "--dims", "4,2",
             "--out", str(tmp_path / "small.json"), "--plot-data", str(plot)],
        )
        assert result.exit_code == 0, result.output
        lines = plot.read_text().splitlines()
        assert lines[0] == "group,index,weight,level"
        assert len(lines) == 11

    def test_dimension_too_large(self, runner):
        result = runner.invoke(cli, ["solve", "--alpha", "1,1,1,1,1", "--dims", "8"])
        assert result.exit_code == 2

    def test_invalid_weights(self, runner):
        result = runner.invoke(cli, ["solve", "--alpha", "1,-1", "--dims", "1"])
        assert result.exit_code == 2
        result = runner.invoke(cli, ["solve", "--alpha", "1,abc", "--dims", "1"])
        assert result.exit_code == 2

    def test_missing_dims(self, runner):
        result = runner.invoke(cli, ["solve", "--alpha", "1,1"])
        assert result.exit_code == 2


class TestSynth:
    def test_inline_small_example(self, runner, tmp_path):
        path = tmp_path / "design.json"
        result = runner.invoke(
            cli, ["synth", "--alpha", "10,10,10,1,1", "--dims", "4,2", "--out", str(path)]
        )
        assert result.exit_code == 0, result.output
        document = json.loads(path.read_text())
        shapes = [np.array(family["vectors"]).shape for family in document["families"]]
        assert shapes == [(4, 5), (2, 5)]
        for check in document["verification"]:
            assert check["passed"]
            assert check["spectrum_deviation"] < 1e-8

    def test_from_solve_output(self, runner, solved, tmp_path):
        path = tmp_path / "design.json"
        result = runner.invoke(cli, ["synth", "--solution", str(solved), "--out", str(path)])
        assert result.exit_code == 0, result.output

    def test_basis_partition(self, runner, tmp_path):
        source = tmp_path / "basis.json"
        source.write_text(
            json.dumps({"dims": [4, 2], "partition": [[1, 0]] * 4 + [[0, 1]] * 2})
        )
        path = tmp_path / "design.json"
        result = runner.invoke(cli, ["synth", "--solution", str(source), "--out", str(path)])
        assert result.exit_code == 0, result.output
        for family in json.loads(path.read_text())["families"]:
            vectors = np.array(family["vectors"])
            np.testing.assert_allclose(vectors @ vectors.T, np.eye(family["dim"]), atol=1e-10)

    def test_single_uniform_group(self, runner, tmp_path):
        path = tmp_path / "design.json"
        result = runner.invoke(
            cli, ["synth", "--alpha", "1,1,1,1", "--dims", "2", "--out", str(path)]
        )
        assert result.exit_code == 0, result.output
        (check,) = json.loads(path.read_text())["verification"]
        np.testing.assert_allclose(check["spectrum"], [2.0, 2.0], atol=1e-10)

    def test_csv(self, runner, tmp_path):
        path = tmp_path / "design.csv"
        result = runner.invoke(
            cli,
            ["synth", "--alpha", "10,10,10,1,1", "--dims", "4,2", "--format", "csv",
             "--out", str(path)],
        )
        assert result.exit_code == 0, result.output
        text = path.read_text()
        assert "# family 1" in text and "# family 2" in text

    def test_partition_dims_mismatch(self, runner, tmp_path):
        source = tmp_path / "bad.json"
        source.write_text(json.dumps({"dims": [4, 2, 1], "partition": [[1, 0]] * 6}))
        result = runner.invoke(cli, ["synth", "--solution", str(source)])
        assert result.exit_code == 2


class TestVerify:
    def test_round_trip(self, runner, solved, tmp_path):
        path = tmp_path / "report.json"
        result = runner.invoke(cli, ["verify", "--solution", str(solved), "--out", str(path)])
        assert result.exit_code == 0, result.output
        report = json.loads(path.read_text())
        assert report["passed"] and report["failed"] == []

    def test_tampered_partition(self, runner, solved, tmp_path):
        document = json.loads(solved.read_text())
        document["partition"][0][0] += 1.0
        solved.write_text(json.dumps(document))
        path = tmp_path / "report.json"
        result = runner.invoke(cli, ["verify", "--solution", str(solved), "--out", str(path)])
        assert result.exit_code == 1
        assert "row_sums" in json.loads(path.read_text())["failed"]

    def test_undefined_potential_is_accepted(self, runner, solved):
        document = json.loads(solved.read_text())
        document["potentials"]["mse"] = None
        solved.write_text(json.dumps(document))
        result = runner.invoke(cli, ["verify", "--solution", str(solved)])
        assert result.exit_code == 0, result.output

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["verify", "--solution", str(tmp_path / "none.json")])
        assert result.exit_code == 2


class TestSample:
    def test_small_example(self, runner, tmp_path):
        path = tmp_path / "sample.json"
        result = runner.invoke(
            cli,
            ["sample", "--alpha", "10,10,10,1,1", "--dims", "4,2", "--trials", "50",
             "--seed", "42", "--out", str(path)],
        )
        assert result.exit_code == 0, result.output
        report = json.loads(path.read_text())
        assert report["violations"] == 0
        assert report["trials"] == 50 and report["seed"] == 42

    def test_seed_from_environment(self, runner, tmp_path):
        path = tmp_path / "sample.json"
        result = runner.invoke(
            cli,
            ["sample", "--alpha", "1,1,1", "--dims", "2,1", "--trials", "5", "--out", str(path)],
            env={"OPTFRAME_SEED": "5"},
        )
        assert result.exit_code == 0, result.output
        assert json.loads(path.read_text())["seed"] == 5


class TestMono:
    def test_eleven_weights(self, runner, tmp_path):
        path = tmp_path / "mono.json"
        result = runner.invoke(
            cli,
            ["mono", "--alpha", as_flag(ELEVEN_ALPHA), "--beta", as_flag(ELEVEN_SMALLER_ALPHA),
             "--dims", "7,5,3", "--out", str(path)],
        )
        assert result.exit_code == 0, result.output
        assert json.loads(path.read_text())["passed"]

    def test_beta_too_large(self, runner):
        result = runner.invoke(
            cli, ["mono", "--alpha", "1,1", "--beta", "2,1", "--dims", "1"]
        )
        assert result.exit_code == 2
