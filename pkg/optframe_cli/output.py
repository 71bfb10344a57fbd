#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

import io
import pathlib

import click
import numpy as np
import pydantic_core

from optframe_core.common.errors import DomainError, InvalidInput
from optframe_core.design.potentials import potential_of
from optframe_cli.job_spec import SCHEMA_VERSION


def solution_document(problem, solution):
    """JSON-ready dict of a solve result."""
    potentials = {}
    for name in ["fp", "mse"]:
        try:
            potentials[name] = potential_of(solution.lambda_sorted, name)
        except DomainError:
            potentials[name] = None
    blocks = solution.blocks
    return {
        "schema": SCHEMA_VERSION,
        "alpha": problem.alpha.entries.tolist(),
        "dims": list(problem.dims),
        "partition": solution.partition.entries.tolist(),
        "spectra": [spectrum.entries.tolist() for spectrum in solution.spectra],
        "lambda_sorted": solution.lambda_sorted.tolist(),
        "blocks": {
            "p": blocks.p,
            "levels": blocks.levels.tolist(),
            "mults": blocks.mults.tolist(),
            "cuts": blocks.cuts.tolist(),
            "h": blocks.h.tolist(),
        },
        "t_seq": solution.t_seq.tolist(),
        "stop_iteration": solution.stop_iteration,
        "potentials": potentials,
        "input_order": {
            "alpha": problem.alpha_in_input_order().tolist(),
            "dims": problem.dims_in_input_order(),
            "alpha_permutation": problem.alpha_perm.tolist(),
            "dims_permutation": problem.dims_perm.tolist(),
            "partition": problem.matrix_in_input_order(
                solution.partition.entries
            ).tolist(),
        },
    }


def design_document(design, checks):
    """ """
    return {
        "schema": SCHEMA_VERSION,
        "families": [
            {"dim": family.dim, "vectors": family.vectors.tolist()} for family in design
        ],
        "verification": [
            {
                "norms_sq": check.norms_sq.tolist(),
                "spectrum": check.spectrum.tolist(),
                "norm_deviation": check.norm_deviation,
                "spectrum_deviation": check.spectrum_deviation,
                "passed": check.passed,
            }
            for check in checks
        ],
    }


def report_document(report, **extra):
    """Pydantic report plus its pass flag."""
    document = {"schema": SCHEMA_VERSION, "passed": bool(report.passed)}
    document.update(extra)
    document.update(report.model_dump(mode="json"))
    return document


def to_json(document):
    """ """
    return pydantic_core.to_json(document, indent=2).decode("utf-8")


def matrix_csv(matrix, float_format="%.6g", header=""):
    """ """
    buffer = io.StringIO()
    np.savetxt(buffer, np.atleast_2d(matrix), fmt=float_format, delimiter=",", header=header)
    return buffer.getvalue()


def plot_data_csv(partition, spectra, float_format="%.6g"):
    """Water-filling step profiles: group, index, weight, level."""
    rows = []
    for j, spectrum in enumerate(spectra):
        column = -np.sort(-np.asarray(partition)[:, j])
        for i, weight in enumerate(column):
            level = spectrum.entries[i] if i < spectrum.entries.size else 0.0
            rows.append([j + 1, i + 1, weight, level])
    buffer = io.StringIO()
    np.savetxt(
        buffer,
        np.array(rows),
        fmt=["%d", "%d", float_format, float_format],
        delimiter=",",
        header="group,index,weight,level",
        comments="",
    )
    return buffer.getvalue()


def emit(text, out=None):
    """Write to a file or stdout."""
    if out:
        try:
            pathlib.Path(out).write_text(text)
        except OSError as e:
            raise InvalidInput("Can't write " + str(out) + ": " + str(e))
    else:
        click.echo(text, nl=not text.endswith("\n"))
