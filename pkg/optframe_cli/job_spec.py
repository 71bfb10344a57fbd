#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

import pathlib
import re
from typing import Any, Dict, List, Literal, Optional

import numpy as np
import yaml
from pydantic import BaseModel, field_validator

from optframe_core.common.errors import InvalidInput
from optframe_core.spectra.vecmaj import SortedVector
from optframe_core.design.partition import (
    ProblemInput,
    WeightPartition,
    PartitionSolution,
)

SCHEMA_VERSION = 1


def parse_values(text, name="values"):
    """ "10,10,10,1,1" or "10 10 10 1 1" to a list of floats."""
    parts = [part for part in re.split(r"[,\s;]+", str(text).strip()) if part]
    if not parts:
        raise InvalidInput(name + ": no values given.")
    try:
        return [float(part) for part in parts]
    except ValueError as e:
        raise InvalidInput(name + ": " + str(e))


def load_document(path):
    """JSON or YAML file to a dict."""
    try:
        with open(pathlib.Path(path)) as file:
            content = yaml.safe_load(file)
    except (OSError, yaml.YAMLError) as e:
        raise InvalidInput("Can't read " + str(path) + ": " + str(e))
    if not isinstance(content, dict):
        raise InvalidInput(str(path) + ": expected a mapping at top level.")
    return content


# Schemas.
class JobSpec(BaseModel):
    alpha: List[float]
    dims: List[float]
    tolerances: Dict[str, float] = {}
    seed: Optional[int] = None
    format: Optional[Literal["json", "csv"]] = None

    @field_validator("alpha", "dims", mode="before")
    @classmethod
    def split_text(cls, value):
        if isinstance(value, str):
            return parse_values(value)
        return value

    def to_problem(self):
        """ """
        return ProblemInput.from_user(self.alpha, self.dims)


class PartitionDocument(BaseModel):
    """Any document with dims and an n×m partition (rows as lists)."""

    dims: List[int]
    partition: List[List[float]]

    def to_partition(self):
        """ """
        partition = WeightPartition.from_rows(self.partition)
        if partition.m != len(self.dims):
            raise InvalidInput(
                "partition has "
                + str(partition.m)
                + " columns for "
                + str(len(self.dims))
                + " dimensions."
            )
        return partition


class SolutionDocument(BaseModel):
    """Stored solve result; canonical (sorted) order."""

    schema_version: int = SCHEMA_VERSION
    alpha: List[float]
    dims: List[int]
    partition: List[List[float]]
    spectra: List[List[float]]
    t_seq: List[float] = []
    stop_iteration: int = 0
    lambda_sorted: List[float] = []
    blocks: Dict[str, Any] = {}
    potentials: Dict[str, Optional[float]] = {}
    input_order: Dict[str, Any] = {}

    @classmethod
    def from_file(cls, path):
        """ """
        content = load_document(path)
        content["schema_version"] = content.pop("schema", SCHEMA_VERSION)
        return cls(**content)

    def to_problem(self):
        """ """
        return ProblemInput.from_user(self.alpha, self.dims)

    def to_solution(self, problem):
        """Stored matrices mapped onto the canonical problem order."""
        rows = WeightPartition.from_rows(self.partition).entries
        if rows.shape != (problem.n, problem.m) or len(self.spectra) != problem.m:
            raise InvalidInput(
                "solution: partition or spectra do not match alpha and dims."
            )
        entries = np.empty_like(rows)
        entries[problem.alpha_perm, :] = rows
        columns = np.empty_like(entries)
        columns[:, problem.dims_perm] = entries
        spectra = [None] * problem.m
        for j, spectrum in enumerate(self.spectra):
            spectra[int(problem.dims_perm[j])] = SortedVector(entries=spectrum)
        return PartitionSolution(
            problem=problem,
            partition=WeightPartition(entries=columns),
            spectra=tuple(spectra),
            t_seq=np.array(self.t_seq, dtype=float),
            stop_iteration=self.stop_iteration,
        )
