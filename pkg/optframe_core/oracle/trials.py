#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

"""
Independent checks of the computed designs.

Random designs with the same weights and dimensions must have a Λ vector that
majorizes the optimal one and no smaller convex potential. Small instances
are also checked against a grid search over weight partitions, and spectra
are checked to grow with the weights.
"""

import concurrent.futures
import logging
import math
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from optframe_core.common.errors import InvalidInput, DomainError, TraceMismatch
from optframe_core.common.tolerances import ToleranceConfig, DEFAULT_TOLERANCES
from optframe_core.spectra.vecmaj import (
    SortedVector,
    as_finite_array,
    descending,
    majorizes,
    block_majorizes,
)
from optframe_core.design.partition import ProblemInput, WeightPartition, PartitionSolver
from optframe_core.design.synth import FrameFamily
from optframe_core.design.potentials import get_potential, potential_of, lambda_vector


class TrialConfig(BaseModel):
    """ """

    seed: int = 42
    trials: int = Field(default=1000, ge=1)
    potentials: List[str] = ["fp", "mse", "cube"]
    tol: float = Field(default=1.0e-9, ge=0.0)
    workers: int = Field(default=1, ge=1)
    grid_steps: int = Field(default=200, ge=1)

    @field_validator("potentials")
    @classmethod
    def check_potentials(cls, value):
        for name in value:
            get_potential(name)
        return value

    @classmethod
    def from_config(cls, config, **overrides):
        """Build from a loaded Configuration. None overrides are ignored."""
        values = {
            "seed": config.get("oracle.seed", default=None),
            "trials": config.get("oracle.trials", default=None),
            "potentials": config.get("oracle.potentials", default=None),
            "workers": config.get("oracle.workers", default=None),
            "grid_steps": config.get("oracle.grid_steps", default=None),
        }
        values.update(overrides)
        return cls(**{key: value for key, value in values.items() if value is not None})


class TrialOutcome(BaseModel):
    """ """

    majorized: bool
    block_majorized: bool
    values: Dict[str, float]


class TrialReport(BaseModel):
    """ """

    trials: int
    seed: int
    majorization_violations: int = 0
    block_violations: int = 0
    potential_violations: Dict[str, int] = {}
    optimal_values: Dict[str, float] = {}
    min_trial_values: Dict[str, float] = {}

    @property
    def violations(self):
        return (
            self.majorization_violations
            + self.block_violations
            + sum(self.potential_violations.values())
        )

    @property
    def passed(self):
        return self.violations == 0


class BruteForceReport(BaseModel):
    """ """

    potential: str
    grid_steps: int
    minimum: float
    optimal_value: float
    column_totals: List[float]
    tol: float

    @property
    def gap(self):
        return self.minimum - self.optimal_value

    @property
    def passed(self):
        return bool(self.gap >= -self.tol)


class MonotonicityReport(BaseModel):
    """ """

    alpha_spectra: List[List[float]]
    beta_spectra: List[List[float]]
    max_violation: float
    tol: float

    @property
    def passed(self):
        return bool(self.max_violation <= self.tol)


def random_partition(alpha, m, rng):
    """Rows of α split by random positive weights."""
    alpha = as_finite_array(alpha.entries if isinstance(alpha, SortedVector) else alpha, "alpha")
    if np.any(alpha <= 0.0):
        raise InvalidInput("random_partition: weights must be strictly positive.")
    if m == 1:
        return WeightPartition(entries=alpha[:, None].copy())
    shares = rng.dirichlet(np.ones(m), size=alpha.size) * alpha[:, None]
    shares[:, -1] = np.maximum(alpha - np.sum(shares[:, :-1], axis=1), 0.0)
    return WeightPartition(entries=shares)


def random_design(partition, dims, rng):
    """Vector i of group j: uniform direction in ℝ^{d_j}, norm √A_ij."""
    entries = partition.entries if isinstance(partition, WeightPartition) else np.asarray(partition)
    design = []
    for j, dim in enumerate(dims):
        directions = rng.standard_normal((int(dim), entries.shape[0]))
        lengths = np.linalg.norm(directions, axis=0)
        degenerate = lengths == 0.0
        if np.any(degenerate):
            directions[:, degenerate] = 0.0
            directions[0, degenerate] = 1.0
            lengths[degenerate] = 1.0
        scale = np.sqrt(np.maximum(entries[:, j], 0.0)) / lengths
        design.append(FrameFamily(vectors=directions * scale))
    return design


def numpy_eigenvalues(matrix):
    """Sorted eigenvalues through LAPACK, for bulk trials."""
    return SortedVector(entries=descending(np.linalg.eigvalsh(matrix)))


class OptimalityOracle(object):
    """ """

    def __init__(self, logger="DefaultLogger"):
        """ """
        self.logger_name = logger
        self.logger = logging.getLogger(logger)

    def run_trials(
        self,
        problem,
        cfg: Optional[TrialConfig] = None,
        solution=None,
        tolerances: Optional[ToleranceConfig] = None,
    ):
        """Random designs against the optimal one; violations are counted."""
        cfg = cfg or TrialConfig()
        tolerances = tolerances or DEFAULT_TOLERANCES
        if solution is None:
            solution = PartitionSolver(logger=self.logger_name).solve(problem, tolerances)
        optimal = solution.lambda_sorted
        blocks = solution.blocks.as_block_vector()
        potentials = [get_potential(name) for name in cfg.potentials]
        optimal_values = {pot.name: potential_of(optimal, pot) for pot in potentials}
        alpha = problem.alpha.entries
        dims = problem.dims
        tol = tolerances.majorization_tol(np.sum(alpha))

        def run_one(child):
            rng = np.random.default_rng(child)
            design = random_design(random_partition(alpha, len(dims), rng), dims, rng)
            spectrum = lambda_vector(design, eigen=numpy_eigenvalues).sorted
            try:
                block_ok = block_majorizes(blocks, spectrum, tol=tol)
            except TraceMismatch:
                block_ok = False
            values = {}
            for pot in potentials:
                try:
                    values[pot.name] = potential_of(spectrum, pot)
                except DomainError:
                    values[pot.name] = math.inf
            return TrialOutcome(
                majorized=majorizes(spectrum, optimal, tol=tol),
                block_majorized=block_ok,
                values=values,
            )

        children = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
        if cfg.workers > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers) as executor:
                outcomes = list(executor.map(run_one, children))
        else:
            outcomes = [run_one(child) for child in children]

        report = TrialReport(
            trials=cfg.trials,
            seed=cfg.seed,
            optimal_values=optimal_values,
            potential_violations={pot.name: 0 for pot in potentials},
            min_trial_values={pot.name: math.inf for pot in potentials},
        )
        for outcome in outcomes:
            if not outcome.majorized:
                report.majorization_violations += 1
            if not outcome.block_majorized:
                report.block_violations += 1
            for name, value in outcome.values.items():
                report.min_trial_values[name] = min(report.min_trial_values[name], value)
                optimal_value = optimal_values[name]
                if optimal_value > value + cfg.tol * max(1.0, abs(optimal_value)):
                    report.potential_violations[name] += 1
        if report.passed:
            self.logger.info(
                "OptimalityOracle: " + str(cfg.trials) + " trials, no violations."
            )
        else:
            self.logger.warning(
                "OptimalityOracle: "
                + str(report.violations)
                + " violations in "
                + str(cfg.trials)
                + " trials."
            )
        return report

    def brute_force_small(
        self,
        problem,
        pot="fp",
        grid_steps=200,
        tol=1.0e-3,
        tolerances: Optional[ToleranceConfig] = None,
    ):
        """Grid search over row splits of a two-column partition."""
        if problem.m != 2 or problem.n > 3:
            raise InvalidInput(
                "brute_force_small: needs two dimensions and at most three weights."
            )
        pot = get_potential(pot)
        alpha = problem.alpha.entries
        d_1, d_2 = problem.dims
        fractions = np.linspace(0.0, 1.0, grid_steps + 1)
        # The first row is looped, the others are broadcast.
        rest = np.meshgrid(*([fractions] * (problem.n - 1)), indexing="ij")
        rest = [grid.ravel() for grid in rest]
        best = math.inf
        best_totals = [0.0, 0.0]
        for first in fractions:
            share = np.column_stack(
                [np.full(rest[0].size if rest else 1, first)] + rest
            ) * alpha
            value = _grid_potential(share, d_1, pot) + _grid_potential(alpha - share, d_2, pot)
            index = int(np.argmin(value))
            if value[index] < best:
                best = float(value[index])
                best_totals = [
                    float(np.sum(share[index])),
                    float(np.sum(alpha - share[index])),
                ]
        solution = PartitionSolver(logger=self.logger_name).solve(problem, tolerances)
        report = BruteForceReport(
            potential=pot.name,
            grid_steps=grid_steps,
            minimum=best,
            optimal_value=potential_of(solution.lambda_sorted, pot),
            column_totals=best_totals,
            tol=tol,
        )
        self.logger.debug(
            "OptimalityOracle: grid minimum "
            + str(report.minimum)
            + ", algorithm "
            + str(report.optimal_value)
            + "."
        )
        return report

    def monotonicity_trial(self, alpha, beta, dims, tolerances: Optional[ToleranceConfig] = None):
        """Spectra for α dominate those for β when 0 < β ≤ α."""
        tolerances = tolerances or DEFAULT_TOLERANCES
        alpha_values = as_finite_array(alpha, name="alpha")
        beta_values = as_finite_array(beta, name="beta")
        if alpha_values.size != beta_values.size:
            raise InvalidInput("monotonicity_trial: alpha and beta differ in length.")
        if np.any(beta_values <= 0.0) or np.any(beta_values > alpha_values):
            raise InvalidInput("monotonicity_trial: needs 0 < beta <= alpha entrywise.")
        solver = PartitionSolver(logger=self.logger_name)
        upper = solver.solve(ProblemInput.from_user(alpha_values, dims), tolerances)
        lower = solver.solve(ProblemInput.from_user(beta_values, dims), tolerances)
        violation = 0.0
        for high, low in zip(upper.spectra, lower.spectra):
            violation = max(violation, float(np.max(low.entries - high.entries)))
        report = MonotonicityReport(
            alpha_spectra=[s.entries.tolist() for s in upper.spectra],
            beta_spectra=[s.entries.tolist() for s in lower.spectra],
            max_violation=max(violation, 0.0),
            tol=tolerances.majorization_tol(np.max(alpha_values)),
        )
        if not report.passed:
            self.logger.warning(
                "OptimalityOracle: monotonicity violated by " + str(report.max_violation)
            )
        return report


def _grid_potential(columns, dim, pot):
    """Potential of the water-filling of each row of columns (k × n) in dim."""
    entries = -np.sort(-columns, axis=1)
    tails = np.cumsum(entries[:, ::-1], axis=1)[:, ::-1]
    candidates = tails[:, :dim] / (dim - np.arange(dim))
    level = np.min(candidates, axis=1)
    gamma = np.maximum(entries[:, :dim], level[:, None])
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        values = np.sum(pot.phi(gamma), axis=1)
    below = np.any(gamma < pot.domain_min, axis=1)
    values = np.where(np.isfinite(values) & ~below, values, math.inf)
    return values


def optimality_trial(problem, cfg: Optional[TrialConfig] = None, solution=None, tolerances=None):
    """ """
    return OptimalityOracle().run_trials(problem, cfg, solution, tolerances)


def brute_force_small(problem, pot="fp", grid_steps=200, tol=1.0e-3, tolerances=None):
    """ """
    return OptimalityOracle().brute_force_small(problem, pot, grid_steps, tol, tolerances)


def monotonicity_trial(alpha, beta, dims, tolerances=None):
    """ """
    return OptimalityOracle().monotonicity_trial(alpha, beta, dims, tolerances)
