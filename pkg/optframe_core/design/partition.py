#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

"""
Optimal (α, m)-weight partitions by recursive multi-water-filling.

Level 1 is the single column α. Level m takes the columns a'_j of level m-1,
builds the deformation family of each column in its dimension d_j and lets
the new column take the residual α - Σ_j a'_j(t). Row by row, t is the fixed
point where the residual column's water-filling (in the remaining dimension)
tops out at t. The first row whose residual water-filling is flat freezes
all remaining rows. Only the level-1 family of each column is ever
evaluated; truncating the family per row gives the same functions.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
import scipy.optimize
from pydantic import BaseModel, ConfigDict

from optframe_core.common.errors import (
    OptFrameError,
    InvalidInput,
    DimensionError,
    InternalInvariantViolation,
    ConvergenceError,
    StructureError,
)
from optframe_core.common.tolerances import ToleranceConfig, DEFAULT_TOLERANCES
from optframe_core.spectra.vecmaj import (
    SortedVector,
    BlockVector,
    as_finite_array,
    descending,
    sort_desc,
)
from optframe_core.spectra.waterfill import (
    DeformationFamily,
    water_fill,
    deform_at,
    top_of_water_fill,
)


class ProblemInput(BaseModel):
    """Sorted weights α > 0 and sorted dimensions d_1 ≥ … ≥ d_m, d_1 ≤ n.

    alpha_perm / dims_perm map user positions to sorted positions.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    alpha: SortedVector
    dims: Tuple[int, ...]
    alpha_perm: np.ndarray
    dims_perm: np.ndarray

    @classmethod
    def from_user(cls, alpha, dims):
        """ """
        alpha_values = as_finite_array(alpha, name="alpha")
        if alpha_values.size == 0:
            raise InvalidInput("alpha: at least one weight is needed.")
        if np.any(alpha_values <= 0.0):
            raise InvalidInput("alpha: weights must be strictly positive.")
        dims_values = as_finite_array(dims, name="dims")
        if dims_values.size == 0:
            raise InvalidInput("dims: at least one dimension is needed.")
        if np.any(dims_values != np.round(dims_values)) or np.any(dims_values < 1):
            raise InvalidInput("dims: dimensions must be positive integers.")
        sorted_alpha, alpha_perm = sort_desc(alpha_values)
        sorted_dims, dims_perm = sort_desc(dims_values)
        dims_tuple = tuple(int(d) for d in sorted_dims.entries)
        if dims_tuple[0] > sorted_alpha.entries.size:
            raise DimensionError(
                "dims: largest dimension "
                + str(dims_tuple[0])
                + " exceeds the number of weights "
                + str(sorted_alpha.entries.size)
                + "."
            )
        return cls(
            alpha=sorted_alpha,
            dims=dims_tuple,
            alpha_perm=alpha_perm,
            dims_perm=dims_perm,
        )

    @property
    def n(self):
        return int(self.alpha.entries.size)

    @property
    def m(self):
        return len(self.dims)

    @property
    def total_dim(self):
        return int(sum(self.dims))

    def alpha_in_input_order(self):
        """ """
        return self.alpha.entries[self.alpha_perm]

    def dims_in_input_order(self):
        """ """
        return [self.dims[k] for k in self.dims_perm]

    def matrix_in_input_order(self, matrix):
        """Rows and columns of an n×m matrix back in user order."""
        return np.asarray(matrix)[self.alpha_perm][:, self.dims_perm]


class WeightPartition(BaseModel):
    """n×m non-negative matrix whose rows sum to α."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray

    @classmethod
    def from_rows(cls, rows):
        """ """
        entries = np.array(rows, dtype=float)
        if entries.ndim != 2 or not np.all(np.isfinite(entries)):
            raise InvalidInput("partition: expected a finite n×m matrix.")
        return cls(entries=entries)

    @property
    def n(self):
        return int(self.entries.shape[0])

    @property
    def m(self):
        return int(self.entries.shape[1])

    @property
    def row_sums(self):
        return np.array([math.fsum(row) for row in self.entries])

    def column(self, j):
        """ """
        return self.entries[:, j].copy()


class BlockSpectrum(BaseModel):
    """Λ sorted as levels γ_1 > … > γ_p with multiplicities r_ℓ.

    cuts are the group ends g_1 < … < g_p = d_1 (1-based), h_i = #{j : d_j ≥ i}.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    p: int
    levels: np.ndarray
    mults: np.ndarray
    cuts: np.ndarray
    h: np.ndarray

    def as_block_vector(self):
        """ """
        return BlockVector(levels=self.levels, multiplicities=self.mults)


class PartitionSolution(BaseModel):
    """ """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    problem: ProblemInput
    partition: WeightPartition
    spectra: Tuple[SortedVector, ...]
    t_seq: np.ndarray
    stop_iteration: int
    lambda_sorted: Optional[np.ndarray] = None
    blocks: Optional[BlockSpectrum] = None


class CheckResult(BaseModel):
    """ """

    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    """ """

    checks: List[CheckResult] = []

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failed(self):
        return [check.name for check in self.checks if not check.passed]

    def check(self, name):
        """ """
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


def build_families(columns, dims):
    """Deformation families of the level m-1 columns.

    Columns are non-increasing up to roundoff; the running minimum removes it.
    """
    families = []
    for column, dim in zip(columns, dims):
        source = np.minimum.accumulate(np.maximum(np.asarray(column, dtype=float), 0.0))
        families.append(DeformationFamily.build(SortedVector(entries=source), dim))
    return families


def residual_column(families, alpha, t, cfg=DEFAULT_TOLERANCES):
    """α - Σ_j a_j(t), roundoff below zero clamped."""
    alpha = _alpha_entries(alpha)
    used = np.zeros(alpha.size)
    for fam in families:
        used += deform_at(fam, t)
    residual = alpha - used
    floor = -cfg.clamp_tol(alpha[0])
    if residual.size and residual.min() < floor:
        raise InternalInvariantViolation(
            "residual_column: negative entry "
            + str(residual.min())
            + " at t="
            + str(t)
            + "."
        )
    return np.maximum(residual, 0.0)


def find_t(families, alpha, d_m, cfg=DEFAULT_TOLERANCES, row=0):
    """Fixed point γ_top(residual(t)) = t on [0, γ'_{row,1}].

    The water-filling uses rows >= row in dimension d_m - row.
    """
    alpha = _alpha_entries(alpha)
    upper = float(families[0].source_fill.gamma.entries[row])
    dim = d_m - row
    tol = cfg.t_tol(upper)

    def gap(t):
        residual = residual_column(families, alpha, t, cfg)
        return top_of_water_fill(residual[row:], dim) - t

    low_gap = gap(0.0)
    high_gap = gap(upper)
    if low_gap < -tol or high_gap > tol:
        raise InternalInvariantViolation(
            "find_t: no sign change on [0, "
            + str(upper)
            + "], gaps "
            + str(low_gap)
            + " and "
            + str(high_gap)
            + "."
        )
    if low_gap <= 0.0:
        return 0.0
    if high_gap >= 0.0:
        return upper
    root, result = scipy.optimize.bisect(
        gap,
        0.0,
        upper,
        xtol=tol,
        maxiter=cfg.max_bisect_iter,
        full_output=True,
        disp=False,
    )
    if not result.converged:
        raise ConvergenceError(
            "find_t: bisection stopped after " + str(result.iterations) + " steps."
        )
    return float(root)


def is_flat(gamma, cfg=DEFAULT_TOLERANCES):
    """ """
    entries = gamma.entries if isinstance(gamma, SortedVector) else np.asarray(gamma)
    if entries.size == 0:
        return True
    top = float(np.max(entries))
    return bool(top - float(np.min(entries)) <= cfg.flat_rel * max(1.0, top))


def spectra_of_partition(partition, dims):
    """Water-filling of every column (sorted) in its dimension."""
    entries = partition.entries if isinstance(partition, WeightPartition) else np.asarray(partition)
    if entries.shape[1] != len(dims):
        raise DimensionError(
            "partition has "
            + str(entries.shape[1])
            + " columns for "
            + str(len(dims))
            + " dimensions."
        )
    return tuple(
        water_fill(descending(entries[:, j]), dims[j]).gamma for j in range(len(dims))
    )


def dimension_counts(dims):
    """h_i = #{j : d_j ≥ i} for i = 1..max(d)."""
    dims = np.asarray(dims, dtype=int)
    return np.array([int(np.sum(dims >= i)) for i in range(1, int(dims.max()) + 1)])


def block_multiplicities(cuts, dims):
    """r_ℓ = Σ_j (min{g_ℓ, d_j} - g_{ℓ-1})^+."""
    dims = np.asarray(dims, dtype=int)
    mults = []
    previous = 0
    for cut in cuts:
        mults.append(int(np.sum(np.maximum(np.minimum(cut, dims) - previous, 0))))
        previous = int(cut)
    return np.array(mults, dtype=int)


def extract_blocks(spectra, dims, alpha, cfg=DEFAULT_TOLERANCES):
    """Block form of Λ from the first spectrum, checked against α."""
    alpha = _alpha_entries(alpha)
    top = spectra[0].entries
    h = dimension_counts(dims)
    if top.size != h.size:
        raise StructureError(
            "extract_blocks: first spectrum has length "
            + str(top.size)
            + ", largest dimension is "
            + str(h.size)
            + "."
        )
    # Group equal adjacent levels.
    cuts = []
    for i in range(1, top.size):
        if abs(top[i] - top[i - 1]) > cfg.merge_rel * max(1.0, abs(top[i - 1])):
            cuts.append(i)
    cuts.append(top.size)
    mults = block_multiplicities(cuts, dims)
    scale = max(1.0, math.fsum(alpha))
    levels = []
    start = 0
    for index, cut in enumerate(cuts):
        if int(np.sum(h[start:cut])) != int(mults[index]):
            raise StructureError(
                "extract_blocks: multiplicity mismatch in block " + str(index + 1) + "."
            )
        mass = math.fsum(h[start:cut] * top[start:cut])
        end = alpha.size if index == len(cuts) - 1 else cut
        target = math.fsum(alpha[start:end])
        if abs(mass - target) > cfg.structure_rel * scale:
            raise StructureError(
                "extract_blocks: block "
                + str(index + 1)
                + " carries "
                + str(mass)
                + " but the weights give "
                + str(target)
                + "."
            )
        levels.append(mass / mults[index])
        start = cut
    levels = np.array(levels)
    if levels.size > 1 and np.any(np.diff(levels) >= 0.0):
        raise StructureError("extract_blocks: levels not strictly decreasing.")
    if int(np.sum(mults)) != int(np.sum(dims)):
        raise StructureError("extract_blocks: multiplicities do not add up to |d|.")
    return BlockSpectrum(
        p=len(cuts),
        levels=levels,
        mults=mults,
        cuts=np.array(cuts, dtype=int),
        h=h,
    )


def _alpha_entries(alpha):
    if isinstance(alpha, ProblemInput):
        return alpha.alpha.entries
    if isinstance(alpha, SortedVector):
        return alpha.entries
    return np.asarray(alpha, dtype=float)


class PartitionSolver(object):
    """ """

    def __init__(self, logger="DefaultLogger"):
        """ """
        self.logger_name = logger
        self.logger = logging.getLogger(logger)

    def solve(self, problem, cfg: Optional[ToleranceConfig] = None):
        """Optimal partition, spectra, t-sequence and block structure."""
        cfg = cfg or DEFAULT_TOLERANCES
        try:
            alpha = problem.alpha.entries
            dims = problem.dims
            columns = [alpha.copy()]
            t_seq = []
            stop_iteration = 0
            for level in range(2, problem.m + 1):
                matrix, t_seq, stop_iteration = self.solve_level(
                    columns, alpha, dims[:level], cfg
                )
                columns = [matrix[:, j] for j in range(level)]
            partition = WeightPartition(entries=np.column_stack(columns))
            spectra = spectra_of_partition(partition, dims)
            lambda_sorted = descending(np.concatenate([s.entries for s in spectra]))
            blocks = extract_blocks(spectra, dims, alpha, cfg)
            self.logger.debug(
                "PartitionSolver: solved n="
                + str(problem.n)
                + " dims="
                + str(list(dims))
                + ", p="
                + str(blocks.p)
                + "."
            )
            return PartitionSolution(
                problem=problem,
                partition=partition,
                spectra=spectra,
                t_seq=np.array(t_seq, dtype=float),
                stop_iteration=stop_iteration,
                lambda_sorted=lambda_sorted,
                blocks=blocks,
            )
        except OptFrameError as e:
            # Logging error.
            self.logger.error("PartitionSolver: solve: " + str(e))
            raise

    def solve_level(self, columns, alpha, dims, cfg):
        """One recursion level: columns for d_1..d_{m-1} to columns for d_1..d_m."""
        families = build_families(columns, dims[:-1])
        n = alpha.size
        m = len(dims)
        d_m = dims[-1]
        result = np.zeros((n, m))
        t_seq = []
        for row in range(d_m):
            t = find_t(families, alpha, d_m, cfg, row=row)
            t_seq.append(t)
            block = np.column_stack(
                [deform_at(fam, t) for fam in families]
                + [residual_column(families, alpha, t, cfg)]
            )
            dim = d_m - row
            tail = water_fill(descending(block[row:, -1]), dim).gamma
            if dim == 1 or is_flat(tail, cfg):
                result[row:, :] = block[row:, :]
                self.logger.debug(
                    "PartitionSolver: level "
                    + str(m)
                    + " stopped at row "
                    + str(row + 1)
                    + ", t="
                    + str(t)
                    + "."
                )
                return result, t_seq, row + 1
            result[row, :] = block[row, :]
        # Unreachable: the last row has dimension 1.
        raise InternalInvariantViolation("solve_level: no stopping row found.")

    def verify(self, problem, solution, cfg: Optional[ToleranceConfig] = None):
        """ """
        report = verify_solution(problem, solution, cfg)
        if report.passed:
            self.logger.debug("PartitionSolver: verification passed.")
        else:
            self.logger.info(
                "PartitionSolver: verification failed: " + ", ".join(report.failed)
            )
        return report


def solve(problem, cfg: Optional[ToleranceConfig] = None):
    """ """
    return PartitionSolver().solve(problem, cfg)


def verify_solution(problem, solution, cfg: Optional[ToleranceConfig] = None):
    """Report on the structure identities of a (possibly edited) solution."""
    cfg = cfg or DEFAULT_TOLERANCES
    alpha = problem.alpha.entries
    dims = problem.dims
    entries = solution.partition.entries
    checks = []

    # Row sums.
    gaps = np.abs(solution.partition.row_sums - alpha)
    limits = np.array([cfg.majorization_tol(a) for a in alpha])
    checks.append(
        CheckResult(
            name="row_sums",
            passed=bool(entries.shape == (problem.n, problem.m) and np.all(gaps <= limits)),
            detail="max deviation " + str(float(gaps.max())),
        )
    )
    floor = -cfg.clamp_tol(alpha[0])
    checks.append(
        CheckResult(
            name="nonnegative",
            passed=bool(entries.min() >= floor),
            detail="min entry " + str(float(entries.min())),
        )
    )

    # Spectra re-derived from the partition.
    try:
        spectra = spectra_of_partition(np.maximum(entries, 0.0), dims)
    except OptFrameError as e:
        checks.append(CheckResult(name="column_waterfill", passed=False, detail=str(e)))
        return VerificationReport(checks=checks)
    recorded_ok = len(solution.spectra) == len(spectra)
    worst = 0.0
    if recorded_ok:
        for recorded, derived in zip(solution.spectra, spectra):
            if recorded.entries.size != derived.entries.size:
                recorded_ok = False
                break
            worst = max(worst, float(np.max(np.abs(recorded.entries - derived.entries))))
    top = float(spectra[0].entries[0])
    checks.append(
        CheckResult(
            name="column_waterfill",
            passed=bool(recorded_ok and worst <= cfg.majorization_tol(top)),
            detail="max deviation " + str(worst),
        )
    )

    # Interleaving, γ_{ir} = γ_{is} for r ≤ s and i ≤ d_s.
    worst = 0.0
    for s in range(len(spectra)):
        for r in range(s):
            d_s = spectra[s].entries.size
            gap = np.abs(spectra[r].entries[:d_s] - spectra[s].entries)
            worst = max(worst, float(gap.max()))
    checks.append(
        CheckResult(
            name="interleaving",
            passed=bool(worst <= cfg.structure_rel * max(1.0, top)),
            detail="max deviation " + str(worst),
        )
    )

    # t-sequence.
    t_seq = np.asarray(solution.t_seq, dtype=float)
    t_ok = bool(len(t_seq) == solution.stop_iteration)
    if t_seq.size:
        t_ok = t_ok and bool(t_seq.min() >= 0.0)
        t_ok = t_ok and bool(np.all(np.diff(t_seq) <= cfg.t_tol(t_seq[0]) * 10.0))
    checks.append(
        CheckResult(name="t_monotone", passed=t_ok, detail=str(t_seq.tolist()))
    )

    # Rows before the stopping row split evenly.
    worst = 0.0
    for i in range(max(solution.stop_iteration - 1, 0)):
        gap = np.abs(entries[i, :] - alpha[i] / problem.m)
        worst = max(worst, float(gap.max()) / max(1.0, alpha[i]))
    checks.append(
        CheckResult(
            name="top_rows",
            passed=bool(worst <= cfg.flat_rel),
            detail="max relative deviation " + str(worst),
        )
    )

    try:
        blocks = extract_blocks(spectra, dims, alpha, cfg)
        checks.append(
            CheckResult(
                name="block_identities",
                passed=True,
                detail="p=" + str(blocks.p),
            )
        )
    except StructureError as e:
        checks.append(CheckResult(name="block_identities", passed=False, detail=str(e)))

    smallest = min(float(s.entries.min()) for s in spectra)
    checks.append(
        CheckResult(
            name="lambda_positive",
            passed=bool(smallest > 0.0),
            detail="smallest eigenvalue " + str(smallest),
        )
    )
    return VerificationReport(checks=checks)
