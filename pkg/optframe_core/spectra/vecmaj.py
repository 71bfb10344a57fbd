#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

"""
Sorted vectors and (sub)majorization.

x is majorized by y (x ≺ y) when the partial sums of x sorted non-increasing
never exceed those of y, and both have the same trace. Submajorization drops
the trace condition. Lengths may differ; partial sums are compared up to the
shorter length and traces over full vectors.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from optframe_core.common.errors import (
    InvalidInput,
    DimensionError,
    TraceMismatch,
    DomainError,
)


def as_finite_array(x, name="vector"):
    """ """
    try:
        array = np.array(x, dtype=float).ravel()
    except (TypeError, ValueError) as e:
        raise InvalidInput(name + ": not a real array: " + str(e))
    if not np.all(np.isfinite(array)):
        raise InvalidInput(name + ": NaN or infinite entry.")
    return array


class SortedVector(BaseModel):
    """Real vector with a sort-order flag."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    entries: np.ndarray
    descending: bool = True

    @field_validator("entries", mode="before")
    @classmethod
    def check_entries(cls, value):
        return as_finite_array(value, name="SortedVector")

    @model_validator(mode="after")
    def check_order(self):
        if self.descending and self.entries.size > 1:
            if np.any(np.diff(self.entries) > 0.0):
                raise InvalidInput("SortedVector: entries not non-increasing.")
        return self

    def __len__(self):
        return int(self.entries.size)

    @property
    def trace(self):
        return float(np.sum(self.entries))


class BlockVector(BaseModel):
    """(γ_1 𝟙_{r_1}, …, γ_p 𝟙_{r_p}) with γ_1 > … > γ_p."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    levels: np.ndarray
    multiplicities: np.ndarray

    @field_validator("levels", mode="before")
    @classmethod
    def check_levels(cls, value):
        levels = as_finite_array(value, name="BlockVector.levels")
        if levels.size > 1 and np.any(np.diff(levels) >= 0.0):
            raise InvalidInput("BlockVector: levels not strictly decreasing.")
        return levels

    @field_validator("multiplicities", mode="before")
    @classmethod
    def check_multiplicities(cls, value):
        mults = np.array(value).ravel()
        if mults.size and (
            np.any(mults != np.round(mults)) or np.any(mults < 1)
        ):
            raise InvalidInput("BlockVector: multiplicities must be positive integers.")
        return mults.astype(int)

    @model_validator(mode="after")
    def check_sizes(self):
        if self.levels.size != self.multiplicities.size:
            raise InvalidInput("BlockVector: levels and multiplicities differ in size.")
        return self

    @property
    def length(self):
        return int(np.sum(self.multiplicities))

    @property
    def trace(self):
        return float(np.dot(self.levels, self.multiplicities))

    @property
    def cut_points(self):
        """s_k = r_1 + … + r_k."""
        return np.cumsum(self.multiplicities)


def sort_desc(x):
    """Stable non-increasing sort.

    Returns (SortedVector, perm) with sorted[perm[i]] == x[i].
    """
    array = as_finite_array(x, name="sort_desc")
    order = np.argsort(-array, kind="stable")
    perm = np.argsort(order, kind="stable")
    return SortedVector(entries=array[order]), perm


def descending(x):
    """ """
    array = as_finite_array(x)
    return -np.sort(-array, kind="stable")


def pad(x, n):
    """Sort non-increasing and append zeros up to length n."""
    array = descending(x)
    if n < array.size:
        raise DimensionError(
            "pad: target length " + str(n) + " below vector length " + str(array.size)
        )
    return np.concatenate([array, np.zeros(n - array.size)])


def expand(block):
    """ """
    return SortedVector(entries=np.repeat(block.levels, block.multiplicities))


def compensated_cumsum(x):
    """Partial sums with Kahan-Neumaier compensation."""
    values = np.asarray(x, dtype=float)
    result = np.empty(values.size)
    total = 0.0
    compensation = 0.0
    for i, value in enumerate(values):
        value = float(value)
        temp = total + value
        if abs(total) >= abs(value):
            compensation += (total - temp) + value
        else:
            compensation += (value - temp) + total
        total = temp
        result[i] = total + compensation
    return result


def default_tol(y):
    """1e-9 * max(1, |tr y|)."""
    return 1.0e-9 * max(1.0, abs(float(np.sum(y))))


def submajorizes(y, x, tol=None):
    """True iff x is submajorized by y."""
    y_sorted = descending(y)
    x_sorted = descending(x)
    if tol is None:
        tol = default_tol(y_sorted)
    k = min(y_sorted.size, x_sorted.size)
    if k == 0:
        return True
    x_sums = compensated_cumsum(x_sorted[:k])
    y_sums = compensated_cumsum(y_sorted[:k])
    return bool(np.all(x_sums <= y_sums + tol))


def majorizes(y, x, tol=None):
    """True iff x is majorized by y (x ≺ y)."""
    y_sorted = descending(y)
    x_sorted = descending(x)
    if tol is None:
        tol = default_tol(y_sorted)
    trace_gap = abs(_full_sum(x_sorted) - _full_sum(y_sorted))
    if trace_gap > tol:
        return False
    return submajorizes(y_sorted, x_sorted, tol=tol)


def block_majorizes(a, b, tol=None):
    """True iff the block vector a is majorized by b.

    Only the partial sums at the block ends s_1, …, s_{p-1} are compared;
    for block vectors that is equivalent to the full test.
    """
    b_sorted = descending(b)
    if tol is None:
        tol = default_tol(b_sorted)
    trace_gap = abs(a.trace - _full_sum(b_sorted))
    if trace_gap > tol:
        raise TraceMismatch(
            "block_majorizes: traces differ by " + str(trace_gap) + "."
        )
    b_sums = compensated_cumsum(b_sorted)
    a_sums = compensated_cumsum(a.levels * a.multiplicities)
    cuts = a.cut_points
    for k in range(a.levels.size - 1):
        s_k = int(cuts[k])
        b_partial = b_sums[s_k - 1] if s_k <= b_sums.size else b_sums[-1]
        if a_sums[k] > b_partial + tol:
            return False
    return True


def trace_phi(x, phi):
    """tr φ(x) = Σ φ(x_i)."""
    array = as_finite_array(x, name="trace_phi")
    try:
        with np.errstate(divide="raise", invalid="raise", over="raise"):
            values = np.asarray(phi(array), dtype=float)
    except (FloatingPointError, ZeroDivisionError, ValueError) as e:
        raise DomainError("trace_phi: outside the domain of phi: " + str(e))
    if not np.all(np.isfinite(values)):
        raise DomainError("trace_phi: phi is not finite on the given vector.")
    return _full_sum(values.ravel())


def _full_sum(x):
    if x.size == 0:
        return 0.0
    return float(compensated_cumsum(x)[-1])
