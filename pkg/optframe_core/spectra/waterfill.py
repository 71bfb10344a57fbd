#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

"""
Water-filling of a sorted non-negative vector in dimension d.

The first d entries are raised to a common water level c, the mass of the
entries after d fills the gap: Σ_{i≤d} (c - α_i)^+ = Σ_{i>d} α_i, and
γ_i = max(α_i, c). The level is the smallest flooded-segment mean
c = min_r Σ_{i≥r} α_i / (d - r + 1), which is exact (no iteration).
"""

import math
import numpy as np
from pydantic import BaseModel, ConfigDict

from optframe_core.common.errors import InvalidInput, DimensionError, RangeError
from optframe_core.spectra.vecmaj import SortedVector, as_finite_array, majorizes


class WaterFillResult(BaseModel):
    """gamma, water level and split_index (0-based first flooded entry)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    gamma: SortedVector
    level: float
    split_index: int

    @property
    def top(self):
        return float(self.gamma.entries[0])


class DeformationFamily(BaseModel):
    """a_i(t) = (min{t,c'}/c') · min{a'_i, max{t,c'}} for t in [0, γ'_1]."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    source: SortedVector
    dim: int
    source_fill: WaterFillResult

    @classmethod
    def build(cls, source, dim):
        """ """
        if not isinstance(source, SortedVector):
            source = SortedVector(entries=source)
        return cls(source=source, dim=dim, source_fill=water_fill(source, dim))

    @property
    def upper(self):
        """γ'_1, the end of the parameter range."""
        return self.source_fill.top


def _sorted_entries(alpha):
    if isinstance(alpha, SortedVector):
        if not alpha.descending:
            raise InvalidInput("water_fill: vector must be non-increasing.")
        return alpha.entries
    entries = as_finite_array(alpha, name="water_fill")
    if entries.size > 1 and np.any(np.diff(entries) > 0.0):
        raise InvalidInput("water_fill: vector must be non-increasing.")
    return entries


def water_level(entries, d):
    """Water level c and 0-based split index of a non-increasing array.

    No validation; callers check d and the sign of the entries.
    """
    n = entries.size
    candidates = np.empty(d)
    for r in range(d):
        candidates[r] = math.fsum(entries[r:n]) / (d - r)
    split_index = int(np.argmin(candidates))
    return float(candidates[split_index]), split_index


def water_fill(alpha, d):
    """ """
    entries = _sorted_entries(alpha)
    n = entries.size
    d = int(d)
    if d < 1 or d > n:
        raise DimensionError(
            "water_fill: dimension " + str(d) + " outside 1.." + str(n) + "."
        )
    if np.any(entries < 0.0):
        raise InvalidInput("water_fill: negative entry.")
    level, split_index = water_level(entries, d)
    gamma = np.maximum(entries[:d], level)
    gamma[split_index:] = level
    return WaterFillResult(
        gamma=SortedVector(entries=gamma), level=level, split_index=split_index
    )


def top_of_water_fill(entries, d):
    """γ_1 of the water-filling of any non-negative array (sorted here)."""
    values = -np.sort(-np.asarray(entries, dtype=float))
    level, _ = water_level(values, d)
    return max(float(values[0]), level)


def _check_parameter(fam, t):
    upper = fam.upper
    slack = 1.0e-9 * max(1.0, upper)
    if t < -slack or t > upper + slack:
        raise RangeError(
            "deform_at: t=" + str(t) + " outside [0, " + str(upper) + "]."
        )
    return min(max(float(t), 0.0), upper)


def deform_at(fam, t):
    """a(t) of the deformation family."""
    t = _check_parameter(fam, t)
    source = fam.source.entries
    level = fam.source_fill.level
    if level <= 0.0:
        # Zero source stays zero; otherwise the c' -> 0 limit.
        if t <= 0.0:
            return np.zeros(source.size)
        return np.minimum(source, t)
    return (min(t, level) / level) * np.minimum(source, max(t, level))


def deformed_spectrum(fam, t):
    """Water-filling of a(t) in dimension fam.dim, γ(t) = min(γ', t)."""
    t = _check_parameter(fam, t)
    return SortedVector(entries=np.minimum(fam.source_fill.gamma.entries, t))


def water_fill_is_minimal(alpha, d, beta, tol=None):
    """True when α ≺ β implies water_fill(α, d) ≺ β (vacuous otherwise)."""
    gamma = water_fill(alpha, d).gamma.entries
    if not majorizes(beta, _sorted_entries(alpha), tol=tol):
        return True
    return majorizes(beta, gamma, tol=tol)
