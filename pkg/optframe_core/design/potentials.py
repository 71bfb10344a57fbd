#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

"""
Convex potentials P_φ(F) = tr φ(S_F), joint potentials over designs and the
concatenated spectrum vector Λ_Φ. A joint potential only depends on Λ_Φ, so
majorization of Λ vectors orders every convex potential at once.
"""

from typing import Callable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from optframe_core.common.errors import InvalidInput, DomainError
from optframe_core.spectra.vecmaj import SortedVector, descending, trace_phi
from optframe_core.design.synth import FrameFamily, frame_operator, sym_eigenvalues


class Potential(BaseModel):
    """Convex φ on [domain_min, ∞) with metadata."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    name: str
    phi: Callable
    domain_min: float = 0.0
    strictly_convex: bool = True
    increasing: bool = True


class SpectrumVector(BaseModel):
    """Λ_Φ = (λ(S_1), …, λ(S_m))."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    per_group: Tuple[SortedVector, ...]

    @property
    def concatenated(self):
        if not self.per_group:
            return np.zeros(0)
        return np.concatenate([group.entries for group in self.per_group])

    @property
    def sorted(self):
        return descending(self.concatenated)

    def __len__(self):
        return int(self.concatenated.size)


def power_potential(p, name=None):
    """x^p, convex for p ≥ 1."""
    if p < 1.0:
        raise InvalidInput("power_potential: exponent below 1 is not convex.")
    return Potential(
        name=name or "pow" + str(p),
        phi=lambda x: np.power(x, p),
        domain_min=0.0,
        strictly_convex=p > 1.0,
    )


FRAME_POTENTIAL = Potential(name="fp", phi=np.square)
MSE_POTENTIAL = Potential(
    name="mse", phi=np.reciprocal, domain_min=1.0e-12, increasing=False
)

POTENTIALS = {
    "fp": FRAME_POTENTIAL,
    "mse": MSE_POTENTIAL,
    "cube": power_potential(3.0, name="cube"),
    "pow1.5": power_potential(1.5, name="pow1.5"),
    "exp": Potential(name="exp", phi=np.exp),
}


def get_potential(name):
    """ """
    if isinstance(name, Potential):
        return name
    try:
        return POTENTIALS[str(name).lower()]
    except KeyError:
        raise InvalidInput(
            "Unknown potential: "
            + str(name)
            + ". Available: "
            + ", ".join(sorted(POTENTIALS))
            + "."
        )


def _spectrum_entries(value, eigen=sym_eigenvalues):
    if isinstance(value, FrameFamily):
        value = eigen(frame_operator(value))
    if isinstance(value, SortedVector):
        return value.entries
    if isinstance(value, SpectrumVector):
        return value.concatenated
    return np.asarray(value, dtype=float).ravel()


def potential_of(value, pot):
    """Σ φ(λ_i) for a spectrum, a Λ vector or a frame family."""
    pot = get_potential(pot)
    spectrum = np.array(_spectrum_entries(value), dtype=float)
    if spectrum.size == 0:
        return 0.0
    # Eigenvalue roundoff below zero.
    floor = -1.0e-12 * max(1.0, float(np.max(np.abs(spectrum))))
    spectrum[(spectrum < 0.0) & (spectrum >= floor)] = 0.0
    if float(np.min(spectrum)) < pot.domain_min:
        raise DomainError(
            "potential_of: "
            + pot.name
            + " undefined at "
            + str(float(np.min(spectrum)))
            + " (frame operator singular or negative)."
        )
    return trace_phi(spectrum, pot.phi)


def lambda_vector(design, eigen=sym_eigenvalues):
    """Spectra of the frame operators of a design."""
    groups = []
    for family in design:
        values = eigen(frame_operator(family))
        if not isinstance(values, SortedVector):
            values = SortedVector(entries=descending(values))
        groups.append(values)
    return SpectrumVector(per_group=tuple(groups))


def joint_potential(design, pot, eigen=sym_eigenvalues):
    """Σ_j P_φ(F_j); a SpectrumVector is used as is."""
    if isinstance(design, SpectrumVector):
        return sum(potential_of(group, pot) for group in design.per_group)
    return sum(potential_of(group, pot) for group in lambda_vector(design, eigen).per_group)


def _block_bounds(dims, size):
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims) or sum(dims) != size:
        raise InvalidInput(
            "Dimensions " + str(dims) + " do not split a space of dimension " + str(size) + "."
        )
    bounds = np.concatenate([[0], np.cumsum(dims)])
    return list(zip(bounds[:-1], bounds[1:]))


def pinching(matrix, dims):
    """C_d(A) = Σ_j P_j A P_j, the block diagonal part of A."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidInput("pinching: expected a square matrix.")
    result = np.zeros_like(matrix)
    for start, end in _block_bounds(dims, matrix.shape[0]):
        result[start:end, start:end] = matrix[start:end, start:end]
    return result


def assemble_global(design):
    """Stack a design into one sequence of n vectors in ℝ^{|d|}."""
    if not design:
        raise InvalidInput("assemble_global: empty design.")
    counts = {family.count for family in design}
    if len(counts) != 1:
        raise InvalidInput("assemble_global: families have different sizes.")
    return FrameFamily(vectors=np.vstack([family.vectors for family in design]))


def pinched_potential(global_seq, dims, pot, eigen=sym_eigenvalues):
    """tr φ(C_d(S_G)), computed block by block."""
    vectors = global_seq.vectors if isinstance(global_seq, FrameFamily) else np.asarray(global_seq)
    operator = frame_operator(vectors)
    total = 0.0
    for start, end in _block_bounds(dims, operator.shape[0]):
        total += potential_of(eigen(operator[start:end, start:end]), pot)
    return total


def is_numerically_convex(pot, samples=1000, upper=10.0, seed=0):
    """Midpoint convexity check on random pairs of the domain."""
    pot = get_potential(pot)
    rng = np.random.default_rng(seed)
    low = max(pot.domain_min, 1.0e-3)
    x = rng.uniform(low, upper, samples)
    y = rng.uniform(low, upper, samples)
    middle = pot.phi((x + y) / 2.0)
    average = (pot.phi(x) + pot.phi(y)) / 2.0
    slack = 1.0e-12 * np.maximum(1.0, np.abs(average))
    return bool(np.all(middle <= average + slack))
