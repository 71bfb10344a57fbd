#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

"""
Frame families with prescribed norms and frame operator spectrum.

Construction: start from T = diag(√λ, 0, …) (n orthogonal columns, frame
operator diag(λ)). Rotating two orthogonal columns keeps the frame operator
and moves squared norm between them, so a chain of Givens rotations sets the
column norms to the targets one at a time, largest target first. The rows
past d stay zero and are dropped.
"""

import logging
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from optframe_core.common.errors import (
    OptFrameError,
    InvalidInput,
    DimensionError,
    DomainError,
    InfeasibleDesign,
    ConvergenceError,
)
from optframe_core.common.tolerances import ToleranceConfig, DEFAULT_TOLERANCES
from optframe_core.spectra.vecmaj import SortedVector, as_finite_array, descending, majorizes


class FrameFamily(BaseModel):
    """n vectors in ℝ^d, stored as the d×n synthesis matrix."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    vectors: np.ndarray

    @field_validator("vectors", mode="before")
    @classmethod
    def check_vectors(cls, value):
        vectors = np.array(value, dtype=float)
        if vectors.ndim != 2:
            raise InvalidInput("FrameFamily: expected a d×n matrix.")
        if not np.all(np.isfinite(vectors)):
            raise InvalidInput("FrameFamily: NaN or infinite entry.")
        return vectors

    @property
    def dim(self):
        return int(self.vectors.shape[0])

    @property
    def count(self):
        return int(self.vectors.shape[1])

    @property
    def norms_sq(self):
        return np.sum(self.vectors**2, axis=0)


class FamilyCheck(BaseModel):
    """ """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    norms_sq: np.ndarray
    spectrum: np.ndarray
    norm_deviation: float
    spectrum_deviation: float
    passed: bool


def frame_operator(family):
    """S = T Tᵀ."""
    vectors = family.vectors if isinstance(family, FrameFamily) else np.asarray(family)
    operator = vectors @ vectors.T
    return 0.5 * (operator + operator.T)


def _check_symmetric(matrix, cfg):
    try:
        values = np.array(matrix, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidInput("sym_eigenvalues: not a real matrix: " + str(e))
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise InvalidInput("sym_eigenvalues: expected a square matrix.")
    if not np.all(np.isfinite(values)):
        raise InvalidInput("sym_eigenvalues: NaN or infinite entry.")
    scale = max(1.0, float(np.linalg.norm(values)))
    if float(np.linalg.norm(values - values.T)) > cfg.symmetry_rel * scale:
        raise InvalidInput("sym_eigenvalues: matrix is not symmetric.")
    return values


def jacobi_eigh(matrix, tol=1.0e-14, max_sweeps=None, cfg: Optional[ToleranceConfig] = None):
    """Cyclic Jacobi: (eigenvalues, eigenvectors) with S = V diag(values) Vᵀ.

    Eigenvalues are in diagonal order, not sorted.
    """
    cfg = cfg or DEFAULT_TOLERANCES
    if max_sweeps is None:
        max_sweeps = cfg.jacobi_max_sweeps
    a = _check_symmetric(matrix, cfg).copy()
    a = 0.5 * (a + a.T)
    size = a.shape[0]
    v = np.eye(size)
    threshold = tol * float(np.linalg.norm(a))
    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            return np.diag(a).copy(), v
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                phi = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if phi >= 0.0 else -1.0
                t = sign / (abs(phi) + math.hypot(phi, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    if _off_norm(a) <= threshold:
        return np.diag(a).copy(), v
    raise ConvergenceError(
        "jacobi_eigh: off-diagonal norm "
        + str(_off_norm(a))
        + " after "
        + str(max_sweeps)
        + " sweeps."
    )


def _off_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def sym_eigenvalues(matrix, tol=1.0e-14, cfg: Optional[ToleranceConfig] = None):
    """Eigenvalues of a symmetric matrix, non-increasing."""
    values, _ = jacobi_eigh(matrix, tol=tol, cfg=cfg)
    return SortedVector(entries=descending(values))


def schur_horn_vectors(norms_sq, spectrum, tol=None, cfg: Optional[ToleranceConfig] = None):
    """Family with ‖f_i‖² = norms_sq[i] and λ(S_F) = spectrum.

    norms_sq may come in any order; vector i carries norms_sq[i].
    """
    cfg = cfg or DEFAULT_TOLERANCES
    norms = norms_sq.entries if isinstance(norms_sq, SortedVector) else norms_sq
    norms = as_finite_array(norms, name="norms_sq")
    values = spectrum.entries if isinstance(spectrum, SortedVector) else spectrum
    values = descending(values)
    n = norms.size
    d = values.size
    if d > n:
        raise DimensionError(
            "schur_horn_vectors: "
            + str(d)
            + " eigenvalues for "
            + str(n)
            + " vectors."
        )
    if np.any(norms < 0.0) or np.any(values < 0.0):
        raise InfeasibleDesign("schur_horn_vectors: negative norm or eigenvalue.")
    padded = np.concatenate([values, np.zeros(n - d)])
    if tol is None:
        tol = cfg.majorization_tol(np.sum(padded))
    if not majorizes(padded, norms, tol=tol):
        raise InfeasibleDesign(
            "schur_horn_vectors: norms are not majorized by the spectrum."
        )

    # Largest target first, stable among equal targets.
    targets = np.argsort(-norms, kind="stable")
    x = padded.copy()
    basis = np.eye(n)
    active = list(range(n))
    assignment = np.empty(n, dtype=int)
    for target in targets[:-1]:
        value = norms[target]
        positions = sorted(active, key=lambda k: -x[k])
        idx = next((i for i, k in enumerate(positions) if x[k] <= value), len(positions) - 1)
        if idx == 0:
            fixed = positions[0]
        else:
            p = positions[idx - 1]
            q = positions[idx]
            span = x[p] - x[q]
            c_sq = 1.0 if span <= 0.0 else min(max((value - x[q]) / span, 0.0), 1.0)
            c = math.sqrt(c_sq)
            s = math.sqrt(1.0 - c_sq)
            col_p = basis[:, p].copy()
            col_q = basis[:, q].copy()
            basis[:, p] = c * col_p + s * col_q
            basis[:, q] = -s * col_p + c * col_q
            x[q] = x[p] + x[q] - value
            x[p] = value
            fixed = p
        assignment[fixed] = target
        active.remove(fixed)
    assignment[active[0]] = targets[-1]

    synthesis = (np.sqrt(padded)[:, None] * basis)[:d]
    vectors = np.empty((d, n))
    vectors[:, assignment] = synthesis
    return FrameFamily(vectors=vectors)


def verify_family(family, norms_sq, spectrum, cfg: Optional[ToleranceConfig] = None):
    """Achieved norms and spectrum against the prescribed ones."""
    cfg = cfg or DEFAULT_TOLERANCES
    norms = np.asarray(
        norms_sq.entries if isinstance(norms_sq, SortedVector) else norms_sq, dtype=float
    )
    expected = descending(spectrum.entries if isinstance(spectrum, SortedVector) else spectrum)
    achieved_norms = family.norms_sq
    achieved_spectrum = sym_eigenvalues(frame_operator(family), cfg=cfg).entries
    if achieved_norms.size != norms.size or achieved_spectrum.size != expected.size:
        return FamilyCheck(
            norms_sq=achieved_norms,
            spectrum=achieved_spectrum,
            norm_deviation=math.inf,
            spectrum_deviation=math.inf,
            passed=False,
        )
    norm_deviation = float(
        np.max(np.abs(achieved_norms - norms) / np.maximum(1.0, norms), initial=0.0)
    )
    spectrum_deviation = float(np.max(np.abs(achieved_spectrum - expected), initial=0.0))
    spectrum_scale = max(1.0, float(expected[0])) if expected.size else 1.0
    passed = bool(
        norm_deviation <= cfg.norm_rel
        and spectrum_deviation <= cfg.spectrum_rel * spectrum_scale
    )
    return FamilyCheck(
        norms_sq=achieved_norms,
        spectrum=achieved_spectrum,
        norm_deviation=norm_deviation,
        spectrum_deviation=spectrum_deviation,
        passed=passed,
    )


def canonical_dual(family, cfg: Optional[ToleranceConfig] = None):
    """S⁻¹ f_i for a frame (S invertible)."""
    values, vectors = jacobi_eigh(frame_operator(family), cfg=cfg)
    top = float(np.max(values)) if values.size else 0.0
    if values.size == 0 or float(np.min(values)) <= 1.0e-12 * max(1.0, top):
        raise DomainError("canonical_dual: frame operator is singular, not a frame.")
    inverse = (vectors / values) @ vectors.T
    return FrameFamily(vectors=inverse @ family.vectors)


class FrameSynthesizer(object):
    """ """

    def __init__(self, logger="DefaultLogger"):
        """ """
        self.logger_name = logger
        self.logger = logging.getLogger(logger)

    def synthesize_partition(self, partition, spectra, cfg: Optional[ToleranceConfig] = None):
        """One family per column: norms from the column, spectrum given."""
        cfg = cfg or DEFAULT_TOLERANCES
        entries = np.asarray(
            partition.entries if hasattr(partition, "entries") else partition, dtype=float
        )
        design = []
        try:
            for j, spectrum in enumerate(spectra):
                norms = np.maximum(entries[:, j], 0.0)
                design.append(schur_horn_vectors(norms, spectrum, cfg=cfg))
                self.logger.debug(
                    "FrameSynthesizer: family "
                    + str(j + 1)
                    + " in dimension "
                    + str(design[-1].dim)
                    + "."
                )
        except OptFrameError as e:
            self.logger.error("FrameSynthesizer: synthesize: " + str(e))
            raise
        return design

    def synthesize(self, solution, cfg: Optional[ToleranceConfig] = None):
        """Φ^op of a solved partition."""
        return self.synthesize_partition(solution.partition, solution.spectra, cfg)

    def verify_design(self, design, partition, spectra, cfg: Optional[ToleranceConfig] = None) -> List[FamilyCheck]:
        """ """
        entries = np.asarray(
            partition.entries if hasattr(partition, "entries") else partition, dtype=float
        )
        checks = [
            verify_family(family, np.maximum(entries[:, j], 0.0), spectra[j], cfg)
            for j, family in enumerate(design)
        ]
        failed = [str(j + 1) for j, check in enumerate(checks) if not check.passed]
        if failed:
            self.logger.info(
                "FrameSynthesizer: families failing verification: " + ", ".join(failed)
            )
        return checks


def synthesize_design(solution, cfg: Optional[ToleranceConfig] = None):
    """ """
    return FrameSynthesizer().synthesize(solution, cfg)
