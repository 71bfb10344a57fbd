#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

from pydantic import BaseModel, ConfigDict, Field


class ToleranceConfig(BaseModel):
    """Numerical tolerances shared by all modules.

    Relative values are scaled by max(1, magnitude) where they are used.
    """

    model_config = ConfigDict(frozen=True)

    majorization_rel: float = Field(default=1.0e-9, ge=0.0)
    t_rel: float = Field(default=1.0e-12, gt=0.0)
    flat_rel: float = Field(default=1.0e-9, ge=0.0)
    merge_rel: float = Field(default=1.0e-7, ge=0.0)
    clamp_abs: float = Field(default=1.0e-12, ge=0.0)
    structure_rel: float = Field(default=1.0e-8, ge=0.0)
    max_bisect_iter: int = Field(default=200, ge=1)
    norm_rel: float = Field(default=1.0e-10, ge=0.0)
    spectrum_rel: float = Field(default=1.0e-8, ge=0.0)
    symmetry_rel: float = Field(default=1.0e-10, ge=0.0)
    jacobi_max_sweeps: int = Field(default=100, ge=1)

    @classmethod
    def from_config(cls, config, **overrides):
        """Build from a loaded Configuration. None overrides are ignored."""
        values = {
            "majorization_rel": config.get("tolerances.majorization_rel", default=None),
            "t_rel": config.get("tolerances.t_rel", default=None),
            "flat_rel": config.get("tolerances.flat_rel", default=None),
            "merge_rel": config.get("tolerances.merge_rel", default=None),
            "clamp_abs": config.get("tolerances.clamp_abs", default=None),
            "structure_rel": config.get("tolerances.structure_rel", default=None),
            "max_bisect_iter": config.get("tolerances.max_bisect_iter", default=None),
            "norm_rel": config.get("synthesis.norm_rel", default=None),
            "spectrum_rel": config.get("synthesis.spectrum_rel", default=None),
            "symmetry_rel": config.get("synthesis.symmetry_rel", default=None),
            "jacobi_max_sweeps": config.get("synthesis.jacobi_max_sweeps", default=None),
        }
        values.update(overrides)
        return cls(**{key: value for key, value in values.items() if value is not None})

    def majorization_tol(self, trace):
        """ """
        return self.majorization_rel * max(1.0, abs(float(trace)))

    def t_tol(self, upper):
        """ """
        return self.t_rel * max(1.0, abs(float(upper)))

    def clamp_tol(self, scale):
        """ """
        return self.clamp_abs * max(1.0, abs(float(scale)))


DEFAULT_TOLERANCES = ToleranceConfig()
