#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

# Exit codes used by the command line front end.
EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class OptFrameError(Exception):
    exit_code = EXIT_INTERNAL


# Input errors.


class InvalidInput(OptFrameError):
    exit_code = EXIT_INPUT


class DimensionError(OptFrameError):
    exit_code = EXIT_INPUT


class RangeError(OptFrameError):
    exit_code = EXIT_INPUT


class TraceMismatch(OptFrameError):
    exit_code = EXIT_INPUT


class DomainError(OptFrameError):
    """Value outside the domain of a potential, e.g. 1/x on a singular spectrum."""

    exit_code = EXIT_INPUT


class InfeasibleDesign(OptFrameError):
    """Norms not majorized by the (zero padded) spectrum."""

    exit_code = EXIT_INPUT


# Internal errors. Signal a bug, not bad input.


class InternalInvariantViolation(OptFrameError):
    exit_code = EXIT_INTERNAL


class ConvergenceError(OptFrameError):
    exit_code = EXIT_INTERNAL


class StructureError(OptFrameError):
    exit_code = EXIT_INTERNAL
