#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

import numpy as np
import pytest

from optframe_core.design.partition import ProblemInput, solve

# Weights and dimensions of the worked examples.
SMALL_ALPHA = [10.0, 10.0, 10.0, 1.0, 1.0]
SMALL_DIMS = [4, 2]
ELEVEN_ALPHA = [9.0, 8.0, 7.0, 5.0, 4.0, 2.5, 2.0, 2.0, 1.5, 0.6, 0.5]
ELEVEN_SMALLER_ALPHA = [8.5, 7.0, 6.0, 4.0, 3.8, 2.0, 1.6, 1.4, 1.0, 0.5, 0.4]
ELEVEN_DIMS = [7, 5, 3]
EIGHT_ALPHA = [20.0, 19.5, 10.0, 5.0, 4.5, 3.0, 2.4, 2.0]
EIGHT_DIMS = [5, 4, 4, 3, 2]
UNIFORM_ALPHA = [1.0] * 6
UNIFORM_DIMS = [4, 2]

EXAMPLES = {
    "small": (SMALL_ALPHA, SMALL_DIMS),
    "eleven": (ELEVEN_ALPHA, ELEVEN_DIMS),
    "eleven_smaller": (ELEVEN_SMALLER_ALPHA, ELEVEN_DIMS),
    "eight": (EIGHT_ALPHA, EIGHT_DIMS),
    "uniform": (UNIFORM_ALPHA, UNIFORM_DIMS),
}


def random_instance(rng, max_n=12, max_m=5):
    """Random sorted weights and dimensions with d_1 <= n."""
    n = int(rng.integers(1, max_n + 1))
    m = int(rng.integers(1, max_m + 1))
    alpha = np.round(rng.uniform(0.1, 10.0, n), 3)
    dims = rng.integers(1, n + 1, m)
    return ProblemInput.from_user(alpha, dims)


@pytest.fixture
def small_problem():
    return ProblemInput.from_user(SMALL_ALPHA, SMALL_DIMS)


@pytest.fixture
def small_solution(small_problem):
    return solve(small_problem)


@pytest.fixture(params=sorted(EXAMPLES))
def example_problem(request):
    alpha, dims = EXAMPLES[request.param]
    return ProblemInput.from_user(alpha, dims)


@pytest.fixture
def rng():
    return np.random.default_rng(20260)


def robin_hood(values, rng, steps=None):
    """Random transfers from larger to smaller entries; the result is majorized by values."""
    values = np.array(values, dtype=float)
    n = values.size
    for _ in range(3 * n if steps is None else steps):
        i, j = rng.integers(0, n, 2)
        if values[i] > values[j]:
            share = rng.uniform(0.0, 0.5) * (values[i] - values[j])
            values[i] -= share
            values[j] += share
    return values
