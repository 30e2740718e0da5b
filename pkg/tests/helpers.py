"""Shared helpers for the test suite."""

import numpy as np

from bergman_lab import CoefficientSeries, SpaceParams


def random_series(params: SpaceParams, rng: np.random.Generator) -> CoefficientSeries:
    shape = (params.degree_cap + 1, params.fiber_dim)
    c = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return CoefficientSeries(params, c)


def random_poly(rng: np.random.Generator, degree: int) -> np.ndarray:
    return rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
