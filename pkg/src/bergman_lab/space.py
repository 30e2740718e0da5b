"""Truncated model of the weighted Bergman space of vector-valued functions.

An analytic function f(z) = sum_n y_n z^n with coefficients y_n in C^d is
represented up to a truncation degree N by the array of its coefficients.
The weighted inner product is

    <f, g> = sum_n w_n <y_n, s_n>,      w_n = n! Gamma(2+a) / Gamma(n+2+a),

where a > -1 is the weight exponent of the measure (a+1)(1-|z|^2)^a dA(z)
on the unit disk and the fiber inner product <y, s> conjugates its second
argument.  The moment weights w_n are always computed by the exact
recurrence w_0 = 1, w_n = w_{n-1} * n / (n+1+a); the separate Gamma factors
overflow long before the ratio does.

The functions d_m z^m e_j with d_m = 1/sqrt(w_m) form an orthonormal basis
of the truncated space; everything downstream (kernels, operator matrices)
is expressed in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SpaceParams",
    "CoefficientSeries",
    "weight",
    "weight_sequence",
    "basis_scales",
    "zero_series",
    "basis_function",
    "inner_product",
    "norm",
    "evaluate",
    "growth_bound",
]


@dataclass(frozen=True)
class SpaceParams:
    """Parameters of the discretized space.

    alpha      weight exponent, must satisfy alpha > -1
    degree_cap highest retained power of z (N >= 0)
    fiber_dim  dimension d >= 1 of the modeled coefficient space C^d
    """

    alpha: float
    degree_cap: int
    fiber_dim: int = 3

    def __post_init__(self):
        if not self.alpha > -1:
            raise ValueError(f"alpha must be > -1, got {self.alpha}")
        if self.degree_cap < 0:
            raise ValueError(f"degree_cap must be >= 0, got {self.degree_cap}")
        if self.fiber_dim < 1:
            raise ValueError(f"fiber_dim must be >= 1, got {self.fiber_dim}")


def weight_sequence(n_max: int, alpha: float) -> np.ndarray:
    """Moment weights w_0..w_{n_max} by the multiplicative recurrence."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if not alpha > -1:
        raise ValueError(f"alpha must be > -1, got {alpha}")
    w = np.empty(n_max + 1)
    w[0] = 1.0
    for n in range(1, n_max + 1):
        w[n] = w[n - 1] * n / (n + 1 + alpha)
    return w


def weight(n: int, alpha: float) -> float:
    """w_n = n! Gamma(2+alpha) / Gamma(n+2+alpha), the 2n-th absolute moment
    of the weighted disk measure."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return float(weight_sequence(n, alpha)[n])


def basis_scales(n_max: int, alpha: float) -> np.ndarray:
    """Normalizers d_m = 1/sqrt(w_m) making {d_m z^m e_j} orthonormal."""
    return 1.0 / np.sqrt(weight_sequence(n_max, alpha))


@dataclass
class CoefficientSeries:
    """A truncated vector-valued power series sum_n y_n z^n.

    coeffs has shape (degree_cap + 1, fiber_dim); row n is y_n.  Instances
    are immutable after construction (the coefficient array is locked), so
    they are safe to share between threads.
    """

    params: SpaceParams
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        expected = (self.params.degree_cap + 1, self.params.fiber_dim)
        if c.shape != expected:
            raise ValueError(f"coeffs shape {c.shape} != {expected}")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("coeffs must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)


def zero_series(params: SpaceParams) -> CoefficientSeries:
    return CoefficientSeries(
        params, np.zeros((params.degree_cap + 1, params.fiber_dim), dtype=complex)
    )


def basis_function(m: int, n: int, params: SpaceParams) -> CoefficientSeries:
    """Orthonormal basis element d_m z^m e_n (single coefficient y_m = d_m e_n)."""
    if not 0 <= m <= params.degree_cap:
        raise ValueError(f"degree index m={m} outside [0, {params.degree_cap}]")
    if not 0 <= n < params.fiber_dim:
        raise ValueError(f"fiber index n={n} outside [0, {params.fiber_dim})")
    c = np.zeros((params.degree_cap + 1, params.fiber_dim), dtype=complex)
    c[m, n] = basis_scales(m, params.alpha)[m]
    return CoefficientSeries(params, c)


def _require_same_params(f: CoefficientSeries, g: CoefficientSeries):
    if f.params != g.params:
        raise ValueError(f"space parameters differ: {f.params} vs {g.params}")


def inner_product(f: CoefficientSeries, g: CoefficientSeries) -> complex:
    """Weighted inner product sum_n w_n <y_n, s_n>, conjugate-linear in g."""
    _require_same_params(f, g)
    w = weight_sequence(f.params.degree_cap, f.params.alpha)
    return complex(np.sum(w[:, None] * f.coeffs * np.conj(g.coeffs)))


def norm(f: CoefficientSeries) -> float:
    """sqrt(sum_n w_n |y_n|^2), the Parseval form of the space norm."""
    w = weight_sequence(f.params.degree_cap, f.params.alpha)
    s = float(np.sum(w[:, None] * np.abs(f.coeffs) ** 2))
    return float(np.sqrt(s))


def evaluate(f: CoefficientSeries, z) -> np.ndarray:
    """Evaluate f at a point (or array of points) of the open disk by Horner.

    Returns an array of shape (fiber_dim,) for scalar z, or z.shape +
    (fiber_dim,) for array z.  Points with |z| >= 1 are rejected: the space
    lives on the open disk and the truncation is not an extrapolant.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("evaluation requires |z| < 1")
    c = f.coeffs
    acc = np.broadcast_to(c[-1], z.shape + (f.params.fiber_dim,)).copy()
    for n in range(c.shape[0] - 2, -1, -1):
        acc = acc * z[..., None] + c[n]
    return acc


def growth_bound(f: CoefficientSeries, z: complex) -> float:
    """Pointwise bound norm(f) / (1-|z|^2)^((alpha+2)/2) on |f(z)|."""
    a = f.params.alpha
    return norm(f) / (1.0 - abs(z) ** 2) ** ((a + 2.0) / 2.0)
