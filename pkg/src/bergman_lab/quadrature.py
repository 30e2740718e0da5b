"""Quadrature over the weighted unit disk, the package's independent oracle.

The measure is dA_a(z) = (a+1)(1-|z|^2)^a dA(z) with dA the normalized area
measure, so that the total mass is 1.  In polar coordinates with t = r^2,

    integral g dA_a = (a+1)/(2 pi) * int_0^1 int_0^{2pi}
                      g(sqrt(t) e^{i th}) (1-t)^a dth dt.

The radial factor uses a Gauss rule for the weight (1-t)^a on [0, 1] built
by the Golub-Welsch eigenvalue method from the exact three-term recurrence
of the associated orthogonal polynomials (no Gamma functions enter; the
zeroth moment on [-1, 1] is 2^{a+1}/(a+1) in closed form).  The angular
factor is the equispaced trapezoid rule, which is exact for trigonometric
frequencies below the sample count.  With M_r radial nodes the combined
rule integrates any polynomial expression in z and conj(z) of degree up to
2 M_r - 1 in |z|^2 exactly, which is what makes it a trustworthy
cross-check for every coefficient-space formula in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .maps import AnalyticMap
from .space import CoefficientSeries, evaluate

__all__ = [
    "DiskRule",
    "disk_rule",
    "gauss_jacobi_radial",
    "disk_integral",
    "l2_norm",
    "inner_product_quadrature",
    "gram_matrix_of_powers",
    "orthogonality_defect",
]


def gauss_jacobi_radial(count: int, alpha: float):
    """Nodes and weights on [0, 1] for the weight (1-t)^alpha.

    Exact for integrands t^k with k <= 2*count - 1.  Returns (t, u) with
    sum(u) = 1/(alpha+1).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not alpha > -1:
        raise ValueError(f"alpha must be > -1, got {alpha}")
    a, b = float(alpha), 0.0
    diag = np.empty(count)
    diag[0] = (b - a) / (a + b + 2.0)
    if count > 1:
        k = np.arange(1, count, dtype=float)
        diag[1:] = (b * b - a * a) / ((2 * k + a + b) * (2 * k + a + b + 2))
        off = np.sqrt(
            (4 * k * (k + a) * (k + b) * (k + a + b))
            / ((2 * k + a + b) ** 2 * (2 * k + a + b + 1) * (2 * k + a + b - 1))
        )
    else:
        off = np.empty(0)
    x, vecs = eigh_tridiagonal(diag, off)
    mu0 = 2.0 ** (a + 1.0) / (a + 1.0)  # int_{-1}^{1} (1-x)^a dx for b = 0
    w = mu0 * vecs[0, :] ** 2
    # map [-1, 1] -> [0, 1]: t = (1+x)/2 pulls in a factor 2^{-a-1}
    return 0.5 * (x + 1.0), w * 2.0 ** (-a - 1.0)


@dataclass(frozen=True)
class DiskRule:
    """Tensor rule on the disk: Gauss-Jacobi in t = r^2 times trapezoid in
    angle.  Immutable; `weights` sums to 1 (total mass of dA_alpha)."""

    alpha: float
    radial_nodes: np.ndarray = field(repr=False)
    radial_weights: np.ndarray = field(repr=False)
    angular_count: int = 256

    @cached_property
    def nodes(self) -> np.ndarray:
        """Complex sample grid of shape (radial_count, angular_count)."""
        theta = 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count
        return np.sqrt(self.radial_nodes)[:, None] * np.exp(1j * theta)[None, :]

    @cached_property
    def weights(self) -> np.ndarray:
        """Full quadrature weights matching `nodes`, normalized to mass 1."""
        w = (self.alpha + 1.0) * self.radial_weights / self.angular_count
        return np.repeat(w[:, None], self.angular_count, axis=1)

    @property
    def radial_count(self) -> int:
        return self.radial_nodes.size


def disk_rule(alpha: float, radial_count: int = 64, angular_count: int = 256) -> DiskRule:
    if angular_count < 1:
        raise ValueError("angular_count must be >= 1")
    t, u = gauss_jacobi_radial(radial_count, alpha)
    return DiskRule(alpha=float(alpha), radial_nodes=t, radial_weights=u,
                    angular_count=angular_count)


def _samples(g, rule: DiskRule) -> np.ndarray:
    vals = g(rule.nodes) if callable(g) else np.asarray(g)
    if vals.shape != rule.nodes.shape:
        raise ValueError(f"sample shape {vals.shape} != grid {rule.nodes.shape}")
    if not np.all(np.isfinite(np.asarray(vals, dtype=complex).view(float))):
        raise ValueError("quadrature samples contain NaN/Inf")
    return vals


def _check_alpha(rule: DiskRule, alpha):
    if alpha is not None and alpha != rule.alpha:
        raise ValueError(f"rule was built for alpha={rule.alpha}, got {alpha}")


def disk_integral(g, rule: DiskRule, alpha: float | None = None) -> complex:
    """Integral of g against dA_alpha.

    g is either a callable evaluated on the rule's complex grid or an array
    of samples on that grid.  Passing alpha is optional and only checks
    consistency with the rule.
    """
    _check_alpha(rule, alpha)
    return complex(np.sum(rule.weights * _samples(g, rule)))


def l2_norm(h: AnalyticMap, rule: DiskRule, alpha: float | None = None) -> float:
    """Norm sqrt(integral |h|^2 dA_alpha) of a scalar analytic function.

    For a truncated series this equals the coefficient form
    sqrt(sum_k |c_k|^2 w_k) whenever 2*deg(h) is within the rule's
    exactness range, which is the cross-check the tests lean on.
    """
    _check_alpha(rule, alpha)
    vals = h(rule.nodes)
    return float(np.sqrt(np.real(disk_integral(np.abs(vals) ** 2, rule))))


def inner_product_quadrature(
    f: CoefficientSeries, g: CoefficientSeries, rule: DiskRule
) -> complex:
    """Quadrature form of the space inner product, integral <f(z), g(z)> dA_alpha.

    Independent of the coefficient formula in `space.inner_product`; the two
    agree on polynomials inside the rule's exactness range.
    """
    if f.params != g.params:
        raise ValueError("series must share space parameters")
    _check_alpha(rule, f.params.alpha)
    fv = evaluate(f, rule.nodes)
    gv = evaluate(g, rule.nodes)
    pointwise = np.sum(fv * np.conj(gv), axis=-1)
    return disk_integral(pointwise, rule)


def gram_matrix_of_powers(
    phi: AnalyticMap, n_max: int, rule: DiskRule, alpha: float | None = None
) -> np.ndarray:
    """Gram matrix G_ij = <phi^i, phi^j> for 0 <= i, j <= n_max by quadrature.

    The off-diagonal maximum modulus is the orthogonality defect of the
    family {phi^n}; several results hold only when that defect vanishes.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    _check_alpha(rule, alpha)
    vals = phi(rule.nodes)
    pows = np.empty((n_max + 1,) + vals.shape, dtype=complex)
    pows[0] = 1.0
    for i in range(1, n_max + 1):
        pows[i] = pows[i - 1] * vals
    flat_w = rule.weights.ravel()
    flat_p = pows.reshape(n_max + 1, -1)
    return (flat_p * flat_w) @ np.conj(flat_p.T)


def orthogonality_defect(gram: np.ndarray) -> float:
    """Largest off-diagonal modulus of a Gram matrix."""
    g = np.asarray(gram)
    off = g - np.diag(np.diag(g))
    return float(np.max(np.abs(off)))
