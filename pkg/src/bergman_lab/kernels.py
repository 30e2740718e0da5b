"""Reproducing kernels of the truncated space and the adjoint identity.

The kernel attached to a point z of the disk and a fiber direction j is the
series K(w) = sum_m d_m^2 conj(z)^m w^m e_j; pairing any series f against it
returns component j of f(z).  Its closed-form norm is
(1 - |z|^2)^{-(2+alpha)/2}, which the truncated norm approaches from below,
and composition operators act on kernels by moving the point:
adjoint(C) K_z = K_{phi(z)}.  Kernels are materialized as coefficient
series so every identity is checked in coefficient space, with the closed
form as the independent reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .maps import AnalyticMap
from .operators import OperatorMatrix
from .space import (
    CoefficientSeries,
    SpaceParams,
    basis_scales,
    evaluate,
    inner_product,
    weight_sequence,
)

__all__ = [
    "KernelPoint",
    "kernel_series",
    "kernel_coordinates",
    "kernel_norm_closed_form",
    "kernel_norm_truncated",
    "kernel_pairing",
    "kernel_tail",
    "AdjointKernelBound",
    "adjoint_kernel_residual",
    "adjoint_kernel_bound",
]

# Pairing vs evaluation is an exact finite-sum identity; disagreement beyond
# this is an internal inconsistency, not a data problem.
_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class KernelPoint:
    """Evaluation point z in the open disk plus a fiber index j."""

    z: complex
    j: int = 0

    def __post_init__(self):
        if abs(self.z) >= 1:
            raise ValueError(f"kernel point needs |z| < 1, got |z|={abs(self.z)}")
        if self.j < 0:
            raise ValueError("fiber index must be >= 0")


def kernel_series(p: KernelPoint, params: SpaceParams) -> CoefficientSeries:
    """Kernel as a coefficient series: y_m = conj(z)^m / w_m on fiber p.j."""
    if p.j >= params.fiber_dim:
        raise ValueError(f"fiber index {p.j} outside [0, {params.fiber_dim})")
    w = weight_sequence(params.degree_cap, params.alpha)
    m = np.arange(params.degree_cap + 1)
    c = np.zeros((params.degree_cap + 1, params.fiber_dim), dtype=complex)
    c[:, p.j] = np.conj(complex(p.z)) ** m / w
    return CoefficientSeries(params, c)


def kernel_coordinates(z: complex, degree: int, alpha: float) -> np.ndarray:
    """Coordinates d_m conj(z)^m of the kernel's scalar block in the
    orthonormal basis (the vector operator matrices act on)."""
    d = basis_scales(degree, alpha)
    return d * np.conj(complex(z)) ** np.arange(degree + 1)


def kernel_norm_closed_form(p: KernelPoint, alpha: float) -> float:
    """(1 - |z|^2)^{-(2+alpha)/2}, the exact (untruncated) kernel norm."""
    return float((1.0 - abs(p.z) ** 2) ** (-(2.0 + alpha) / 2.0))


def kernel_norm_truncated(p: KernelPoint, degree: int, alpha: float) -> float:
    """sqrt(sum_{m<=N} |z|^{2m} / w_m); nondecreasing in N and bounded by
    the closed form."""
    w = weight_sequence(degree, alpha)
    x = abs(complex(p.z)) ** (2 * np.arange(degree + 1))
    return float(np.sqrt(np.sum(x / w)))


def kernel_pairing(f: CoefficientSeries, p: KernelPoint) -> complex:
    """Inner product of f against the kernel at p; equals component p.j of
    f(p.z) exactly for truncated series, and that identity is asserted."""
    ip = inner_product(f, kernel_series(p, f.params))
    ev = complex(evaluate(f, p.z)[p.j])
    if abs(ip - ev) > _CONSISTENCY_TOL * max(1.0, abs(ev)):
        raise RuntimeError(
            f"kernel pairing {ip} disagrees with evaluation {ev}; "
            "inner_product/evaluate are inconsistent"
        )
    return ip


def kernel_tail(degree: int, modulus: float, alpha: float) -> float:
    """Norm of the kernel tail cut by truncation at `degree`, at radius
    `modulus`: sqrt(closed_form^2 - truncated^2), clamped at 0."""
    if not 0 <= modulus < 1:
        raise ValueError("modulus must lie in [0, 1)")
    cf2 = (1.0 - modulus**2) ** (-(2.0 + alpha))
    p = KernelPoint(modulus, 0)
    tr2 = kernel_norm_truncated(p, degree, alpha) ** 2
    return float(np.sqrt(max(cf2 - tr2, 0.0)))


class AdjointKernelBound(NamedTuple):
    """Documented bound for the adjoint-on-kernel residual.

    truncation_tail  operator bound times the kernel tail past the cutoff
    roundoff         explicit floating-point allowance (dominates once the
                     analytic tail is below machine precision)
    """

    truncation_tail: float
    roundoff: float

    @property
    def total(self) -> float:
        return self.truncation_tail + self.roundoff


def adjoint_kernel_residual(B: OperatorMatrix, phi: AnalyticMap, p: KernelPoint) -> float:
    """Residual of adjoint(C_phi) K_z = K_{phi(z)} at truncation.

    B must be the (square) composition matrix of phi at the kernel's
    truncation degree.  The residual is measured in the space norm, i.e. the
    Euclidean norm of orthonormal-basis coordinates.
    """
    n_out, n_in = B.entries.shape
    if n_out != n_in:
        raise ValueError("adjoint-kernel residual needs a square matrix")
    degree = n_in - 1
    w = complex(phi(p.z))
    if abs(w) >= 1:
        raise ValueError(f"phi maps the point outside the disk: |phi(z)|={abs(w)}")
    kz = kernel_coordinates(p.z, degree, B.alpha)
    kw = kernel_coordinates(w, degree, B.alpha)
    return float(np.linalg.norm(B.entries.conj().T @ kz - kw))


def adjoint_kernel_bound(B: OperatorMatrix, phi: AnalyticMap, p: KernelPoint) -> AdjointKernelBound:
    """Bound attributable to truncation plus an explicit roundoff floor.

    The analytic part bounds ||adjoint(B) k_z - k_{phi(z)}|| by the operator
    norm bound ((1+|phi(0)|)/(1-|phi(0)|))^{(2+alpha)/2} times the kernel
    tail at radius max(|z|, |phi(z)|).  The roundoff part covers the
    matrix-vector arithmetic when the tail underflows.
    """
    degree = B.entries.shape[1] - 1
    w = complex(phi(p.z))
    rho = max(abs(p.z), abs(w))
    c0 = abs(complex(phi(0.0)))
    if c0 >= 1:
        raise ValueError("phi(0) outside the disk; not a self-map")
    upper = ((1.0 + c0) / (1.0 - c0)) ** ((2.0 + B.alpha) / 2.0)
    tail = upper * kernel_tail(degree, rho, B.alpha)
    kz = np.linalg.norm(kernel_coordinates(p.z, degree, B.alpha))
    kw = np.linalg.norm(kernel_coordinates(w, degree, B.alpha))
    eps = float(np.finfo(float).eps)
    roundoff = 100.0 * eps * np.sqrt(degree + 1.0) \
        * max(1.0, float(np.linalg.norm(B.entries))) * max(kz, kw)
    return AdjointKernelBound(truncation_tail=float(tail), roundoff=float(roundoff))
