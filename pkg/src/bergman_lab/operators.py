"""Matrix representations of composition-type operators on the truncated space.

Every operator in scope acts componentwise on the coefficient fiber, so it
factors as a scalar block tensored with the fiber identity; matrices are
stored at scalar-block size and the fiber only reappears when an operator
is applied to a concrete series.  In the orthonormal basis {d_m z^m} the
scalar block of the general operator f -> psi * (f^(r) o phi) has entries

    B[k, m] = d_m * m(m-1)...(m-r+1) * [z^k](psi * phi^(m-r)) / d_k

for columns m >= r (columns below r are annihilated by the derivative);
r = 0 gives the weighted composition operator and additionally psi = 1 the
plain composition operator.  Since the tensor factor is an identity, every
norm and structure question reduces to the scalar block.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from .maps import (
    AnalyticMap,
    certify_self_map,
    SelfMapError,
    compose,
    differentiate,
    multiply,
    padded_coeffs,
    power_ladder,
)
from .space import CoefficientSeries, SpaceParams, basis_scales

__all__ = [
    "OperatorMatrix",
    "composition_matrix",
    "weighted_composition_matrix",
    "generalized_matrix",
    "adjoint",
    "operator_norm",
    "StructureReport",
    "classify",
    "apply_operator",
    "apply_generalized",
    "matrix_to_csv",
]


@dataclass
class OperatorMatrix:
    """Scalar block of an operator acting as block (x) fiber-identity.

    entries has shape (out_degree + 1, in_degree + 1) in the orthonormal
    basis of the weighted space with exponent alpha.
    """

    entries: np.ndarray = field(repr=False)
    alpha: float
    label: str = ""

    def __post_init__(self):
        e = np.array(self.entries, dtype=complex)
        if e.ndim != 2:
            raise ValueError("entries must be a 2-d array")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def out_degree(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def in_degree(self) -> int:
        return self.entries.shape[1] - 1

    @property
    def is_square(self) -> bool:
        return self.entries.shape[0] == self.entries.shape[1]


def _require_certified(phi: AnalyticMap, allow_uncertified: bool):
    if allow_uncertified:
        return
    cert = certify_self_map(phi)
    if not cert.accepted:
        raise SelfMapError(
            f"map is not a certified self-map (sup estimate {cert.sup_estimate:.6g}); "
            "pass allow_uncertified=True to override"
        )


def _falling_factorial(m: int, r: int) -> float:
    out = 1.0
    for i in range(r):
        out *= m - i
    return out


def generalized_matrix(
    r: int,
    psi: AnalyticMap,
    phi: AnalyticMap,
    alpha: float,
    in_degree: int,
    out_degree: int,
    allow_uncertified: bool = False,
) -> OperatorMatrix:
    """Matrix of f -> psi * (f^(r) o phi) between truncated spaces.

    Column m is exact for the truncated operator: the power ladder of phi is
    cut at out_degree and coefficient k of a product only sees coefficients
    <= k, so no in-range coefficient is lost.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if in_degree < 0 or out_degree < 0:
        raise ValueError("degrees must be >= 0")
    if not alpha > -1:
        raise ValueError(f"alpha must be > -1, got {alpha}")
    _require_certified(phi, allow_uncertified)

    d_in = basis_scales(in_degree, alpha)
    d_out = basis_scales(out_degree, alpha)
    B = np.zeros((out_degree + 1, in_degree + 1), dtype=complex)
    if in_degree >= r:
        ladder = power_ladder(phi, in_degree - r, out_degree)
        psi_c = psi.coeffs
        for m in range(r, in_degree + 1):
            col = np.convolve(psi_c, ladder[m - r])[: out_degree + 1]
            col = np.pad(col, (0, out_degree + 1 - col.size))
            B[:, m] = (d_in[m] * _falling_factorial(m, r)) * col / d_out
    return OperatorMatrix(B, alpha=float(alpha), label=f"generalized(r={r})")


def weighted_composition_matrix(
    psi: AnalyticMap,
    phi: AnalyticMap,
    alpha: float,
    in_degree: int,
    out_degree: int,
    allow_uncertified: bool = False,
) -> OperatorMatrix:
    """Matrix of f -> psi * (f o phi)."""
    B = generalized_matrix(0, psi, phi, alpha, in_degree, out_degree, allow_uncertified)
    return OperatorMatrix(B.entries, alpha=B.alpha, label="weighted-composition")


def composition_matrix(
    phi: AnalyticMap,
    alpha: float,
    in_degree: int,
    out_degree: int,
    allow_uncertified: bool = False,
) -> OperatorMatrix:
    """Matrix of f -> f o phi; entries (d_m / d_k) [z^k] phi^m."""
    one = AnalyticMap.constant(1.0)
    B = generalized_matrix(0, one, phi, alpha, in_degree, out_degree, allow_uncertified)
    return OperatorMatrix(B.entries, alpha=B.alpha, label="composition")


def adjoint(B: OperatorMatrix) -> OperatorMatrix:
    """Conjugate transpose (the basis is orthonormal)."""
    return OperatorMatrix(B.entries.conj().T, alpha=B.alpha,
                          label=f"adjoint({B.label})" if B.label else "adjoint")


def operator_norm(
    B: OperatorMatrix,
    tol: float = 1e-12,
    max_iter: int = 10000,
    seed: int = 0,
) -> float:
    """Largest singular value of the scalar block by power iteration.

    Iterates on adjoint(B) @ B from a seeded random complex start until the
    Rayleigh quotient stabilizes to relative `tol`.  The tensor factor is an
    identity, so this is the norm of the full operator.  Non-convergence at
    the iteration cap is reported as a warning carrying the last iterate and
    the last relative gap.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    a = B.entries
    if not a.any():
        return 0.0
    m = a.conj().T @ a
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(m.shape[0]) + 1j * rng.standard_normal(m.shape[0])
    v /= np.linalg.norm(v)
    lam = 0.0
    lam_prev = -1.0
    for it in range(1, max_iter + 1):
        u = m @ v
        nu = np.linalg.norm(u)
        if nu == 0.0:
            # start vector landed in the nullspace; re-randomize
            v = rng.standard_normal(m.shape[0]) + 1j * rng.standard_normal(m.shape[0])
            v /= np.linalg.norm(v)
            continue
        lam = float(np.real(np.vdot(v, u)))
        v = u / nu
        if lam_prev >= 0 and abs(lam - lam_prev) <= tol * max(abs(lam), np.finfo(float).tiny):
            return float(np.sqrt(max(lam, 0.0)))
        lam_prev = lam
    gap = abs(lam - lam_prev) / max(abs(lam), np.finfo(float).tiny)
    warnings.warn(
        f"power iteration hit the cap of {max_iter} iterations "
        f"(last iterate {np.sqrt(max(lam, 0.0)):.12g}, relative gap {gap:.3g})",
        RuntimeWarning,
        stacklevel=2,
    )
    return float(np.sqrt(max(lam, 0.0)))


@dataclass(frozen=True)
class StructureReport:
    """Structural residuals of a square block at one truncation degree.

    Flags are finite-truncation evidence, not proofs: they say the
    compression at this degree satisfies the defining identity to `tol`.
    """

    degree: int
    tol: float
    isometry_residual: float      # max |B*B - I|
    coisometry_residual: float    # max |BB* - I|
    hermitian_residual: float     # max |B - B*|
    normality_residual: float     # max |B*B - BB*|

    @property
    def is_isometry(self) -> bool:
        return self.isometry_residual <= self.tol

    @property
    def is_coisometry(self) -> bool:
        return self.coisometry_residual <= self.tol

    @property
    def is_unitary(self) -> bool:
        return self.is_isometry and self.is_coisometry

    @property
    def is_hermitian(self) -> bool:
        return self.hermitian_residual <= self.tol

    @property
    def is_normal(self) -> bool:
        return self.normality_residual <= self.tol

    @property
    def unitary_residual(self) -> float:
        return max(self.isometry_residual, self.coisometry_residual)


def classify(B: OperatorMatrix, tol: float = 1e-12) -> StructureReport:
    """Isometry / co-isometry / Hermitian / normality residuals of a square
    block, each as a max-abs deviation from the defining identity."""
    a = B.entries
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"classification needs a square matrix, got {a.shape}")
    eye = np.eye(a.shape[0])
    gram = a.conj().T @ a
    cogram = a @ a.conj().T
    return StructureReport(
        degree=a.shape[0] - 1,
        tol=tol,
        isometry_residual=float(np.max(np.abs(gram - eye))),
        coisometry_residual=float(np.max(np.abs(cogram - eye))),
        hermitian_residual=float(np.max(np.abs(a - a.conj().T))),
        normality_residual=float(np.max(np.abs(gram - cogram))),
    )


def _to_coordinates(f: CoefficientSeries) -> np.ndarray:
    # monomial coefficients y_m -> orthonormal coordinates y_m / d_m
    d = basis_scales(f.params.degree_cap, f.params.alpha)
    return f.coeffs / d[:, None]


def _from_coordinates(coords: np.ndarray, alpha: float) -> CoefficientSeries:
    degree, fiber = coords.shape[0] - 1, coords.shape[1]
    d = basis_scales(degree, alpha)
    params = SpaceParams(alpha=alpha, degree_cap=degree, fiber_dim=fiber)
    return CoefficientSeries(params, coords * d[:, None])


def apply_operator(B: OperatorMatrix, f: CoefficientSeries) -> CoefficientSeries:
    """Apply block (x) fiber-identity to a series via the matrix path."""
    if f.params.alpha != B.alpha:
        raise ValueError("series and matrix were built for different alpha")
    if f.params.degree_cap != B.in_degree:
        raise ValueError(
            f"series degree {f.params.degree_cap} != matrix in_degree {B.in_degree}"
        )
    return _from_coordinates(B.entries @ _to_coordinates(f), B.alpha)


def apply_generalized(
    r: int,
    psi: AnalyticMap,
    phi: AnalyticMap,
    f: CoefficientSeries,
    out_degree: int,
) -> CoefficientSeries:
    """Apply f -> psi * (f^(r) o phi) directly in series space.

    Works fiber component by fiber component with the truncated polynomial
    algebra; deliberately shares no code with the matrix assembly so the two
    paths cross-validate each other.
    """
    params = f.params
    out = np.zeros((out_degree + 1, params.fiber_dim), dtype=complex)
    for j in range(params.fiber_dim):
        comp_j = AnalyticMap(f.coeffs[:, j].copy())
        img = multiply(psi, compose(differentiate(comp_j, r), phi, out_degree), out_degree)
        out[:, j] = padded_coeffs(img, out_degree + 1)
    out_params = SpaceParams(alpha=params.alpha, degree_cap=out_degree,
                             fiber_dim=params.fiber_dim)
    return CoefficientSeries(out_params, out)


def matrix_to_csv(B: OperatorMatrix, path) -> None:
    """Write the block row-major as CSV with "re,im" cells."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in B.entries:
            writer.writerow([f"{float(v.real)!r},{float(v.imag)!r}" for v in row])
