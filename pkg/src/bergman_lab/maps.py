"""Scalar truncated power-series algebra for inducing maps and weights.

An AnalyticMap is a polynomial a_0 + a_1 z + ... + a_M z^M standing in for
an analytic function on the unit disk.  Composition, product, powers and
derivatives all take an explicit output truncation degree; composition
raises degree multiplicatively and silent truncation is the classic source
of subtle bugs, so tail loss is always the caller's visible choice.

Self-map status (sup |phi| <= 1 on the disk) is certified by sampling the
modulus on a few circles close to the boundary.  For a polynomial the
maximum modulus on |z| <= r is attained on |z| = r, so the sampled maximum
is a sound lower estimate and a practically tight upper proxy; the
certificate records the sampling setup and the slack it tolerates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AnalyticMap",
    "SelfMapCertificate",
    "SelfMapError",
    "compose",
    "multiply",
    "differentiate",
    "power",
    "power_ladder",
    "mobius",
    "certify_self_map",
]


class SelfMapError(ValueError):
    """Raised when an operation requires a certified self-map and the
    certificate fails."""


@dataclass
class AnalyticMap:
    """Truncated power series with complex coefficients a_0..a_M."""

    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.atleast_1d(np.array(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(c.view(float))):
            raise ValueError("coeffs must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        """Horner evaluation; z may be a scalar or an ndarray."""
        z = np.asarray(z, dtype=complex)
        acc = np.broadcast_to(self.coeffs[-1], z.shape).copy()
        for a in self.coeffs[-2::-1]:
            acc = acc * z + a
        return acc[()] if acc.ndim == 0 else acc

    @classmethod
    def constant(cls, c) -> "AnalyticMap":
        return cls(np.array([c], dtype=complex))

    @classmethod
    def identity(cls) -> "AnalyticMap":
        return cls(np.array([0.0, 1.0], dtype=complex))

    @classmethod
    def scaling(cls, lam) -> "AnalyticMap":
        """The map z -> lam * z."""
        return cls(np.array([0.0, lam], dtype=complex))

    @classmethod
    def from_pairs(cls, pairs) -> "AnalyticMap":
        """Build from [[re, im], ...] coefficient literals (config format)."""
        arr = np.asarray(pairs, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("expected a list of [re, im] pairs")
        return cls(arr[:, 0] + 1j * arr[:, 1])


def _coeffs(f: AnalyticMap | np.ndarray) -> np.ndarray:
    return f.coeffs if isinstance(f, AnalyticMap) else np.asarray(f, dtype=complex)


def padded_coeffs(f: AnalyticMap, length: int) -> np.ndarray:
    """Coefficient array of f zero-padded (or truncated) to `length` entries."""
    c = _coeffs(f)
    out = np.zeros(length, dtype=complex)
    k = min(length, c.size)
    out[:k] = c[:k]
    return out


def multiply(a: AnalyticMap, b: AnalyticMap, out_degree: int) -> AnalyticMap:
    """Cauchy product of a and b truncated at out_degree."""
    if out_degree < 0:
        raise ValueError("out_degree must be >= 0")
    c = np.convolve(_coeffs(a), _coeffs(b))[: out_degree + 1]
    return AnalyticMap(c)


def compose(f: AnalyticMap, phi: AnalyticMap, out_degree: int) -> AnalyticMap:
    """Power series of f(phi(z)) truncated at out_degree.

    Horner over truncated polynomial arithmetic: every intermediate product
    is cut at out_degree, so coefficients up to out_degree are exact.
    """
    if out_degree < 0:
        raise ValueError("out_degree must be >= 0")
    fc = _coeffs(f)
    pc = _coeffs(phi)
    acc = np.zeros(out_degree + 1, dtype=complex)
    acc[0] = fc[-1]
    for a in fc[-2::-1]:
        acc = np.convolve(acc, pc)[: out_degree + 1]
        acc[0] += a
    return AnalyticMap(acc)


def differentiate(f: AnalyticMap, r: int = 1) -> AnalyticMap:
    """r-th derivative: coefficient of z^{m-r} becomes m(m-1)...(m-r+1) a_m."""
    if r < 0:
        raise ValueError("r must be >= 0")
    c = _coeffs(f)
    if r == 0:
        return AnalyticMap(c.copy())
    if r > c.size - 1:
        return AnalyticMap(np.zeros(1, dtype=complex))
    m = np.arange(r, c.size, dtype=float)
    fall = np.ones_like(m)
    for i in range(r):
        fall *= m - i
    return AnalyticMap(c[r:] * fall)


def power_ladder(phi: AnalyticMap, m_max: int, out_degree: int) -> list[np.ndarray]:
    """Coefficient arrays of phi^0..phi^{m_max}, each truncated at out_degree.

    Built incrementally (one truncated product per rung); truncation commutes
    with the products because coefficient k of a product depends only on
    coefficients <= k of the factors.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    pc = _coeffs(phi)
    rungs = [np.array([1.0 + 0j])]
    for _ in range(m_max):
        rungs.append(np.convolve(rungs[-1], pc)[: out_degree + 1])
    return rungs


def power(phi: AnalyticMap, m: int, out_degree: int) -> AnalyticMap:
    """phi^m truncated at out_degree."""
    return AnalyticMap(power_ladder(phi, m, out_degree)[m])


def mobius(c: complex, out_degree: int) -> AnalyticMap:
    """Truncated expansion of the disk automorphism (c - z) / (1 - conj(c) z).

    The geometric-series form is c - (1-|c|^2) sum_{k>=1} conj(c)^{k-1} z^k;
    dropped tail coefficients are bounded by |c|^{out_degree}, so the
    truncation is a good approximant well inside the disk.
    """
    c = complex(c)
    if abs(c) >= 1:
        raise ValueError(f"mobius parameter must satisfy |c| < 1, got |c|={abs(c)}")
    if out_degree < 0:
        raise ValueError("out_degree must be >= 0")
    out = np.zeros(out_degree + 1, dtype=complex)
    out[0] = c
    if out_degree >= 1:
        k = np.arange(1, out_degree + 1)
        out[1:] = -(1.0 - abs(c) ** 2) * np.conj(c) ** (k - 1)
    return AnalyticMap(out)


@dataclass(frozen=True)
class SelfMapCertificate:
    """Sampled evidence that sup |phi| <= 1 on the unit disk."""

    sup_estimate: float
    sample_radius: float
    samples_per_circle: int
    radii_count: int
    slack: float = 1e-9

    @property
    def accepted(self) -> bool:
        return self.sup_estimate <= 1.0 + self.slack


def certify_self_map(
    phi: AnalyticMap,
    radii=(0.9, 0.99, 0.999),
    samples_per_circle: int = 4096,
    slack: float = 1e-9,
) -> SelfMapCertificate:
    """Sample |phi| on circles near the boundary and record the maximum.

    Deciding sup |phi| <= 1 exactly is out of scope; the certificate is
    sampling evidence with an explicit slack, tight for the polynomial
    truncations this package manipulates.
    """
    radii = tuple(sorted(radii))
    if not radii or radii[0] <= 0 or radii[-1] >= 1:
        raise ValueError("radii must lie in (0, 1)")
    theta = 2.0 * np.pi * np.arange(samples_per_circle) / samples_per_circle
    ring = np.exp(1j * theta)
    sup = 0.0
    for r in radii:
        sup = max(sup, float(np.max(np.abs(phi(r * ring)))))
    return SelfMapCertificate(
        sup_estimate=sup,
        sample_radius=radii[-1],
        samples_per_circle=samples_per_circle,
        radii_count=len(radii),
        slack=slack,
    )
