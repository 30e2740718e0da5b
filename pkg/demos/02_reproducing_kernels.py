"""
Reproducing kernels at finite truncation
========================================

Pairing a series against the kernel at a point returns the function value
there; the kernel's norm has the closed form (1-|z|^2)^(-(2+a)/2), which the
truncated norm climbs toward from below.  Both facts are exact identities at
the coefficient level and are shown here numerically.
"""

import numpy as np

from bergman_lab import (
    CoefficientSeries,
    KernelPoint,
    SpaceParams,
    evaluate,
    kernel_norm_closed_form,
    kernel_norm_truncated,
    kernel_pairing,
    kernel_series,
)
from helpers_demo import banner

alpha = 0.0
z = 0.7

banner("truncated kernel norm converges upward to the closed form")
cf = kernel_norm_closed_form(KernelPoint(z), alpha)
print(f"  closed form at z={z}: {cf:.9f}")
for n in (10, 25, 50, 100, 200):
    tr = kernel_norm_truncated(KernelPoint(z), n, alpha)
    print(f"  N={n:4d}: {tr:.9f}   relative gap {(cf - tr) / cf:.2e}")

banner("pairing against the kernel reproduces point values")
params = SpaceParams(alpha=alpha, degree_cap=12, fiber_dim=2)
rng = np.random.default_rng(1)
c = rng.standard_normal((13, 2)) + 1j * rng.standard_normal((13, 2))
f = CoefficientSeries(params, c)
for point in (0.3, -0.2 + 0.4j):
    for j in range(2):
        via_kernel = kernel_pairing(f, KernelPoint(point, j))
        direct = complex(evaluate(f, point)[j])
        print(f"  z={point}, fiber {j}: pairing {via_kernel:.9f} "
              f"= f(z)_j {direct:.9f}")

banner("the kernel is itself a series in the space")
k = kernel_series(KernelPoint(0.5, 0), params)
print(f"  first coefficients on fiber 0: {np.round(k.coeffs[:4, 0], 6)}")
