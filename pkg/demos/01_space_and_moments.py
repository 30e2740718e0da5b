"""
The truncated weighted space and its moment weights
====================================================

The space is built from one sequence of numbers: the moments
w_n = integral |z|^(2n) dA_a over the weighted disk.  This demo computes
them two independent ways (exact recurrence vs disk quadrature), then uses
them for inner products, norms, and the pointwise growth bound.
"""

import numpy as np

from bergman_lab import (
    SpaceParams,
    basis_function,
    disk_integral,
    disk_rule,
    evaluate,
    growth_bound,
    inner_product,
    norm,
    weight_sequence,
)
from helpers_demo import banner

banner("moment weights: recurrence vs quadrature")
alpha = 1.0
w = weight_sequence(8, alpha)
rule = disk_rule(alpha)
for n in range(9):
    q = disk_integral(np.abs(rule.nodes) ** (2 * n), rule).real
    print(f"  n={n}:  recurrence {w[n]:.15f}   quadrature {q:.15f}   "
          f"rel err {abs(q - w[n]) / w[n]:.1e}")

banner("the weighted basis is orthonormal")
params = SpaceParams(alpha=alpha, degree_cap=8, fiber_dim=2)
e_30 = basis_function(3, 0, params)
e_31 = basis_function(3, 1, params)
e_50 = basis_function(5, 0, params)
print(f"  <E(3,0), E(3,0)> = {inner_product(e_30, e_30):.12f}")
print(f"  <E(3,0), E(3,1)> = {inner_product(e_30, e_31):.12f}  (fiber-orthogonal)")
print(f"  <E(3,0), E(5,0)> = {inner_product(e_30, e_50):.12f}  (degree-orthogonal)")

banner("evaluation respects the growth bound")
rng = np.random.default_rng(0)
c = rng.standard_normal((9, 2)) + 1j * rng.standard_normal((9, 2))
from bergman_lab import CoefficientSeries

f = CoefficientSeries(params, c)
print(f"  norm(f) = {norm(f):.6f}")
for z in (0.0, 0.3 + 0.4j, 0.85):
    val = np.linalg.norm(evaluate(f, z))
    cap = growth_bound(f, z)
    print(f"  |f({z})| = {val:9.6f}   bound {cap:9.6f}   ratio {val / cap:.3f}")
