"""
Adjoint identities
==================

The adjoint of a composition operator moves reproducing kernels to the
image point: adjoint(C) K_z = K_{phi(z)}.  It is itself a composition
operator exactly when phi is an origin-fixed scaling; for any other map a
two-stage structural witness (column-0 shape, then the unique candidate
map) certifies the mismatch.  Hermitian and normal structure reduces to
the scaling parameter.
"""

import numpy as np

from bergman_lab import (
    AnalyticMap,
    KernelPoint,
    adjoint,
    adjoint_kernel_bound,
    adjoint_kernel_residual,
    classify,
    composition_matrix,
    mobius,
)
from helpers_demo import banner

alpha = 0.0

banner("adjoint moves the kernel point")
for name, phi, z in (("0.5 z + 0.2 z^2", AnalyticMap([0.0, 0.5, 0.2]), 0.3),
                     ("mobius(0.3) truncated", mobius(0.3, 128), 0.2),
                     ("rotation", AnalyticMap.scaling(0.7j), 0.4 + 0.2j)):
    B = composition_matrix(phi, alpha, 128, 128)
    pt = KernelPoint(z)
    res = adjoint_kernel_residual(B, phi, pt)
    bound = adjoint_kernel_bound(B, phi, pt)
    print(f"  {name:24s} residual {res:.2e}  documented bound {bound.total:.2e}")

banner("when is the adjoint itself a composition operator?")
lam = 0.7j
B = composition_matrix(AnalyticMap.scaling(lam), alpha, 32, 32)
C = composition_matrix(AnalyticMap.scaling(np.conj(lam)), alpha, 32, 32)
print(f"  scaling {lam}: max |adjoint(C_phi) - C_conj| = "
      f"{np.max(np.abs(adjoint(B).entries - C.entries)):.2e}  (exact match)")
Bq = adjoint(composition_matrix(AnalyticMap([0, 0, 1.0]), alpha, 32, 32))
col0 = np.linalg.norm(Bq.entries[:, 0] - np.eye(33)[:, 0])
print(f"  squaring z^2: column-0 residual {col0:.2e}, but the candidate-map "
      "test fails:")
from bergman_lab.harness import check_adjoint_is_composition

rep = check_adjoint_is_composition(AnalyticMap([0, 0, 1.0]), alpha, 32)
print(f"    witness residual {rep.residuals['nonlinear_witness[N=32]']:.6f} "
      "(no composition matrix matches the adjoint)")

banner("hermitian and normal scalings")
for lam in (0.5, 0.5j, 0.8):
    rep = classify(composition_matrix(AnalyticMap.scaling(lam), alpha, 32, 32))
    print(f"  lam={lam!s:6s} hermitian residual {rep.hermitian_residual:.2e}  "
          f"normality residual {rep.normality_residual:.2e}")
print("  real scalings are Hermitian; every scaling is normal; nothing else is")
