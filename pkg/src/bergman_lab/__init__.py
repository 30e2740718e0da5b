"""Numerical laboratory for the weighted Bergman space of vector-valued
analytic functions on the unit disk and the composition-type operators that
act on it.

The space is modeled by degree truncation; operators become matrices in the
weighted orthonormal basis, disk quadrature provides an independent oracle
for every coefficient-space formula, and the harness turns the classical
structure results (norm bounds, kernel identities, unitary/Hermitian/normal
characterizations, the generalized-operator boundedness criterion) into
executable residual checks.
"""

from .space import (
    SpaceParams,
    CoefficientSeries,
    weight,
    weight_sequence,
    basis_scales,
    zero_series,
    basis_function,
    inner_product,
    norm,
    evaluate,
    growth_bound,
)
from .maps import (
    AnalyticMap,
    SelfMapCertificate,
    SelfMapError,
    compose,
    multiply,
    differentiate,
    power,
    power_ladder,
    mobius,
    certify_self_map,
)
from .operators import (
    OperatorMatrix,
    composition_matrix,
    weighted_composition_matrix,
    generalized_matrix,
    adjoint,
    operator_norm,
    StructureReport,
    classify,
    apply_operator,
    apply_generalized,
    matrix_to_csv,
)
from .kernels import (
    KernelPoint,
    kernel_series,
    kernel_coordinates,
    kernel_norm_closed_form,
    kernel_norm_truncated,
    kernel_pairing,
    kernel_tail,
    adjoint_kernel_residual,
    adjoint_kernel_bound,
)
from .quadrature import (
    DiskRule,
    disk_rule,
    gauss_jacobi_radial,
    disk_integral,
    l2_norm,
    inner_product_quadrature,
    gram_matrix_of_powers,
    orthogonality_defect,
)
from .harness import (
    VerificationReport,
    run_default_suite,
    reports_json,
    reports_csv,
)

__version__ = "0.1.0"
