"""Exact biharmonic / bicaloric polynomial spaces and their dimension identities.

The package constructs polynomially bounded ancient solutions of the
fourth-order heat equation d/dt u + Lap^2 u = 0 on R^n with exact rational
arithmetic, computes the dimensions of the graded solution spaces two
independent ways, verifies that the bicaloric dimension count equals the
stacked biharmonic counts, and numerically spot-checks reverse-Poincare
energy inequalities on explicit solutions.
"""

from .poly import (
    Monomial,
    NEG_INF,
    Poly,
    PolyParseError,
    bilaplacian,
    gradient,
    growth_degrees,
    heat_op,
    laplacian,
    parse,
    partial,
    render,
)
from .linalg import (
    KernelBasis,
    RationalMatrix,
    kernel,
    rank,
    rref,
    solve,
    vandermonde_coefficients,
)
from .spaces import (
    DimensionMismatchError,
    GradedKernel,
    SharpnessReport,
    SpaceBasis,
    bicaloric_kernel,
    bicaloric_space_dim,
    biharmonic_kernel,
    biharmonic_kernel_dim_formula,
    biharmonic_space_dim,
    bilaplacian_onto,
    biparabolic_basis,
    biparabolic_dim,
    heat_op_onto,
    homogeneous_basis,
    homogeneous_dim,
    laplacian_onto,
    operator_matrix,
    sharpness_report,
)
from .ancient import (
    Decomposition,
    MembershipReport,
    caloric_extension,
    coefficient_degree_bounds,
    decompose,
    default_sample_times,
    growth_membership,
    heat_op_preimage,
    minimal_growth_orders,
    solution_from_top_coefficient,
    time_derivative_vanishes,
    vandermonde_extract,
    verify_recurrence,
)
from .cylinder import (
    CylinderSpec,
    EnergyBundle,
    ball_integral,
    cylinder_integral,
    energy_bundle,
    rp_biharmonic_ratio,
    rp_ratio,
    rp_sublemma_ratios,
)

__version__ = "0.1.0"
