"""Smallest positive eigenvalues of grad/curl/div operators with mixed
boundary conditions on structured 2D/3D domains, and the associated
Poincare-Friedrichs, Maxwell, and divergence constants."""

from .mesh import (
    Mesh,
    BoundarySelection,
    build_unit_square,
    build_unit_cube,
    build_lshape,
    build_fichera,
    build_domain,
    classify_boundary,
    select_boundary,
    bfs_boundary_order,
)
from .assembly import (
    FeSpace,
    assemble_mass,
    assemble_stiffness,
    gradient_interpolation,
    restrict,
)
from .eigensolve import (
    EigenResult,
    dense_generalized_eig,
    smallest_positive_projected,
    smallest_positive_shift_invert,
    smallest_positive_lowest_k,
)
from .oracle import (
    PiValue,
    exact_lambda0,
    exact_lambda1_3d,
    symmetry_table_lambda,
)
from .harness import (
    ConstantRecord,
    SweepResult,
    compute_constant,
    convergence_table,
    monotonicity_sweep,
    check_extended_inequalities,
)

__version__ = "0.1.0"
