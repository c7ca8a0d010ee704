"""fusionkit: exact fusion procedure for skew Young diagrams and Yangian intertwiners.

Submodules
----------
scalars   exact rationals, rational functions, Laurent leading terms
diagrams  skew shapes, contents, Durfee rank, SSYT counts
symgroup  group ring of S_n and divisibility tests
fusion    fusion elements F_w, pair functions, h_w
linalg    exact rational linear algebra
yangian   module spaces, R-matrices, intertwiners, irreducibility
suites    verification sweeps
cli       command-line front end
"""

from .diagrams import (
    EPSILON,
    ShapeError,
    SkewShape,
    column,
    conjugate,
    durfee_rank_definition,
    durfee_rank_formula,
    enumerate_skew_shapes,
    jacobi_trudi_count,
    parse_shape,
    rotate180,
    row,
    skew_shape_new,
    ssyt_count,
)
from .fusion import (
    F_pair,
    c_and_order,
    fusion_element,
    h_function,
    h_partition_product,
    pair_function_G,
    verify_theorem_3_5,
)
from .guards import DEFAULT_GUARDS, GuardExceeded, current_guards, guard_overrides
from .scalars import RationalFunction, laurent_leading_at, rational
from .symgroup import GroupRingElement, alpha_involution, left_divisibility_test, right_divisibility_test
from .yangian import (
    burnside_irreducible,
    intertwiner_leading,
    irreducibility_criterion,
    module_space,
    r_matrix,
    r_matrix_at,
    tensor_module_generators,
    verify_identities,
)

__version__ = "0.1.0"
