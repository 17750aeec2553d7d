"""Exact linear codes over finite chain rings.

Construction and duality of ring-linear codes, exhaustive weight
distributions, the MacWilliams transform, subset-count identities, power
moments, and exact recovery of full distributions from partial data.
"""

from .code import (
    CodeProfile,
    LinearCode,
    cardinality,
    classify,
    code_from_generators,
    dual,
    kernel_code,
    parity_check,
)
from .enumeration import (
    WeightDistribution,
    enumerate_codewords,
    enumeration_cap,
    min_distance,
    render_enumerator,
    weight_distribution,
)
from .errors import CapExceededError, InvariantError
from .identities import (
    ClosedFormCrossCheck,
    DoubleCountCheck,
    IdentityContext,
    PascalSystem,
    RelationCheck,
    check_new_relation,
    closed_form_crosscheck,
    double_count_check,
    macwilliams_transform,
    mds_distribution,
    new_relation_report,
    power_moment,
    small_defect_distribution,
    solve_distribution,
    solve_distribution_pless,
)
from .matrix import (
    RingMatrix,
    StandardForm,
    TypeProfile,
    count_submatrix_types,
    identity_matrix,
    matmul,
    matrix_type,
    rowspace_size,
    standard_form,
    submatrix,
)
from .ring import ChainRing, RingElement, gamma_decompose, unit_inverse

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "ChainRing",
    "ClosedFormCrossCheck",
    "CodeProfile",
    "DoubleCountCheck",
    "IdentityContext",
    "InvariantError",
    "LinearCode",
    "PascalSystem",
    "RelationCheck",
    "RingElement",
    "RingMatrix",
    "StandardForm",
    "TypeProfile",
    "WeightDistribution",
    "cardinality",
    "check_new_relation",
    "classify",
    "closed_form_crosscheck",
    "code_from_generators",
    "count_submatrix_types",
    "double_count_check",
    "dual",
    "enumerate_codewords",
    "enumeration_cap",
    "gamma_decompose",
    "identity_matrix",
    "kernel_code",
    "macwilliams_transform",
    "matmul",
    "matrix_type",
    "mds_distribution",
    "min_distance",
    "new_relation_report",
    "parity_check",
    "power_moment",
    "render_enumerator",
    "rowspace_size",
    "small_defect_distribution",
    "solve_distribution",
    "solve_distribution_pless",
    "standard_form",
    "submatrix",
    "unit_inverse",
    "weight_distribution",
]
