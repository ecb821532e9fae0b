"""Order calculus of representable positive functionals on
finite-dimensional *-algebras.

The pipeline builds GNS representations, parallel sums by the projection
construction, Lebesgue-type regular/singular decompositions by extrapolated
doubling limits, extreme-point tests for order intervals, and infima where
the comparability rule decides.  Independent finite-measure and PSD-matrix
oracles in :mod:`funcord.oracles` re-derive the same answers on the two
classical backends for differential testing.
"""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    StarAlgebra,
    StructureReport,
    StructureViolation,
    construct_algebra,
    direct_sum,
    function_algebra,
    involute,
    matrix_algebra,
    multiply,
    validate_structure,
    zero_product_algebra,
)
from .functional import (
    Functional,
    GnsTriple,
    GramMatrix,
    PositivityResult,
    RepresentabilityReport,
    evaluate,
    gns_triple,
    gram_matrix,
    hilbert_bound,
    is_positive,
    is_representable,
    leq,
    values_close,
    zero_functional,
)
from .parallel import (
    ParallelSumResult,
    is_singular,
    parallel_sum,
    variational_value,
)
from .lebesgue import (
    DecompositionReport,
    UniquenessCertificate,
    domination_constant,
    is_absolutely_continuous,
    lebesgue_decompose,
    regular_part,
    uniqueness_certificate,
)
from .intervals import (
    ExtremeEquivalenceReport,
    InfimumResult,
    extreme_equivalences,
    extreme_meet,
    infimum,
    is_extreme_in_interval,
)
from . import errors, oracles, sampling

__all__ = [
    "AlgebraElement",
    "DecompositionReport",
    "ExtremeEquivalenceReport",
    "Functional",
    "GnsTriple",
    "GramMatrix",
    "InfimumResult",
    "ParallelSumResult",
    "PositivityResult",
    "RepresentabilityReport",
    "StarAlgebra",
    "StructureReport",
    "StructureViolation",
    "UniquenessCertificate",
    "construct_algebra",
    "direct_sum",
    "domination_constant",
    "errors",
    "evaluate",
    "extreme_equivalences",
    "extreme_meet",
    "function_algebra",
    "gns_triple",
    "gram_matrix",
    "hilbert_bound",
    "infimum",
    "involute",
    "is_absolutely_continuous",
    "is_extreme_in_interval",
    "is_positive",
    "is_representable",
    "is_singular",
    "lebesgue_decompose",
    "leq",
    "matrix_algebra",
    "multiply",
    "oracles",
    "parallel_sum",
    "regular_part",
    "sampling",
    "uniqueness_certificate",
    "validate_structure",
    "values_close",
    "variational_value",
    "zero_functional",
    "zero_product_algebra",
]
