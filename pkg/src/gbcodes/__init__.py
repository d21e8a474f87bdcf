"""Generalized bicycle quantum codes: construction, distance analysis,
girth characterization, decoding, and code-capacity simulation."""

__version__ = "0.1.0"

from .additive import AdditiveCyclicCode, F4Vector, duality_check, psi, symplectic, to_gb
from .code import (
    GBCode,
    build_gb,
    circulant,
    export_alist,
    import_alist,
    regularity,
    shift_pair,
    substitute_equivalence,
)
from .decode import BPConfig, Correction, CSSDecoder, bp_decode, bposd_decode, mwpm_decode
from .distance import (
    DistanceBoundReport,
    ExtractionPattern,
    classical_cyclic_distance,
    divisibility_upper_bound,
    effective_distance,
    gb_distance_bounds,
    min_distance_bruteforce,
    min_distance_supports,
    refine_case_a,
)
from .families import (
    LogicalSet,
    QubitPermutation,
    cnot_permutation,
    logical_action,
    logical_reps_odd,
    make_even,
    make_odd,
)
from .graph import decoding_graph, girth, girth4_predicate, girth6_predicate, tanner
from .poly import CyclicPoly
from .sim import (
    NoiseModel,
    SimResult,
    estimate_threshold,
    is_logical_failure,
    run_point,
    sample_error,
    sweep,
)

__all__ = [
    "__version__",
    "AdditiveCyclicCode",
    "BPConfig",
    "Correction",
    "CSSDecoder",
    "CyclicPoly",
    "DistanceBoundReport",
    "ExtractionPattern",
    "F4Vector",
    "GBCode",
    "LogicalSet",
    "NoiseModel",
    "QubitPermutation",
    "SimResult",
    "bp_decode",
    "bposd_decode",
    "build_gb",
    "circulant",
    "classical_cyclic_distance",
    "cnot_permutation",
    "decoding_graph",
    "divisibility_upper_bound",
    "duality_check",
    "effective_distance",
    "estimate_threshold",
    "export_alist",
    "gb_distance_bounds",
    "girth",
    "girth4_predicate",
    "girth6_predicate",
    "import_alist",
    "is_logical_failure",
    "logical_action",
    "logical_reps_odd",
    "make_even",
    "make_odd",
    "min_distance_bruteforce",
    "min_distance_supports",
    "mwpm_decode",
    "psi",
    "refine_case_a",
    "regularity",
    "run_point",
    "sample_error",
    "shift_pair",
    "substitute_equivalence",
    "sweep",
    "symplectic",
    "tanner",
    "to_gb",
]
