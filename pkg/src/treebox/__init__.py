"""treebox: pointed subtrees of free-group Cayley trees at finite resolution.

The library models infinite rooted subtrees of the Cayley tree of a free
group through membership oracles and certified finite windows, computes the
ball metric and the partial translation action, and probes the induced
dynamics: orbit graphs, growth, recurrence, expansivity, accumulation,
ends, and specialization order.  Constructions produce periodic
approximants, fusions of two trees, coded limit trees, and iterated
self-fusions.
"""

from .catalog import CatalogEntry, catalog_entry, catalog_tree, standard_entries
from .constructions import (
    Fusion,
    FusionSchedule,
    PeriodicApproximant,
    Ray,
    coding_base_points,
    coding_tree,
    depth_statistic,
    fuse,
    iterated_self_fusion,
    periodic_approximation,
)
from .dynamics import (
    CoveringReport,
    EndProfile,
    EquicontinuityReport,
    GrowthTable,
    OrbitGraph,
    SpecializationResult,
    WitnessReport,
    accumulates_on,
    closure_sample,
    end_profile,
    equicontinuity_check,
    equicontinuity_modulus,
    expansivity_witness,
    growth_function,
    orbit_graph,
    recurrence_witnesses,
    specialization_matrix,
    verify_witness,
)
from .errors import (
    ActionUndefinedError,
    CannotApproximateError,
    ContractViolationError,
    InvalidAxesError,
    MalformedCodeError,
    MalformedWordError,
    NoWitnessError,
    OutOfRangeError,
    PreconditionUnmetError,
    RankMismatchError,
    TreeboxError,
    TreeJSONError,
    UnknownTreeError,
    WindowExceededError,
)
from .trees import (
    BallKey,
    FiniteTree,
    LazyTree,
    MetricResult,
    ValidationReport,
    act,
    ball,
    ball_metric,
    canonical_key,
    materialize,
    rel_ball,
    spot_check_prefix_closure,
    tree_dumps,
    tree_from_json,
    tree_loads,
    tree_to_dot,
    tree_to_json,
    truncate,
    validate,
)
from .words import Alphabet, Word, concat, invert, prefix, reduce

__version__ = "1.0.0"

__all__ = [
    "Alphabet",
    "Word",
    "reduce",
    "concat",
    "invert",
    "prefix",
    "FiniteTree",
    "LazyTree",
    "MetricResult",
    "BallKey",
    "ValidationReport",
    "materialize",
    "truncate",
    "act",
    "ball",
    "ball_metric",
    "canonical_key",
    "validate",
    "rel_ball",
    "spot_check_prefix_closure",
    "tree_to_json",
    "tree_from_json",
    "tree_dumps",
    "tree_loads",
    "tree_to_dot",
    "CatalogEntry",
    "catalog_entry",
    "catalog_tree",
    "standard_entries",
    "Ray",
    "Fusion",
    "FusionSchedule",
    "PeriodicApproximant",
    "fuse",
    "periodic_approximation",
    "coding_tree",
    "coding_base_points",
    "iterated_self_fusion",
    "depth_statistic",
    "OrbitGraph",
    "CoveringReport",
    "GrowthTable",
    "EndProfile",
    "EquicontinuityReport",
    "SpecializationResult",
    "WitnessReport",
    "orbit_graph",
    "growth_function",
    "recurrence_witnesses",
    "expansivity_witness",
    "accumulates_on",
    "closure_sample",
    "end_profile",
    "specialization_matrix",
    "equicontinuity_check",
    "equicontinuity_modulus",
    "verify_witness",
    "TreeboxError",
    "MalformedWordError",
    "RankMismatchError",
    "OutOfRangeError",
    "ActionUndefinedError",
    "WindowExceededError",
    "ContractViolationError",
    "UnknownTreeError",
    "CannotApproximateError",
    "InvalidAxesError",
    "MalformedCodeError",
    "NoWitnessError",
    "PreconditionUnmetError",
    "TreeJSONError",
]
