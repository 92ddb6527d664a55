"""One-parameter multipartite entanglement classes from generator functions on
integer partitions, with their quantum Fisher information criteria."""

from .bounds import (
    BoundTable,
    UsefulnessReport,
    ases,
    bound_bruteforce,
    bound_closed,
    bound_curve,
    convex_bound,
    criteria_exclude,
    induced_depth_bound,
    usefulness_report,
)
from .classify import (
    ClassLabel,
    Ensemble,
    class_of,
    depth_relation_report,
    depth_transform,
    ensemble_avg_depth,
    ensemble_depth,
    ensemble_relation_report,
    pure_depth,
)
from .errors import (
    EntDepthError,
    InconsistentInputError,
    LevelError,
    LimitError,
    NoNeighborError,
    RangeError,
    SchemaError,
)
from .genfun import (
    DownSet,
    GenFun,
    MonotoneTransform,
    compose,
    evaluate,
    extend_to_downset,
    neighbor_level,
    parse_genfun,
    sublevel_downset,
    value_range,
    verify_dominance_monotone,
    verify_refinement_monotone,
)
from .hasse import HasseGraph, export_hasse
from .partitions import (
    Partition,
    conjugate,
    dominance_covers,
    dominated_by,
    enumerate_partitions,
    refinement_covers,
    refines,
)

__version__ = "0.1.0"

__all__ = [
    "ases",
    "bound_bruteforce",
    "bound_closed",
    "bound_curve",
    "BoundTable",
    "class_of",
    "ClassLabel",
    "compose",
    "conjugate",
    "convex_bound",
    "criteria_exclude",
    "depth_relation_report",
    "depth_transform",
    "dominance_covers",
    "dominated_by",
    "DownSet",
    "Ensemble",
    "ensemble_avg_depth",
    "ensemble_depth",
    "ensemble_relation_report",
    "EntDepthError",
    "enumerate_partitions",
    "evaluate",
    "export_hasse",
    "extend_to_downset",
    "GenFun",
    "HasseGraph",
    "InconsistentInputError",
    "induced_depth_bound",
    "LevelError",
    "LimitError",
    "MonotoneTransform",
    "neighbor_level",
    "NoNeighborError",
    "parse_genfun",
    "Partition",
    "pure_depth",
    "RangeError",
    "refinement_covers",
    "refines",
    "SchemaError",
    "sublevel_downset",
    "usefulness_report",
    "UsefulnessReport",
    "value_range",
    "verify_dominance_monotone",
    "verify_refinement_monotone",
]
