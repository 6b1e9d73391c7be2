"""Exact sampling and verification lab for uniform rooted bipartite planar maps."""

from .errors import (
    BadLabeling,
    BadRootLabel,
    BimapLabError,
    BudgetExceeded,
    Disconnected,
    MalformedExcursion,
    MalformedTree,
    NotABridge,
    NotBipartite,
    NotPointed,
    TooLarge,
)
from .laws import OffspringLaws, standard_laws
from .rng import RngState
from .trees import (
    Mobile,
    PlaneTree,
    contour_sequence,
    count_labelings,
    validate_mobile,
    validate_tree,
    white_contour_sequence,
)
from .paths import (
    LatticePath,
    contour_path,
    corner_distance_upper_bound,
    check_contour_record_identity,
    height_and_label_profiles,
    label_path,
    lukasiewicz_path,
    walk_functionals,
    white_contour_path,
)
from .sampler import (
    cycle_shift_to_excursion,
    decode_two_type_tree,
    sample_conditioned_tree,
    sample_labels,
    sample_mobile,
    sample_nu_bridge,
    sample_unconditioned_forest,
)
from .maps import CombinatorialMap, canonical_code, validate_map
from .bijection import corner_successor, map_to_mobile, mobile_to_map

__version__ = "0.1.0"

__all__ = [
    "BadLabeling", "BadRootLabel", "BimapLabError", "BudgetExceeded",
    "Disconnected", "MalformedExcursion", "MalformedTree", "NotABridge",
    "NotBipartite", "NotPointed", "TooLarge",
    "OffspringLaws", "standard_laws", "RngState",
    "Mobile", "PlaneTree", "contour_sequence", "count_labelings",
    "validate_mobile", "validate_tree", "white_contour_sequence",
    "LatticePath", "contour_path", "corner_distance_upper_bound",
    "check_contour_record_identity", "height_and_label_profiles",
    "label_path", "lukasiewicz_path", "walk_functionals", "white_contour_path",
    "cycle_shift_to_excursion", "decode_two_type_tree", "sample_conditioned_tree",
    "sample_labels", "sample_mobile", "sample_nu_bridge", "sample_unconditioned_forest",
    "CombinatorialMap", "canonical_code", "validate_map",
    "corner_successor", "map_to_mobile", "mobile_to_map",
    "__version__",
]
