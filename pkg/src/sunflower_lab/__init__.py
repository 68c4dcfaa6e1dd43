"""Exact combinatorial analysis of finite set families.

Core objects: :class:`SetFamily` (an ordered multifamily of finite sets over
integer ground elements) and the exact searches on it (sunflowers, packing,
transversal, the pair-witness number), dimension computations (VC and
Littlestone, each with an independent oracle), structured family generators
with a tiny-scale exhaustive extremal search, exact and sampled intersection
probabilities with a catalog of closed-form bounds, and geometric traces of
disks and half-spaces in exact rational arithmetic.
"""

from .alpha import (
    BOUND_IDS,
    AlphaEstimate,
    BoundValue,
    CheckResult,
    InequalityReport,
    alpha_exact,
    alpha_monte_carlo,
    check_inequalities,
    evaluate_bound,
    log_star,
)
from .constructions import (
    EXTREMAL_KINDS,
    ExtremalResult,
    RandomFamilyReport,
    extremal_search,
    ls1_family,
    multifamily_identity_report,
    pad_to_uniform,
    product_family,
    random_lowerbound_family,
    tree_family,
)
from .dimensions import (
    DimensionReport,
    LittlestoneSolver,
    ShatterTree,
    dimension_report,
    ls_dimension,
    ls_dimension_tree,
    sauer_shelah_capacity,
    vc_dimension,
)
from .errors import (
    BudgetExceededError,
    EmptyFamilyError,
    EmptyMemberError,
    GeneralPositionError,
    InvalidFamilyError,
    ParameterError,
    ParseError,
    SunflowerLabError,
)
from .family import (
    FrequencyProfile,
    LambdaResult,
    PackingResult,
    SetFamily,
    Sunflower,
    TransversalResult,
    canonicalize,
    count_sunflower_tuples,
    dual_family,
    element_frequencies,
    find_sunflower,
    is_sunflower,
    lambda_number,
    packing_number,
    popular_element,
    transversal_number,
)
from .fileio import (
    Scene2,
    Scene3,
    read_scene,
    read_setfam,
    write_scene,
    write_setfam,
)
from .geometry import (
    Disk,
    Halfspace3,
    Point2,
    Point3,
    capture_disk,
    gen_k_capturing_disks,
    point2,
    point3,
    trace_disks,
    trace_halfspaces,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaEstimate",
    "BOUND_IDS",
    "BoundValue",
    "BudgetExceededError",
    "CheckResult",
    "DimensionReport",
    "Disk",
    "EXTREMAL_KINDS",
    "EmptyFamilyError",
    "EmptyMemberError",
    "ExtremalResult",
    "FrequencyProfile",
    "GeneralPositionError",
    "Halfspace3",
    "InequalityReport",
    "InvalidFamilyError",
    "LambdaResult",
    "LittlestoneSolver",
    "PackingResult",
    "ParameterError",
    "ParseError",
    "Point2",
    "Point3",
    "RandomFamilyReport",
    "Scene2",
    "Scene3",
    "SetFamily",
    "ShatterTree",
    "Sunflower",
    "SunflowerLabError",
    "TransversalResult",
    "alpha_exact",
    "alpha_monte_carlo",
    "canonicalize",
    "capture_disk",
    "check_inequalities",
    "count_sunflower_tuples",
    "dimension_report",
    "dual_family",
    "element_frequencies",
    "evaluate_bound",
    "extremal_search",
    "find_sunflower",
    "gen_k_capturing_disks",
    "is_sunflower",
    "lambda_number",
    "log_star",
    "ls1_family",
    "ls_dimension",
    "ls_dimension_tree",
    "multifamily_identity_report",
    "pad_to_uniform",
    "packing_number",
    "point2",
    "point3",
    "popular_element",
    "product_family",
    "random_lowerbound_family",
    "read_scene",
    "read_setfam",
    "sauer_shelah_capacity",
    "trace_disks",
    "trace_halfspaces",
    "transversal_number",
    "tree_family",
    "vc_dimension",
    "write_scene",
    "write_setfam",
]
