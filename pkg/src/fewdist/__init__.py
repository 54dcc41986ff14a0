"""fewdist: exact-arithmetic workbench for difference sets, squared-distance
sets, statement audits, and few-distance configuration search."""

__version__ = "0.1.0"

from .errors import DomainError, FeasibilityError, ParseError, WorkbenchError
from .limits import DEFAULT_LIMITS, Limits
from .numset import NumSet, Scalar, format_scalar, parse_scalar
from .setops import (
    difference_set,
    dilate,
    iterated_combination,
    product_set,
    ratio_set,
    rep_count,
    square_set,
    sumset,
)
from .geometry import (
    INFINITY,
    Point,
    PointSet,
    RichLine,
    cartesian_square,
    distance_set,
    is_collinear,
    pointset_sumset,
    product_distance_set,
    rich_line,
    slope_set,
    solymosi_construct,
)
from .audits import (
    AuditRecord,
    FULL_CHAIN,
    RATIO_ONLY,
    check_differencing,
    check_main_theorem,
    check_plunnecke,
    check_product_sumset,
    check_rudin_exponent,
    check_solymosi,
    check_ungar,
)
from .search import (
    FamilySpec,
    SearchConfig,
    SearchState,
    anneal,
    generate_family,
    objective_value,
    scan,
)

__all__ = [
    "AuditRecord",
    "DEFAULT_LIMITS",
    "DomainError",
    "FamilySpec",
    "FeasibilityError",
    "FULL_CHAIN",
    "INFINITY",
    "Limits",
    "NumSet",
    "ParseError",
    "Point",
    "PointSet",
    "RATIO_ONLY",
    "RichLine",
    "Scalar",
    "SearchConfig",
    "SearchState",
    "WorkbenchError",
    "anneal",
    "cartesian_square",
    "check_differencing",
    "check_main_theorem",
    "check_plunnecke",
    "check_product_sumset",
    "check_rudin_exponent",
    "check_solymosi",
    "check_ungar",
    "difference_set",
    "dilate",
    "distance_set",
    "format_scalar",
    "generate_family",
    "is_collinear",
    "iterated_combination",
    "objective_value",
    "parse_scalar",
    "pointset_sumset",
    "product_distance_set",
    "product_set",
    "ratio_set",
    "rep_count",
    "rich_line",
    "scan",
    "slope_set",
    "solymosi_construct",
    "square_set",
    "sumset",
]
