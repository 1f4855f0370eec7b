"""Random point sets that contain (0,m,d)-nets.

Pattern counting, net construction and verification, exact and bounded
containment probabilities, subset search and seeded Monte Carlo experiments.
"""

from .constructions import NetExistenceError, UnsupportedBaseError, generate_net, sample_uniform
from .experiments import ExperimentRecord, estimate_containment, sweep
from .grid import ElementaryInterval, Params, Point, PointSet, cell_of_point, compositions, interval_of_cell
from .netcheck import is_net, star_discrepancy
from .patterns import (
    OverlapCensus,
    Pattern,
    StripDecomposition,
    count_patterns_exact_d2,
    count_patterns_upper,
    enumerate_patterns,
    is_admissible,
    lps_compose,
    lps_decompose,
    overlap_census,
    project_pattern,
)
from .probability import (
    SandwichReport,
    exact_containment_bruteforce,
    factorial_ratio_bound,
    na_bounds_p,
    necessary_N,
    occupancy_exact,
    pz_sandwich,
    sufficient_N,
)
from .search import SearchResult, find_net_subset, occupied_cells

__version__ = "0.1.0"

__all__ = [
    "Params", "Point", "PointSet", "ElementaryInterval", "compositions", "cell_of_point", "interval_of_cell",
    "is_net", "star_discrepancy",
    "Pattern", "StripDecomposition", "OverlapCensus", "is_admissible", "enumerate_patterns",
    "count_patterns_exact_d2", "count_patterns_upper", "lps_compose", "lps_decompose",
    "project_pattern", "overlap_census",
    "generate_net", "sample_uniform", "NetExistenceError", "UnsupportedBaseError",
    "SandwichReport", "occupancy_exact", "na_bounds_p", "pz_sandwich", "exact_containment_bruteforce",
    "sufficient_N", "necessary_N", "factorial_ratio_bound",
    "SearchResult", "find_net_subset", "occupied_cells",
    "ExperimentRecord", "estimate_containment", "sweep",
]
