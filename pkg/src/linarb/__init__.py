"""linarb: partition graph edges into the minimum number of linear forests.

A linear forest is a graph whose components are paths (max degree two, no
cycles).  For a graph of degeneracy k and maximum degree D with
D >= 2k^2 - k, :func:`decompose` splits the edge set into exactly
``ceil(D/2)`` linear forests, which is optimal; a relaxed mode gets by with
``D >= 2k^2 - 2k`` using one extra class.  The package also ships an exact
exhaustive-search oracle, an independent partition verifier, closed-form
bounds, seeded generators, and a CLI (``linarb --help``).
"""

from .coloring import ColorClassView, ForestColoring, edge_key
from .degeneracy import (
    DegeneracyOrdering,
    degeneracy_ordering,
    left_right_neighbors,
    verify_ordering,
)
from .errors import (
    FeasibilityError,
    GraphError,
    InternalContradictionError,
    ParseError,
    PreconditionError,
)
from .graph import Graph, connected_components, edges_incident_to_set, max_degree
from .oracle import LaBounds, OracleResult, exact_la, la_bounds
from .sdr import SdrAssignment, compute_sdr, hall_certificate_check
from .solver import (
    DecomposeResult,
    Mode,
    SolverState,
    SolveStats,
    class_count_for,
    decompose,
    place_light_edge,
    regularize,
    required_max_degree,
)
from .cli import SplitMix64, generate_k_degenerate, main, parse_edge_list
from .verify import VerificationReport, Violation, verify_partition

__version__ = "0.1.0"

__all__ = [
    "ColorClassView",
    "DecomposeResult",
    "DegeneracyOrdering",
    "FeasibilityError",
    "ForestColoring",
    "Graph",
    "GraphError",
    "InternalContradictionError",
    "LaBounds",
    "Mode",
    "OracleResult",
    "ParseError",
    "PreconditionError",
    "SdrAssignment",
    "SolveStats",
    "SolverState",
    "SplitMix64",
    "VerificationReport",
    "Violation",
    "class_count_for",
    "compute_sdr",
    "connected_components",
    "decompose",
    "degeneracy_ordering",
    "edge_key",
    "edges_incident_to_set",
    "exact_la",
    "generate_k_degenerate",
    "hall_certificate_check",
    "la_bounds",
    "left_right_neighbors",
    "main",
    "max_degree",
    "parse_edge_list",
    "place_light_edge",
    "regularize",
    "required_max_degree",
    "verify_ordering",
    "verify_partition",
]
