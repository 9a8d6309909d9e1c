"""Hypergraphs built from nearly disjoint cliques, with exact solvers and audits."""

__version__ = "0.1.0"

from .algebra import FiniteField, Polynomial, field_arith, field_create, interpolate, poly_eval
from .caps import (
    CapReport,
    cap_bound,
    enumerate_caps,
    greedy_cap_extension_trace,
    mixing_check,
    second_singular_value,
)
from .constructions import (
    IncidencePlane,
    RestrictionResult,
    build_affine_plane,
    build_enlarged_plane_system,
    build_polynomial_system,
    chernoff_bound,
    pad_cliques,
    random_restriction,
)
from .hypergraph import (
    CliqueSystem,
    DegreeReport,
    KGraph,
    degree_report,
    expand_to_kgraph,
    find_cherries,
    random_induced,
    validate_ell_system,
)
from .process import ProcessTrace, process_stats, run_greedy_process
from .solvers import (
    Coloring,
    SolveResult,
    exact_chromatic_number,
    exact_independence_number,
    greedy_coloring,
    greedy_independent_set,
    split_coloring,
    verify_coloring,
)

__all__ = [
    "FiniteField",
    "Polynomial",
    "field_arith",
    "field_create",
    "interpolate",
    "poly_eval",
    "CapReport",
    "cap_bound",
    "enumerate_caps",
    "greedy_cap_extension_trace",
    "mixing_check",
    "second_singular_value",
    "IncidencePlane",
    "RestrictionResult",
    "build_affine_plane",
    "build_enlarged_plane_system",
    "build_polynomial_system",
    "chernoff_bound",
    "pad_cliques",
    "random_restriction",
    "CliqueSystem",
    "DegreeReport",
    "KGraph",
    "degree_report",
    "expand_to_kgraph",
    "find_cherries",
    "random_induced",
    "validate_ell_system",
    "ProcessTrace",
    "process_stats",
    "run_greedy_process",
    "Coloring",
    "SolveResult",
    "exact_chromatic_number",
    "exact_independence_number",
    "greedy_coloring",
    "greedy_independent_set",
    "split_coloring",
    "verify_coloring",
]
