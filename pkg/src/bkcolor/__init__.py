"""Constructive (Δ−1)-coloring for graphs without Δ-cliques, plus a bounds calculator.

Typical use::

    from bkcolor import GraphColorer, parse_dimacs
    g = parse_dimacs(open("graph.col").read())
    labels = GraphColorer(seed=7).fit_predict(g)
"""
from .bounds import optimize_k, threshold_Av, delta_min_Fi
from .coloring import PartialColoring, RandomSource, conflict_delete, random_coloring, repeated_color_count
from .decomposition import (
    DecompositionParams,
    DenseSet,
    Finding,
    Partition,
    audit_partition,
    build_partition,
    default_params,
    find_triples,
)
from .estimator import CliqueDecomposer, GraphColorer
from .events import BadEvent, ResampleTrace, event_family, moser_tardos, occurs
from .extension import ExtensionError, check_extension_preconditions, extend_coloring, generate_extension_instance
from .graph import (
    Coloring,
    DimacsError,
    Graph,
    brute_force_chromatic,
    clique_number_exact,
    is_clique,
    parse_dimacs,
    to_dimacs,
    verify_coloring,
)
from .pipeline import PipelineConfig, PipelineReport, brooks_coloring, color_graph
from .validation import check_graph

__version__ = "0.1.0"

__all__ = [
    "BadEvent",
    "CliqueDecomposer",
    "Coloring",
    "DecompositionParams",
    "DenseSet",
    "DimacsError",
    "ExtensionError",
    "Finding",
    "Graph",
    "GraphColorer",
    "PartialColoring",
    "Partition",
    "PipelineConfig",
    "PipelineReport",
    "RandomSource",
    "ResampleTrace",
    "audit_partition",
    "brooks_coloring",
    "brute_force_chromatic",
    "build_partition",
    "check_extension_preconditions",
    "check_graph",
    "clique_number_exact",
    "color_graph",
    "conflict_delete",
    "default_params",
    "delta_min_Fi",
    "event_family",
    "extend_coloring",
    "find_triples",
    "generate_extension_instance",
    "is_clique",
    "moser_tardos",
    "occurs",
    "optimize_k",
    "parse_dimacs",
    "random_coloring",
    "repeated_color_count",
    "threshold_Av",
    "to_dimacs",
    "verify_coloring",
]
