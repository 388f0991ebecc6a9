"""Initialize the hajos_verify module."""

from ._helpers import (
    Graph6Error,
    GraphError,
    HeuristicError,
    NotEulerianError,
    PreconditionError,
    SearchAbortedError,
)
from .config import Config
from .exact import ExactStatus, SearchBudget, decide, min_cycles
from .filter import apply_filter
from .generator import enumerate_nonisomorphic
from .graph import Cycle, Decomposition, Graph, from_edges, hajos_bound, validate_decomposition
from .graph6 import parse_graph6, to_graph6
from .heuristics import RngStream, Strategy, decompose
from .ip_models import MissingVariableError, NoAnchorError, TracingError, build_ip_gen, build_ip_hd, emit_lp
from .pipeline import OutcomeTag, RunReport, StreamError, verify_graph, verify_stream

__all__ = [
    "Config", "Cycle", "Decomposition", "ExactStatus", "Graph", "Graph6Error", "GraphError", "HeuristicError",
    "MissingVariableError", "NoAnchorError", "NotEulerianError", "OutcomeTag", "PreconditionError", "RngStream",
    "RunReport", "SearchAbortedError", "SearchBudget", "Strategy", "StreamError", "TracingError", "apply_filter",
    "build_ip_gen", "build_ip_hd", "decide", "decompose", "emit_lp", "enumerate_nonisomorphic", "from_edges",
    "hajos_bound", "min_cycles", "parse_graph6", "to_graph6", "validate_decomposition", "verify_graph",
    "verify_stream",
]
