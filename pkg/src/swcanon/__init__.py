"""Canonical simplicial walk invariants of graphs via involution automata."""

from .automaton import SWAutomaton, build_automaton
from .graph import Graph, ParseError, parse_edge_list, parse_graph, parse_graph6, permute
from .invariant import CanonicalInvariant, reconstruct_canonical, sw_invariant
from .mia import MIA, brute_equivalent, canonical_form, equivalent, forward_reduce, validate_mia

__version__ = "0.1.0"

__all__ = [
    "CanonicalInvariant",
    "Graph",
    "MIA",
    "ParseError",
    "SWAutomaton",
    "brute_equivalent",
    "build_automaton",
    "canonical_form",
    "equivalent",
    "forward_reduce",
    "parse_edge_list",
    "parse_graph",
    "parse_graph6",
    "permute",
    "reconstruct_canonical",
    "sw_invariant",
    "validate_mia",
]
