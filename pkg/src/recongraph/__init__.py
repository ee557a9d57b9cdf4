"""Hypomorphisms, associated digraphs and the offset-pattern graph family."""

from .abcfamily import AbcSpec, BarAbcSpec, beta_gamma, build_abc, build_bar_abc, companion
from .assoc import (
    ALPHA,
    BETA,
    AlternatingCycle,
    AssociatedDigraph,
    build_assoc,
    classify_cycle,
    classify_trichotomy,
    extend_iso,
    find_alternating_cycles,
    type_sequences,
)
from .graph import SimpleGraph, make_graph
from .harness import Caps, VerificationReport, enumerate_graphs, sweep_abc, verify_exhaustive
from .hypomorphism import Hypomorphism, deck, decks_equal, find_hypomorphisms
from .iso import canonical_key, find_isomorphism, is_isomorphic
from .decomposition import decompose_pair

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "BETA",
    "AbcSpec",
    "AlternatingCycle",
    "AssociatedDigraph",
    "BarAbcSpec",
    "Caps",
    "Hypomorphism",
    "SimpleGraph",
    "VerificationReport",
    "beta_gamma",
    "build_abc",
    "build_assoc",
    "build_bar_abc",
    "canonical_key",
    "classify_cycle",
    "classify_trichotomy",
    "companion",
    "deck",
    "decks_equal",
    "enumerate_graphs",
    "extend_iso",
    "decompose_pair",
    "find_alternating_cycles",
    "find_hypomorphisms",
    "find_isomorphism",
    "is_isomorphic",
    "make_graph",
    "sweep_abc",
    "type_sequences",
    "verify_exhaustive",
]
