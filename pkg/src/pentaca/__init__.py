"""Cellular automata on the pentagrid ({5,4} tessellation).

Fibonacci-tree coordinates over five sectors, a geometric oracle in the
Poincare disc certifying the adjacency, a sparse synchronous engine, the
halting decider for two-state automata with a quiescent state, and the
quantitative front-propagation analyses.
"""

from .decider import (
    Verdict,
    check_verdict,
    classify,
    decide,
    decide_rotation_invariant,
)
from .engine import Configuration, canonical_key, front_update, front_word, step
from .grid import CENTRAL, circle_of, circle_size, neighbors, side_between
from .rules import RuleTable, is_rotation_invariant, parse_rules, rotation_closure

__version__ = "0.1.0"

__all__ = [
    "CENTRAL",
    "Configuration",
    "RuleTable",
    "Verdict",
    "canonical_key",
    "check_verdict",
    "circle_of",
    "circle_size",
    "classify",
    "decide",
    "decide_rotation_invariant",
    "front_update",
    "front_word",
    "is_rotation_invariant",
    "neighbors",
    "parse_rules",
    "rotation_closure",
    "side_between",
    "step",
]
