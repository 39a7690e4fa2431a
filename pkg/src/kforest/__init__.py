"""Exact solver for the k-forest problem: k edge-disjoint forests of maximum total size."""

from .errors import (
    CapacityError,
    ContractError,
    GenerationError,
    InputError,
    InvariantError,
    KForestError,
    ParseError,
    StateError,
)
from .exact import bounded_indegree_forests, partition_opt_certificate, solve_kforest
from .graph import ForestFamily, MultiGraph, Orientation
from .solver import SolveStats, forests, verify_solution

__all__ = [
    "CapacityError",
    "ContractError",
    "ForestFamily",
    "GenerationError",
    "InputError",
    "InvariantError",
    "KForestError",
    "MultiGraph",
    "Orientation",
    "ParseError",
    "SolveStats",
    "StateError",
    "bounded_indegree_forests",
    "forests",
    "partition_opt_certificate",
    "solve_kforest",
    "verify_solution",
]
