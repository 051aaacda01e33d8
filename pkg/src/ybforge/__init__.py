"""Involutive Yang-Baxter maps, IYB groups and bijective 1-cocycles.

Everything works on explicit finite data: Cayley tables, permutation arrays
and canonical JSON files.  Every constructor verifies its output and raises
:class:`VerificationError` with a concrete witness when a check fails.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import BudgetExceeded, VerificationError, Violation
from .groups import FiniteGroup, GroupAction, GroupError, closure, fingerprint, isomorphic
from .iybgroup import (
    BijectiveCocycle,
    GeneratorMorphism,
    IYBMorphism,
    check_cocycle,
    check_iyb_morphism,
    cocycle_to_morphism,
    generator_morphism_to_full,
    lift_search,
    star_product,
)
from .kernels import BACKEND
from .perm import Permutation
from .ybe import (
    IYBMap,
    SetSolution,
    check_iyb_map,
    check_solution,
    enumerate_iyb_maps,
    map_from_solution,
    solution_from_map,
)
from .amplify import iterate_lambda2, lambda2

__all__ = [
    "BACKEND", "BijectiveCocycle", "BudgetExceeded", "FiniteGroup", "GeneratorMorphism",
    "GroupAction", "GroupError", "IYBMap", "IYBMorphism", "Permutation", "SetSolution",
    "VerificationError", "Violation", "check_cocycle", "check_iyb_map", "check_iyb_morphism",
    "check_solution", "closure", "cocycle_to_morphism", "enumerate_iyb_maps", "fingerprint",
    "generator_morphism_to_full", "isomorphic", "iterate_lambda2", "lambda2", "lift_search",
    "map_from_solution", "solution_from_map", "star_product",
]
