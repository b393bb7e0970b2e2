"""Lattice-point planner for irreducible manifolds with order two fundamental group."""
from .decompose import Decomposition, brute_force, covered, decompose
from .plan import CITATION, ExternalReference, Open, Realized, plan, recipe_for
from .region import LatticePoint, in_region, point
from .validate import Validation, validate, validate_full

__all__ = ["CITATION", "Decomposition", "ExternalReference", "LatticePoint", "Open", "Realized", "Validation",
           "brute_force", "covered", "decompose", "in_region", "plan", "point", "recipe_for", "validate",
           "validate_full"]
