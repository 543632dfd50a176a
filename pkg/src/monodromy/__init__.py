"""Monodromy invariants of symplectic Lefschetz pencils and branched covers of the plane."""

from . import braidmono, factorizations, fibrations, fukaya, groups, lifting, snf
from .braidmono import BraidedCurveSpec, BranchData, verify_braided_curve, zvk_presentation
from .factorizations import Context, Factorization, hurwitz_move, orbit_search, verify_product
from .fibrations import FibrationSpec, fibration_invariants, hyperelliptic_signature
from .fukaya import CurveArrangement, compute_category, verify_a_infinity
from .groups import BraidWord, FreeWord, Permutation, parse_braid
from .lifting import lift_homology_action, pencil_monodromy

__version__ = "0.1.0"

__all__ = [
    "BraidWord", "BraidedCurveSpec", "BranchData", "Context", "CurveArrangement", "Factorization",
    "FibrationSpec", "FreeWord", "Permutation", "braidmono", "compute_category", "factorizations",
    "fibration_invariants", "fibrations", "fukaya", "groups", "hurwitz_move",
    "hyperelliptic_signature", "lift_homology_action", "lifting", "orbit_search", "parse_braid",
    "pencil_monodromy", "snf", "verify_a_infinity", "verify_braided_curve", "verify_product",
    "zvk_presentation",
]
