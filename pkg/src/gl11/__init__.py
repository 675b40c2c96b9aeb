"""Exact quantum gl(1|1) invariants of oriented framed tangles and links."""
from .invariant import (
    CORPUS,
    alexander,
    burau_oracle,
    cut_independence_check,
    hat_q,
    q_closed,
    skein_check,
)
from .repcat import EPS1, EPS2, ALPHA, L, Ldual, ModuleObject, Weight, r_check, r_check_inverse, ribbon_v
from .scalar import LaurentPoly, RationalFunction, parse_laurent, quantum_int, q, rf
from .tangle import SliceGen, TangleDiagram, braid_closure, evaluate, full_twist, parse_morse

__all__ = [
    "ALPHA", "CORPUS", "EPS1", "EPS2", "L", "LaurentPoly", "Ldual", "ModuleObject", "RationalFunction",
    "SliceGen", "TangleDiagram", "Weight", "alexander", "braid_closure", "burau_oracle",
    "cut_independence_check", "evaluate", "full_twist", "hat_q", "parse_laurent", "parse_morse", "q",
    "q_closed", "quantum_int", "r_check", "r_check_inverse", "rf", "ribbon_v", "skein_check",
]
