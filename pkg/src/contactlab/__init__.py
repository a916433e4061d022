"""Exact exterior calculus for almost contact metric structures and their
locally conformal f-cosymplectic classification."""
from .expr import Chart, Expr, parse
from .forms import KForm, VectorField, apply, d, interior, lie_bracket, wedge
from .structure import AlmostContactStructure, fundamental_form, is_normal, nijenhuis, validate
from .classify import classify, check_lc_equations, integrability_check, rigidity_check, solve_s
from .conformal import ConformalChange, rescale, verify_corollary

__all__ = [
    "Chart", "Expr", "parse", "KForm", "VectorField", "apply", "d", "interior", "lie_bracket",
    "wedge", "AlmostContactStructure", "fundamental_form", "is_normal", "nijenhuis", "validate",
    "classify", "check_lc_equations", "integrability_check", "rigidity_check", "solve_s",
    "ConformalChange", "rescale", "verify_corollary",
]
