"""Hamiltonian double quasi-Poisson algebras from Euler continuants."""

from .algebra import (
    Element,
    PathAlgebra,
    QuiverSpec,
    Tensor,
    apply_S,
    gamma_algebra,
    is_zero_free,
    tensor,
)
from .brackets import (
    DoubleBracket,
    DoubleDerivation,
    Polyvector,
    bracket_from_bivector,
    build_Pn,
    check_moment_map,
    check_quasi_poisson,
    euler_bracket_table,
    h0_reduce,
    mu,
    qp_triple_bracket,
    triple_bracket,
)
from .continuants import continuant, term_count
from .factorization import (
    primed_generators,
    verify_alt_structure,
    verify_cont_factorisation,
    verify_factorisation_iso,
)
from .fusion import build_Afus
from .oracle import RepPoint, is_zero_probabilistic, sample_rep
from .parser import parse, parse_element, to_text
from .rep11 import flaschka_newell_compare, rep11_bracket
from .reports import SuiteConfig, VerificationReport, run_suite

__all__ = [
    "apply_S",
    "bracket_from_bivector",
    "build_Afus",
    "build_Pn",
    "check_moment_map",
    "check_quasi_poisson",
    "continuant",
    "DoubleBracket",
    "DoubleDerivation",
    "Element",
    "euler_bracket_table",
    "flaschka_newell_compare",
    "gamma_algebra",
    "h0_reduce",
    "is_zero_free",
    "is_zero_probabilistic",
    "mu",
    "parse",
    "parse_element",
    "PathAlgebra",
    "Polyvector",
    "primed_generators",
    "qp_triple_bracket",
    "QuiverSpec",
    "rep11_bracket",
    "RepPoint",
    "run_suite",
    "sample_rep",
    "SuiteConfig",
    "Tensor",
    "tensor",
    "term_count",
    "to_text",
    "triple_bracket",
    "VerificationReport",
    "verify_alt_structure",
    "verify_cont_factorisation",
    "verify_factorisation_iso",
]
