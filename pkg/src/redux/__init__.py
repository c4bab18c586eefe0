"""Exact-arithmetic polynomial reduction structures.

Marked-set rewriting without a global term order: multiplier sets
restrict which monomial multiples of each rule may fire, noetherianity
is certified by well-founded ordering functions, and confluence and
marked-basis questions are decided by exact combinatorial tests.
"""

from .terms import Term, lcm, minimal_generators, escalier, border, parse_term, format_term
from .orders import (
    TermOrder,
    parse_order,
    IdentityOrder,
    AffineWeight,
    CustomTable,
    multiset_compare,
    find_consistent_weight,
    verify_ordered,
    verify_stably_ordered,
)
from .polynomials import Polynomial, parse_polynomial, format_polynomial
from .structures import (
    Certificate,
    MultiplierSet,
    RSEntry,
    ReductionStructure,
    disjoint_selection,
    is_substructure,
    staggered_substructure,
)
from .reduction import (
    MarkedPolynomial,
    MarkedSet,
    reduce_polynomial,
    s_polynomial,
    useful_pairs,
    confluence_test,
    marked_basis_test,
    canonical_form,
    ideal_membership,
    membership_degree_bound,
    family_equations,
)
from .builders import build_structure
from .verdict import Verdict

__all__ = [
    "Term",
    "lcm",
    "minimal_generators",
    "escalier",
    "border",
    "parse_term",
    "format_term",
    "TermOrder",
    "parse_order",
    "IdentityOrder",
    "AffineWeight",
    "CustomTable",
    "multiset_compare",
    "find_consistent_weight",
    "verify_ordered",
    "verify_stably_ordered",
    "Polynomial",
    "parse_polynomial",
    "format_polynomial",
    "Certificate",
    "MultiplierSet",
    "RSEntry",
    "ReductionStructure",
    "disjoint_selection",
    "is_substructure",
    "staggered_substructure",
    "MarkedPolynomial",
    "MarkedSet",
    "reduce_polynomial",
    "s_polynomial",
    "useful_pairs",
    "confluence_test",
    "marked_basis_test",
    "canonical_form",
    "ideal_membership",
    "membership_degree_bound",
    "family_equations",
    "build_structure",
    "Verdict",
]
