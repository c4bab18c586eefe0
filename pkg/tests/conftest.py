"""Shared construction helpers for the test suite."""

import random
from fractions import Fraction

from redux.polynomials import Polynomial
from redux.reduction import MarkedPolynomial, MarkedSet
from redux.structures import MultiplierSet, RSEntry, ReductionStructure
from redux.terms import Term, minimal_generators, parse_term


def mk_rs(variables, entries, certificate=None):
    """entries: list of (head str, [tail strs], [nonmult strs])."""
    built = []
    for head, tails, nonmult in entries:
        built.append(
            RSEntry(
                parse_term(head, variables),
                tuple(parse_term(s, variables) for s in tails),
                MultiplierSet.from_generators(
                    [parse_term(s, variables) for s in nonmult]
                ),
            )
        )
    return ReductionStructure(tuple(variables), tuple(built), certificate)


def strano_rs():
    long_tail = ["x^2*y", "x*y^2", "x^2", "x*y", "y^2", "x", "y", "1"]
    return mk_rs(
        ("x", "y"),
        [
            ("x^3", long_tail, ["y"]),
            ("x*y", ["x", "y", "1"], []),
            ("y^3", long_tail, ["x"]),
        ],
    )


def per_reeves_sturm_rs():
    return mk_rs(
        ("x", "y"),
        [
            ("x*y", ["x^2", "y^2"], ["y"]),
            ("x^3", [], ["y"]),
            ("y^3", [], ["x"]),
            ("x*y^2", [], ["x"]),
            ("x^2*y^2", [], []),
        ],
    )


def per_reeves_sturm_ms():
    rs = per_reeves_sturm_rs()
    v = rs.variables
    tail = Polynomial(
        {parse_term("x^2", v): Fraction(-1), parse_term("y^2", v): Fraction(-1)}
    )
    polys = [MarkedPolynomial(rs.entries[0].head, tail)]
    polys += [MarkedPolynomial(e.head, Polynomial.zero()) for e in rs.entries[1:]]
    return MarkedSet(rs, polys)


def marked(rs, tails):
    """tails: dict head-string -> dict term-string -> coefficient."""
    v = rs.variables
    by_head = {
        parse_term(h, v): Polynomial(
            {parse_term(ts, v): Fraction(c) for ts, c in body.items()}
        )
        for h, body in tails.items()
    }
    polys = [
        MarkedPolynomial(e.head, by_head.get(e.head, Polynomial.zero()))
        for e in rs.entries
    ]
    return MarkedSet(rs, polys)


def random_zero_dim_gens(rng: random.Random, nvars: int, maxdeg: int, extra: int = 2):
    """Pure powers of each variable plus a few random terms below them."""
    gens = []
    caps = []
    for i in range(nvars):
        d = rng.randint(1, maxdeg)
        caps.append(d)
        e = [0] * nvars
        e[i] = d
        gens.append(Term(e))
    for _ in range(extra):
        e = [rng.randint(0, max(c - 1, 0)) for c in caps]
        if any(e):
            gens.append(Term(e))
    return minimal_generators(gens)


def random_monomial_gens(rng: random.Random, nvars: int, maxdeg: int, count: int):
    gens = []
    for _ in range(count):
        e = [rng.randint(0, maxdeg) for _ in range(nvars)]
        if any(e):
            gens.append(Term(e))
    return minimal_generators(gens) or (Term((1,) + (0,) * (nvars - 1)),)


def random_tails(rng: random.Random, rs, density=0.7, pool=(-2, -1, 1, 2)):
    """A random marked set: each tail term kept with the given density."""
    polys = []
    for e in rs.entries:
        coeffs = {}
        for gamma in e.tails:
            if rng.random() < density:
                coeffs[gamma] = Fraction(rng.choice(pool))
        polys.append(MarkedPolynomial(e.head, Polynomial(coeffs)))
    return MarkedSet(rs, polys)
