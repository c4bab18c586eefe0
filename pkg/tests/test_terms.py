"""Term arithmetic and monomial-ideal combinatorics."""

import pytest
from hypothesis import given, strategies as st

from redux.terms import (
    Term,
    border,
    deglex_key,
    escalier,
    escalier_full,
    format_term,
    is_interreduced,
    is_janet_complete,
    is_quasi_stable,
    iter_terms_upto,
    janet_completion,
    janet_cone_contains,
    janet_like_cone_contains,
    janet_multiplicative,
    lcm,
    minimal_generators,
    nonmultiplicative_powers,
    parse_term,
)

XY = ("x", "y")


def t(s, variables=XY):
    return parse_term(s, variables)


exponents = st.lists(st.integers(0, 6), min_size=2, max_size=4)


class TestLcm:
    def test_examples(self):
        assert lcm(t("x*y"), t("x^2")) == t("x^2*y")
        assert lcm(t("y^2"), t("x^2")) == t("x^2*y^2")
        assert lcm(t("1"), t("x^3*y")) == t("x^3*y")

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            lcm(Term((1, 2)), Term((1, 2, 3)))

    @given(exponents, exponents.map(tuple))
    def test_properties(self, a, b):
        u, v = Term(a[:2]), Term(b[:2])
        assert lcm(u, v) == lcm(v, u)
        assert lcm(u, u) == u
        assert u.divides(lcm(u, v)) and v.divides(lcm(u, v))

    @given(exponents, exponents, exponents)
    def test_associative(self, a, b, c):
        u, v, w = Term(a[:2]), Term(b[:2]), Term(c[:2])
        assert lcm(lcm(u, v), w) == lcm(u, lcm(v, w))


class TestMinVariable:
    def test_examples(self):
        assert t("x^2*y").min_variable() == 0
        assert t("y^3").min_variable() == 1
        assert t("x").min_variable() == 0

    def test_one_has_no_variable(self):
        with pytest.raises(ValueError):
            t("1").min_variable()


class TestMinimalGenerators:
    def test_examples(self):
        assert minimal_generators([t("x^2"), t("x^3"), t("y")]) == (t("y"), t("x^2"))
        assert minimal_generators([t("y"), t("y^2")]) == (t("y"),)
        got = minimal_generators(
            [t("x^3"), t("x*y"), t("y^3"), t("x*y^2"), t("x^2*y^2")]
        )
        assert set(got) == {t("x^3"), t("x*y"), t("y^3")}
        assert is_interreduced(got)

    @given(st.lists(exponents, min_size=1, max_size=8))
    def test_same_ideal(self, raw):
        terms = [Term(e[:2]) for e in raw]
        gens = minimal_generators(terms)
        assert is_interreduced(gens)
        for u in terms:
            assert any(g.divides(u) for g in gens)


class TestEscalier:
    def test_case_deg_lex_figure(self):
        terms, finite = escalier([t("x^3"), t("x*y"), t("y^2")], 3)
        assert set(terms) == {t("1"), t("x"), t("x^2"), t("y")}
        assert finite

    def test_unit_ideal(self):
        terms, finite = escalier([t("1")], 4)
        assert terms == () and finite

    def test_infinite(self):
        terms, finite = escalier([parse_term("x", XY)], 2)
        assert set(terms) == {t("1"), t("y"), t("y^2")}
        assert not finite

    @given(st.lists(exponents, min_size=1, max_size=6), st.integers(0, 5))
    def test_partition(self, raw, dmax):
        gens = [Term(e[:2]) for e in raw]
        outside, _ = escalier(gens, dmax)
        inside = [
            u for u in iter_terms_upto(2, dmax) if any(g.divides(u) for g in gens)
        ]
        everything = list(iter_terms_upto(2, dmax))
        assert sorted(list(outside) + inside, key=deglex_key) == everything


class TestBorder:
    def test_case_deg_lex(self):
        got = border([t("x^3"), t("x*y"), t("y^2")])
        assert got == (t("x*y"), t("y^2"), t("x^3"), t("x^2*y"))

    def test_growing_border(self):
        got = border([t("x^3"), t("x^2*y^2"), t("y^3")])
        assert set(got) == {t("x^3"), t("y^3"), t("x^2*y^2"), t("x^3*y"), t("x*y^3")}

    def test_variables(self):
        assert set(border([t("x"), t("y")])) == {t("x"), t("y")}

    def test_not_zero_dimensional(self):
        with pytest.raises(ValueError):
            border([t("x*y")])

    def test_contains_minimal_generators_equivalent(self):
        gens = minimal_generators([t("x^3"), t("x*y"), t("y^2")])
        bord = border(gens)
        for g in gens:
            assert any(b.divides(g) for b in bord)


class TestQuasiStable:
    def test_examples(self):
        assert is_quasi_stable([t("x^3"), t("x^2*y"), t("y^3")])
        assert not is_quasi_stable([t("x*y")])
        assert is_quasi_stable([t("x"), t("y")])


class TestJanet:
    def test_multiplicative_case_lex(self):
        m = [t("x^3"), t("x*y"), t("x^2*y"), t("y^2")]
        assert janet_multiplicative(m, t("x^3")) == frozenset({0})
        assert janet_multiplicative(m, t("x*y")) == frozenset()
        assert janet_multiplicative(m, t("x^2*y")) == frozenset({0})
        assert janet_multiplicative(m, t("y^2")) == frozenset({0, 1})

    def test_multiplicative_two_powers(self):
        m = [t("x^4"), t("y^3")]
        assert janet_multiplicative(m, t("x^4")) == frozenset({0})
        assert janet_multiplicative(m, t("y^3")) == frozenset({0, 1})

    def test_singleton_all_multiplicative(self):
        assert janet_multiplicative([t("x*y")], t("x*y")) == frozenset({0, 1})

    def test_not_member(self):
        with pytest.raises(ValueError):
            janet_multiplicative([t("x*y")], t("x"))

    def test_completion_singleton(self):
        assert janet_completion([t("x*y")]) == (t("x*y"),)

    def test_completion_two_powers(self):
        got = janet_completion([t("x^4"), t("y^3")])
        assert set(got) == {t("x^4"), t("x^4*y"), t("x^4*y^2"), t("y^3")}

    def test_already_complete(self):
        # per the division rule x is multiplicative for x*y here, so the
        # three cones already tile the ideal
        m = [t("x^3"), t("x*y"), t("y^2")]
        assert is_janet_complete(m)
        assert janet_completion(m) == tuple(sorted(m, key=deglex_key))

    @given(st.lists(exponents, min_size=1, max_size=5))
    def test_completion_tiles(self, raw):
        gens = minimal_generators([Term(e[:2]) for e in raw])
        if any(g.is_one() for g in gens):
            return
        completed = janet_completion(gens)
        n = 2
        dmax = max(g.degree() for g in completed) + n
        for u in iter_terms_upto(n, dmax):
            if any(g.divides(u) for g in completed):
                cones = [g for g in completed if janet_cone_contains(completed, g, u)]
                assert len(cones) == 1


class TestNonmultiplicativePowers:
    def test_two_powers(self):
        m = [t("x^4"), t("y^3")]
        assert nonmultiplicative_powers(m, t("x^4")) == (t("y^3"),)
        assert nonmultiplicative_powers(m, t("y^3")) == ()

    def test_only_higher_variables_block(self):
        # x^3 disagrees with x*y on the y degree, so no x power enters
        m = [t("x^3"), t("x*y"), t("y^2")]
        assert nonmultiplicative_powers(m, t("x*y")) == (t("y"),)
        assert nonmultiplicative_powers(m, t("x^3")) == (t("y"),)
        assert nonmultiplicative_powers(m, t("y^2")) == ()

    def test_singleton(self):
        assert nonmultiplicative_powers([t("x^2*y")], t("x^2*y")) == ()

    @given(st.lists(exponents, min_size=1, max_size=5))
    def test_janet_divisor_is_janet_like(self, raw):
        gens = minimal_generators([Term(e[:2]) for e in raw])
        if any(g.is_one() for g in gens):
            return
        dmax = max(g.degree() for g in gens) + 2
        for u in iter_terms_upto(2, dmax):
            for g in gens:
                if janet_cone_contains(gens, g, u):
                    assert janet_like_cone_contains(gens, g, u)


class TestGrammar:
    def test_round_trip(self):
        for s in ["1", "x", "x^3*y", "y^2", "x*y"]:
            assert format_term(parse_term(s, XY), XY) == s

    def test_whitespace_tolerant(self):
        assert parse_term("  x^2 * y ", XY) == t("x^2*y")

    def test_unknown_variable(self):
        with pytest.raises(ValueError):
            parse_term("w^2", XY)

    @given(exponents)
    def test_parse_format_inverse(self, e):
        u = Term(e[:2])
        assert parse_term(format_term(u, XY), XY) == u
