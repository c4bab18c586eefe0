"""Term orders, multiset extension, weights, and certificate verifiers."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import mk_rs, per_reeves_sturm_rs, strano_rs
from redux.orders import (
    EQ,
    GT,
    LT,
    INCOMPARABLE,
    AffineWeight,
    CustomTable,
    IdentityOrder,
    TermOrder,
    find_consistent_weight,
    multiset_compare,
    parse_order,
    verify_ordered,
    verify_stably_ordered,
)
from redux.terms import Term, parse_term

XY = ("x", "y")


def t(s, variables=XY):
    return parse_term(s, variables)


exponents = st.lists(st.integers(0, 5), min_size=2, max_size=2).map(tuple)


class TestTermOrder:
    def test_deglex_example(self):
        o = TermOrder("deglex")
        assert o.compare(t("x*y"), t("x^2")) == GT

    def test_lex_example(self):
        o = TermOrder("lex")
        assert o.compare(t("y"), t("x^3")) == GT

    def test_reflexive(self):
        o = TermOrder("degrevlex")
        assert o.compare(t("x^2*y"), t("x^2*y")) == EQ

    @given(exponents, exponents, exponents)
    def test_semigroup_and_total(self, a, b, c):
        for kind in ("lex", "deglex", "degrevlex"):
            o = TermOrder(kind)
            u, v, w = Term(a), Term(b), Term(c)
            assert o.compare(u, v) == -o.compare(v, u)
            assert o.compare(u * w, v * w) == o.compare(u, v)
            if not u.is_one():
                assert o.compare(u, Term.one(2)) == GT

    def test_matrix_order_valid(self):
        o = parse_order("matrix:[[1,1],[0,-1]]")
        assert o.compare(t("x"), t("y")) == GT
        assert o.compare(t("x*y"), t("1")) == GT

    def test_matrix_order_rejects_rank_deficient(self):
        with pytest.raises(ValueError):
            parse_order("matrix:[[1,1]]")

    def test_matrix_order_rejects_non_well_order(self):
        with pytest.raises(ValueError):
            parse_order("matrix:[[-1,0],[0,1]]")

    def test_spec_string_round_trip(self):
        for s in ("lex", "deglex", "degrevlex", "matrix:[[1,1],[0,-1]]"):
            assert parse_order(s).spec_string() == s


class TestMultisetCompare:
    def test_examples(self):
        assert multiset_compare([3], [2, 2, 1]) == GT
        assert multiset_compare([3, 1], [3, 0, 0]) == GT
        assert multiset_compare([2, 1], [2, 1]) == EQ

    def test_subset_is_smaller(self):
        assert multiset_compare([2, 2], [2]) == GT

    def test_incomparable_under_partial_order(self):
        def partial(a, b):
            # only equal-parity values compare
            if a == b:
                return EQ
            if a % 2 == b % 2:
                return (a > b) - (a < b)
            return INCOMPARABLE

        assert multiset_compare([2], [1], compare=partial) == INCOMPARABLE

    @given(st.lists(st.integers(0, 5), max_size=5), st.lists(st.integers(0, 5), max_size=5))
    def test_strict_partial_order(self, a, b):
        ab = multiset_compare(a, b)
        ba = multiset_compare(b, a)
        if ab == GT:
            assert ba == LT
        if ab == EQ:
            assert sorted(a) == sorted(b)

    @given(st.lists(st.integers(0, 8), min_size=1, max_size=6))
    def test_no_infinite_descent_on_samples(self, start):
        # replace one element by strictly smaller ones, bounded chain length
        rng = random.Random(7)
        current = list(start)
        steps = 0
        while steps < 200:
            positive = [v for v in current if v > 0]
            if not positive:
                break
            v = rng.choice(positive)
            current.remove(v)
            nxt = current + [rng.randint(0, v - 1) for _ in range(rng.randint(0, 2))]
            assert multiset_compare(current + [v], nxt) == GT
            current = nxt
            steps += 1
        assert steps < 200 or sum(current) < sum(start) + 200


class TestConsistentWeight:
    def test_single_pair(self):
        rs = mk_rs(XY, [("x^2", ["y^2"], [])])
        result = find_consistent_weight(rs)
        assert result.consistent
        w = result.weight
        assert all(v >= 1 for v in w)
        assert 2 * w[0] - 2 * w[1] > 0

    def test_pure_cycle(self):
        rs = per_reeves_sturm_rs()
        result = find_consistent_weight(rs)
        assert not result.consistent
        assert result.slack.is_one()
        lhs = Term.one(2)
        for u, m in result.cycle_heads:
            lhs = lhs * (u ** m)
        rhs = Term.one(2)
        for u, m in result.cycle_tails:
            rhs = rhs * (u ** m)
        assert lhs == rhs
        assert result.cycle_identity(XY) == "(x*y)^2 = x^2 * y^2"

    def test_strano_cycle(self):
        result = find_consistent_weight(strano_rs())
        assert not result.consistent

    def test_empty_tails(self):
        rs = mk_rs(XY, [("x^2", [], []), ("y", [], [])])
        assert find_consistent_weight(rs).weight == (1, 1)

    def test_slack_certificate(self):
        # head y with tail x*y: no term order and no pure cycle either
        rs = mk_rs(XY, [("y", ["x*y"], ["x"])])
        result = find_consistent_weight(rs)
        assert not result.consistent
        assert not result.slack.is_one()
        lhs = Term.one(2)
        for u, m in result.cycle_heads:
            lhs = lhs * (u ** m)
        rhs = Term.one(2)
        for u, m in result.cycle_tails:
            rhs = rhs * (u ** m)
        assert lhs * result.slack == rhs


class TestVerifyOrdered:
    def test_groebner_type_passes(self):
        rs = mk_rs(XY, [("x^2", ["x", "y", "1"], []), ("y^2", ["x", "y", "1"], [])])
        verdict = verify_ordered(rs, IdentityOrder(TermOrder("deglex")), "exact")
        assert verdict.status == "pass"

    def test_strano_custom_function_bounded(self):
        def phi(u):
            a, b = u.e
            if a and b:
                return 2 * (a - 1) + 2 * (b - 1) + 3
            return 2 * (a + b)

        verdict = verify_ordered(strano_rs(), CustomTable(phi, "strano"), "bounded", 12)
        assert verdict.status == "bounded-pass"

    def test_noetherianity_failure_witness(self):
        rs = mk_rs(XY, [("x*y", ["x^2", "y^2"], [])])
        verdict = verify_ordered(rs, IdentityOrder(TermOrder("deglex")), "exact")
        assert verdict.status == "fail"
        assert verdict.witness["head"] == "x*y"
        assert verdict.witness["tail"] in ("x^2", "y^2")

    def test_exact_refuses_custom(self):
        with pytest.raises(ValueError):
            verify_ordered(strano_rs(), CustomTable(lambda u: u.degree()), "exact")

    def test_affine_weight_exact(self):
        rs = mk_rs(XY, [("x^2", ["y^2"], [])])
        phi = AffineWeight([Fraction(2), Fraction(1)], TermOrder("deglex"))
        assert verify_ordered(rs, phi, "exact").status == "pass"


class TestVerifyStablyOrdered:
    def test_strano_fails(self):
        verdict = verify_stably_ordered(strano_rs(), IdentityOrder(TermOrder("lex")))
        assert verdict.status == "fail"
        assert verdict.witness["axiom"] in ("StOr3", "StOr4")

    def test_bounded_mode_runs(self):
        rs = mk_rs(XY, [("x", [], [])])
        verdict = verify_stably_ordered(
            rs, CustomTable(lambda u: u.degree() + (1 if u.e[0] else 0)), "bounded", 3
        )
        assert verdict.status in ("bounded-pass", "fail")


class TestExorsFamily:
    """The degree-blocked well-founded orders of the four-head example.

    Within each degree block the pure-power scalings sit between the
    y-degree-one term and the higher y-degrees; orders of this family are
    not semigroup orders, yet a block-rearranged variant certifies the
    structure.
    """

    @staticmethod
    def rank(u):
        a, b = u.e
        d = a + b
        base = d * (d + 3)  # enough room inside each degree block
        if d == 0:
            return 0
        if d == 1:
            return base + (0 if a else 1)
        if d == 2:
            return base + {(2, 0): 0, (0, 2): 1, (1, 1): 2}[(a, b)]
        if b == 1:
            return base + d + 1  # promoted above the scaled pure powers
        if b == 0:
            return base + 1
        if b == 2:
            return base + 2
        if b == 3:
            return base + 3
        return base + b

    def test_rearranged_member_orders_the_structure(self):
        rs = mk_rs(
            XY,
            [
                ("x^3", [], ["y"]),
                ("x*y", ["x^2", "y^2"], ["y"]),
                ("x*y^2", [], ["y"]),
                ("y^3", [], []),
            ],
        )
        phi = CustomTable(self.rank, "exors")
        assert verify_ordered(rs, phi, "bounded", 10).status == "bounded-pass"

    def test_family_is_not_a_semigroup_order(self):
        # x < y in degree one, yet x*y > y^2 fails multiplicativity
        assert self.rank(t("x")) < self.rank(t("y"))
        assert self.rank(t("x*y")) > self.rank(t("y^2"))
