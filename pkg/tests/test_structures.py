"""Validation, classification, substructures, and the disjoint selection."""

import json
import random

import pytest

from conftest import mk_rs, per_reeves_sturm_rs, random_monomial_gens, strano_rs
from redux.orders import TermOrder, find_consistent_weight
from redux.structures import (
    Certificate,
    MultiplierSet,
    ReductionStructure,
    disjoint_selection,
    is_substructure,
    staggered_substructure,
    verify_certificate,
)
from redux.terms import Term, format_term, iter_terms_upto, parse_term

XY = ("x", "y")
XYZ = ("x", "y", "z")


def t(s, variables=XY):
    return parse_term(s, variables)


def ultimo_rs():
    return mk_rs(
        XYZ,
        [
            ("x*y", [], ["z"]),
            ("x*z", [], ["y*z"]),
            ("y*z^2", [], []),
        ],
    )


class TestValidate:
    def test_strano_passes(self):
        assert strano_rs().validate("exact").status == "pass"

    def test_uncovered_witness(self):
        rs = mk_rs(XY, [("x^3", [], ["y"]), ("y^3", [], ["x"])])
        verdict = rs.validate("exact")
        assert verdict.status == "fail"
        assert verdict.witness["term"] == "x^3*y"

    def test_singleton_full_cone(self):
        rs = mk_rs(XY, [("x^2*y", [], [])])
        assert rs.validate("exact").status == "pass"

    def test_duplicate_heads_rejected(self):
        rs = mk_rs(XY, [("x", [], []), ("x", [], [])])
        assert rs.validate("exact").status == "fail"

    def test_tail_inside_cone_rejected(self):
        rs = mk_rs(XY, [("x", ["x^2"], [])])
        verdict = rs.validate("exact")
        assert verdict.status == "fail"
        assert verdict.witness["error"] == "tail term lies in the head cone"

    def test_bounded_mode(self):
        rs = strano_rs()
        assert rs.validate("bounded", 6).status == "bounded-pass"

    def test_some_entry_has_full_multipliers(self):
        # every valid structure keeps at least one unrestricted head
        rng = random.Random(5)
        for _ in range(25):
            gens = random_monomial_gens(rng, 2, 4, 3)
            rs = mk_rs(
                XY, [(format_term(g, XY), [], []) for g in gens]
            )
            assert rs.validate("exact").ok
            assert any(e.mult.is_full for e in rs.entries)


class TestClassify:
    def test_strano(self):
        rs = strano_rs()
        report = rs.classify()
        assert report.disjoint_cones
        assert report.multiplicative_variables
        assert not find_consistent_weight(rs).consistent

    def test_maximal_cones_not_disjoint(self):
        rs = mk_rs(XY, [("x^2", ["x", "1"], []), ("x*y", ["y", "1"], [])])
        report = rs.classify()
        assert report.maximal_cones
        assert not report.disjoint_cones

    def test_ultimo_disjoint(self):
        report = ultimo_rs().classify()
        assert report.disjoint_cones
        assert not report.multiplicative_variables  # tau_xz excludes y*z only

    def test_homogeneous_and_reduced(self):
        rs = mk_rs(XY, [("x^2", ["x*y"], []), ("y^2", [], [])])
        report = rs.classify()
        assert report.homogeneous
        assert report.reduced_tails  # x*y lies outside (x^2, y^2)
        rs2 = mk_rs(XY, [("x^2", ["x^2*y"], ["x"]), ("y^2", [], [])])
        assert not rs2.classify().reduced_tails
        assert not rs2.classify().homogeneous

    def test_consistent_with_order(self):
        rs = mk_rs(XY, [("x^2", ["x", "1"], [])])
        assert rs.classify(TermOrder("deglex")).consistent_with_order
        rs2 = mk_rs(XY, [("x^2", ["x*y"], ["y"])])
        assert rs2.classify(TermOrder("lex")).consistent_with_order is False


class TestSubstructure:
    def test_staggered_is_substructure(self):
        heads = [t("x*y"), t("y^2"), t("x^3")]
        maximal = mk_rs(XY, [("x*y", [], []), ("y^2", [], []), ("x^3", [], [])])
        sub = staggered_substructure(heads, [(), (), ()], XY)
        assert is_substructure(sub, maximal)

    def test_reflexive(self):
        rs = strano_rs()
        assert is_substructure(rs, rs)

    def test_different_variable_sets(self):
        a = mk_rs(XY, [("x", [], ["y"])])
        b = mk_rs(XY, [("x", [], ["x"])])
        assert not is_substructure(a, b) or not is_substructure(b, a)

    def test_mismatched_heads_rejected(self):
        a = mk_rs(XY, [("x", [], [])])
        b = mk_rs(XY, [("y", [], [])])
        with pytest.raises(ValueError):
            is_substructure(a, b)

    def test_transitive_on_chain(self):
        heads = [t("x^2"), t("x*y"), t("y^3")]
        maximal = mk_rs(XY, [("x^2", [], []), ("x*y", [], []), ("y^3", [], [])])
        mid = staggered_substructure(heads, [(), (), ()], XY)
        assert is_substructure(mid, maximal)
        assert is_substructure(mid, mid)


class TestStaggered:
    def test_three_heads(self):
        sub = staggered_substructure([t("x*y"), t("y^2"), t("x^3")], [(), (), ()], XY)
        assert sub.entries[0].mult.is_full
        assert sub.entries[1].mult.nonmult == (t("x"),)
        assert sub.entries[2].mult.nonmult == (t("y"),)

    def test_two_heads(self):
        sub = staggered_substructure([t("x^2"), t("x*y")], [(), ()], XY)
        assert sub.entries[0].mult.is_full
        assert sub.entries[1].mult.nonmult == (t("x"),)

    def test_singleton(self):
        sub = staggered_substructure([t("x")], [()], XY)
        assert sub.entries[0].mult.is_full

    def test_requires_divisor_first_order(self):
        with pytest.raises(ValueError):
            staggered_substructure([t("x^2"), t("x")], [(), ()], XY)
        sub = staggered_substructure([t("x^2"), t("x")], [(), ()], XY, reorder=True)
        assert sub.entries[0].head == t("x")

    def test_tiles_random_ideals(self):
        rng = random.Random(11)
        for _ in range(20):
            gens = random_monomial_gens(rng, 2, 4, 3)
            sub = staggered_substructure(list(gens), [()] * len(gens), XY, reorder=True)
            assert sub.validate("exact").ok
            report = sub.classify()
            assert report.disjoint_cones


class TestDisjointSelection:
    def certified(self, rs):
        cert = verify_certificate(rs, Certificate("term-order", TermOrder("deglex")))
        assert cert.verified
        return rs.with_certificate(cert)

    def test_disjoint_input_unchanged(self):
        sub = staggered_substructure(
            [t("x*y"), t("y^2"), t("x^3")], [(), (), ()], XY
        )
        rs = self.certified(sub)
        assert disjoint_selection(rs, rs) is rs

    def test_maximal_cones_match_staggered(self):
        rs = self.certified(
            mk_rs(XY, [("x^2", [], []), ("x*y", [], []), ("y^2", [], [])])
        )
        selection = disjoint_selection(rs, rs)
        reference = staggered_substructure(
            [t("x^2"), t("x*y"), t("y^2")], [(), (), ()], XY
        )
        for d in range(0, 7):
            for eta in iter_terms_upto(2, d):
                for i in range(3):
                    assert selection.entries[i].multiplier_contains(eta) == \
                        reference.entries[i].multiplier_contains(eta)

    def test_selection_tiles(self):
        rs = self.certified(
            mk_rs(XY, [("x^2", [], []), ("x*y", [], []), ("y^2", [], [])])
        )
        selection = disjoint_selection(rs, rs)
        for u in iter_terms_upto(2, 8):
            if rs.ideal_contains(u):
                owners = [
                    i for i, e in enumerate(selection.entries) if e.cone_contains(u)
                ]
                assert len(owners) == 1

    def test_needs_certificate(self):
        rs = mk_rs(XY, [("x^2", [], []), ("x*y", [], [])])
        with pytest.raises(ValueError):
            disjoint_selection(rs, rs)


class TestSerialization:
    def test_round_trip_bitwise(self):
        rs = strano_rs()
        doc = rs.to_doc()
        text = json.dumps(doc, indent=1, sort_keys=True)
        back = ReductionStructure.from_doc(json.loads(text))
        assert json.dumps(back.to_doc(), indent=1, sort_keys=True) == text

    def test_certificate_reverified_on_load(self):
        rs = mk_rs(XY, [("x^2", ["x", "1"], [])])
        doc = rs.to_doc()
        doc["certificate"] = {"kind": "term-order", "order": "deglex", "verified": True}
        back = ReductionStructure.from_doc(doc)
        assert back.certificate.verified

    def test_bogus_certificate_demoted(self):
        rs = mk_rs(XY, [("x*y", ["x^2", "y^2"], [])])
        doc = rs.to_doc()
        doc["certificate"] = {"kind": "term-order", "order": "deglex", "verified": True}
        back = ReductionStructure.from_doc(doc)
        assert not back.certificate.verified

    def test_entry_order_preserved(self):
        rs = mk_rs(XY, [("y^2", [], ["x"]), ("x", [], [])])
        back = ReductionStructure.from_doc(rs.to_doc())
        assert [e.head for e in back.entries] == [t("y^2"), t("x")]
