"""Builders for the classical reduction-structure specializations.

Each builder assembles heads, tail supports, and multiplier sets from a
monomial ideal plus ordering data, validates the result exactly, and
attaches a verified noetherianity certificate where one exists.
"""

from __future__ import annotations

from typing import Sequence

from .orders import TermOrder
from .structures import (
    Certificate,
    MultiplierSet,
    RSEntry,
    ReductionStructure,
    staggered_substructure,
    verify_certificate,
)
from .terms import (
    Term,
    border as border_terms,
    deglex_key,
    escalier_full,
    escalier_is_finite,
    format_term,
    is_quasi_stable,
    iter_terms_upto,
    janet_completion,
    janet_multiplicative,
    janet_like_completion,
    is_janet_complete,
    is_janet_like_complete,
    lex_key,
    minimal_generators,
    nonmultiplicative_powers,
    sorted_terms,
)


class BuildError(ValueError):
    pass


def _finalize(
    rs: ReductionStructure, certificate: Certificate | None, validate: bool, verify: bool
) -> ReductionStructure:
    if certificate is not None and verify:
        certificate = verify_certificate(rs, certificate)
        if not certificate.verified:
            raise BuildError("builder produced a structure failing its own certificate")
    rs = rs.with_certificate(certificate)
    if validate:
        verdict = rs.validate("exact")
        if not verdict.ok:
            raise BuildError(f"builder output failed validation: {verdict.witness}")
    return rs


def _tail_candidates(
    head: Term,
    order: TermOrder,
    nvars: int,
    tail_cap: int | None,
    reduced_against: Sequence[Term] | None,
) -> tuple[tuple[Term, ...], int | None]:
    """Terms below the head, optionally escalier-restricted, degree capped.

    Degree-compatible orders bound their lower sets by the head degree, so
    the cap is implicit and lossless; any other order needs an explicit cap
    and the truncation is recorded on the structure.
    """
    if order.degree_compatible:
        cap = head.degree()
        recorded = None
    else:
        if tail_cap is None:
            raise BuildError(
                "tails are infinite under a non-degree-compatible order: "
                "pass an explicit tail degree cap"
            )
        cap = tail_cap
        recorded = tail_cap
    out = []
    for t in iter_terms_upto(nvars, cap):
        if order.compare(t, head) >= 0:
            continue
        if reduced_against is not None and any(g.divides(t) for g in reduced_against):
            continue
        out.append(t)
    return tuple(out), recorded


def groebner_rs(
    generators: Sequence[Term],
    order: TermOrder,
    variables: Sequence[str],
    reduced: bool = False,
    tail_cap: int | None = None,
    validate: bool = True,
    verify: bool = True,
) -> ReductionStructure:
    """Maximal cones; tails are all terms below each head, escalier-filtered
    in the reduced variant."""
    heads = minimal_generators(generators) if reduced else sorted_terms(set(generators))
    nvars = len(variables)
    gens = minimal_generators(generators)
    entries = []
    recorded = None
    for head in heads:
        tails, recorded = _tail_candidates(
            head, order, nvars, tail_cap, gens if reduced else None
        )
        entries.append(RSEntry(head, tails, MultiplierSet.full()))
    rs = ReductionStructure(tuple(variables), tuple(entries), tail_cap=recorded)
    return _finalize(rs, Certificate("term-order", order), validate, verify)


def staggered_rs(
    generators: Sequence[Term],
    order: TermOrder,
    variables: Sequence[str],
    tail_cap: int | None = None,
    validate: bool = True,
    verify: bool = True,
) -> ReductionStructure:
    """Disjoint-cone refinement of the maximal-cone structure.

    Heads are sorted ascending by the order, which puts divisors first;
    each entry's multiplier set removes the translated ideals of all
    earlier heads.
    """
    heads = sorted(set(generators), key=order.key)
    nvars = len(variables)
    tails = []
    recorded = None
    for head in heads:
        ts, recorded = _tail_candidates(head, order, nvars, tail_cap, None)
        tails.append(ts)
    rs = staggered_substructure(heads, tails, variables)
    rs = ReductionStructure(rs.variables, rs.entries, tail_cap=recorded)
    return _finalize(rs, Certificate("term-order", order), validate, verify)


def janet_rs(
    generators: Sequence[Term],
    order: TermOrder,
    variables: Sequence[str],
    auto_complete: bool = True,
    validate: bool = True,
    verify: bool = True,
) -> ReductionStructure:
    """Janet multiplicative variables with homogeneous escalier tails."""
    heads = sorted_terms(set(generators))
    if not is_janet_complete(heads):
        if not auto_complete:
            raise BuildError("the generating set is not Janet complete")
        heads = janet_completion(heads)
    nvars = len(variables)
    gens = minimal_generators(heads)
    entries = []
    for head in heads:
        mu = janet_multiplicative(heads, head)
        slice_terms = tuple(
            t
            for t in iter_terms_upto(nvars, head.degree())
            if t.degree() == head.degree()
            and not any(g.divides(t) for g in gens)
            and order.compare(t, head) < 0
        )
        entries.append(
            RSEntry(head, slice_terms, MultiplierSet.from_variables(nvars, mu))
        )
    rs = ReductionStructure(tuple(variables), tuple(entries))
    return _finalize(rs, Certificate("term-order", order), validate, verify)


def janet_like_rs(
    generators: Sequence[Term],
    order: TermOrder,
    variables: Sequence[str],
    auto_complete: bool = True,
    tail_cap: int | None = None,
    validate: bool = True,
    verify: bool = True,
) -> ReductionStructure:
    """Nonmultiplicative powers instead of variables; reduced tails."""
    heads = sorted_terms(set(generators))
    if not is_janet_like_complete(heads):
        if not auto_complete:
            raise BuildError("the generating set is not complete for this division")
        heads = janet_like_completion(heads)
    nvars = len(variables)
    gens = minimal_generators(heads)
    entries = []
    recorded = None
    for head in heads:
        tails, recorded = _tail_candidates(head, order, nvars, tail_cap, gens)
        nmp = nonmultiplicative_powers(heads, head)
        entries.append(RSEntry(head, tails, MultiplierSet.from_generators(nmp)))
    rs = ReductionStructure(tuple(variables), tuple(entries), tail_cap=recorded)
    return _finalize(rs, Certificate("term-order", order), validate, verify)


def _quasi_stable_violation(gens: Sequence[Term], variables: Sequence[str]) -> str | None:
    mins = minimal_generators(gens)
    n = len(variables)
    for tau in mins:
        if tau.is_one():
            continue
        m = tau.min_variable()
        sigma = tau / Term.variable(n, m)
        for j in range(m + 1, n):
            tmax = max(g.deg(j) for g in mins)
            xj = Term.variable(n, j)
            if not any(
                any(g.divides(sigma * (xj ** t)) for g in mins) for t in range(tmax + 1)
            ):
                return (
                    f"not quasi stable: generator {format_term(tau, variables)} and "
                    f"variable {variables[j]} admit no reentering power"
                )
    return None


def pommaret_rs(
    generators: Sequence[Term],
    variables: Sequence[str],
    order: TermOrder | None = None,
    validate: bool = True,
    verify: bool = True,
) -> ReductionStructure:
    """Pommaret division on the stably complete generating set.

    Multiplicative variables are those up to the minimal variable of each
    head.  With an order the tails are the smaller escalier terms of the
    head degree; without one the whole degree slice is used.  Quasi
    stability gates the construction: completion is finite exactly then.
    """
    gens = minimal_generators(generators)
    violation = _quasi_stable_violation(gens, variables)
    if violation is not None:
        raise BuildError(violation)
    nvars = len(variables)
    heads = list(gens)
    while True:
        added = []
        for alpha in heads:
            top = nvars if alpha.is_one() else alpha.min_variable() + 1
            for j in range(top, nvars):
                p = alpha * Term.variable(nvars, j)
                if p in heads or p in added:
                    continue
                if not any(_pommaret_cone_contains(h, p) for h in heads):
                    added.append(p)
        if not added:
            break
        heads.append(min(added, key=deglex_key))
        heads.sort(key=deglex_key)
        if len(heads) > 4096:
            raise BuildError("pommaret completion did not stabilize")
    entries = []
    for head in heads:
        top = nvars if head.is_one() else head.min_variable() + 1
        mu = range(top)
        slice_terms = tuple(
            t
            for t in iter_terms_upto(nvars, head.degree())
            if t.degree() == head.degree()
            and not any(g.divides(t) for g in gens)
            and (order is None or order.compare(t, head) < 0)
        )
        entries.append(
            RSEntry(head, slice_terms, MultiplierSet.from_variables(nvars, mu))
        )
    rs = ReductionStructure(tuple(variables), tuple(entries))
    stable = Certificate("stably-ordered", TermOrder("lex"))
    return _finalize(rs, stable, validate, verify)


def _pommaret_cone_contains(head: Term, t: Term) -> bool:
    if not head.divides(t):
        return False
    if head.is_one():
        return True
    top = head.min_variable()
    quotient = t / head
    return all(k == 0 or i <= top for i, k in enumerate(quotient.e))


def border_rs(
    generators: Sequence[Term],
    variables: Sequence[str],
    border_order: TermOrder | str = "lex",
    validate: bool = True,
    verify: bool = True,
) -> ReductionStructure:
    """Marked structure on the whole border of a zero-dimensional ideal.

    Each border term may be multiplied only while no later list element
    divides the product, so the cones tile the ideal.  Listing the border
    ascending by a term order yields a stably ordered structure; the
    degree-then-input listing matches the classical degree-increasing
    presentation but carries no certificate.
    """
    gens = minimal_generators(generators)
    nvars = len(variables)
    if not escalier_is_finite(gens, nvars):
        raise BuildError("the ideal is not zero dimensional")
    escal = escalier_full(gens, nvars)
    bord = border_terms(gens, nvars)
    certificate: Certificate | None
    if border_order == "degree-then-input":
        given = list(generators)
        positions = {g: k for k, g in enumerate(given)}

        def rank(t: Term):
            if t in positions:
                return (t.degree(), 0, positions[t], lex_key(t))
            return (t.degree(), 1, 0, lex_key(t))

        listed = sorted(bord, key=rank)
        certificate = None
    else:
        order = border_order if isinstance(border_order, TermOrder) else TermOrder(border_order)
        listed = sorted(bord, key=order.key)
        certificate = Certificate("stably-ordered", order)
    entries = []
    for i, head in enumerate(listed):
        gens_i = [listed[j].quotient_clamped(head) for j in range(i + 1, len(listed))]
        entries.append(
            RSEntry(head, tuple(escal), MultiplierSet.from_generators(gens_i))
        )
    rs = ReductionStructure(tuple(variables), tuple(entries))
    return _finalize(rs, certificate, validate, verify)


def build_structure(
    kind: str,
    generators: Sequence[Term],
    variables: Sequence[str],
    order: TermOrder | None = None,
    border_order: TermOrder | str | None = None,
    tail_cap: int | None = None,
    auto_complete: bool = True,
    validate: bool = True,
    verify: bool = True,
) -> ReductionStructure:
    def need_order() -> TermOrder:
        if order is None:
            raise BuildError(f"builder {kind!r} needs a term order")
        return order

    if kind == "groebner":
        return groebner_rs(generators, need_order(), variables, False, tail_cap, validate, verify)
    if kind == "groebner-reduced":
        return groebner_rs(generators, need_order(), variables, True, tail_cap, validate, verify)
    if kind == "staggered":
        return staggered_rs(generators, need_order(), variables, tail_cap, validate, verify)
    if kind == "janet":
        return janet_rs(generators, need_order(), variables, auto_complete, validate, verify)
    if kind == "janet-like":
        return janet_like_rs(
            generators, need_order(), variables, auto_complete, tail_cap, validate, verify
        )
    if kind == "pommaret":
        return pommaret_rs(generators, variables, need_order(), validate, verify)
    if kind == "pommaret-free":
        return pommaret_rs(generators, variables, None, validate, verify)
    if kind == "border":
        return border_rs(generators, variables, border_order or "lex", validate, verify)
    raise BuildError(f"unknown builder kind {kind!r}")
