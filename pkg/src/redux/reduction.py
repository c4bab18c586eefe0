"""Marked sets, the rewriting engine, and the decision procedures.

A marked set attaches one monic polynomial to every head of a reduction
structure; the base rewriting step removes a term lying in some cone by
subtracting the matching multiple of the marked polynomial.  Confluence
and marked-basis questions are settled by S-polynomial tests (disjoint
or maximal cones with a multiplicative certificate), by the linear
criterion on stably ordered structures, or by bounded checks against
the disjoint selection.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .orders import GT, IdentityOrder, OrderingFunction
from .polynomials import (
    CPoly,
    CRing,
    Polynomial,
    format_polynomial,
    poly_from_doc,
    poly_to_doc,
)
from .structures import (
    Certificate,
    ReductionStructure,
    disjoint_selection,
)
from .terms import (
    Term,
    degrevlex_key,
    deglex_key,
    format_term,
    iter_terms_upto,
    lcm,
    lex_key,
    nonmultiplicative_powers,
    sorted_terms,
)
from .verdict import BOUNDED_PASS, BUDGET_EXCEEDED, FAIL, PASS, Verdict

DEFAULT_BUDGET = 10**6


class BudgetExceededError(RuntimeError):
    """Raised where a verdict cannot carry the exhaustion result."""


@dataclass(frozen=True)
class MarkedPolynomial:
    """Monic head plus a tail supported inside the head's tail set."""

    head: Term
    tail: Polynomial

    def poly(self) -> Polynomial:
        return Polynomial.monomial(self.head) + self.tail


class MarkedSet:
    """One marked polynomial per structure entry, aligned by index."""

    def __init__(self, structure: ReductionStructure, polys: Sequence[MarkedPolynomial]):
        if len(polys) != len(structure.entries):
            raise ValueError("one marked polynomial per entry is required")
        for entry, mp in zip(structure.entries, polys):
            if mp.head != entry.head:
                raise ValueError(
                    f"marked polynomial head {mp.head} does not match entry head {entry.head}"
                )
            allowed = set(entry.tails)
            for t in mp.tail.support():
                if t == entry.head:
                    raise ValueError("tail may not contain the head")
                if t not in allowed:
                    raise ValueError(
                        f"tail term {format_term(t, structure.variables)} outside the tail set"
                    )
        self.structure = structure
        self.polys = tuple(polys)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.structure.variables

    def with_structure(self, structure: ReductionStructure) -> "MarkedSet":
        return MarkedSet(structure, self.polys)

    def to_doc(self) -> dict:
        return {
            "structure": self.structure.to_doc(),
            "polys": [
                {
                    "head": format_term(mp.head, self.variables),
                    "tail": poly_to_doc(mp.tail, self.variables),
                }
                for mp in self.polys
            ],
        }

    @staticmethod
    def from_doc(doc: dict, structure: ReductionStructure | None = None) -> "MarkedSet":
        if structure is None:
            structure = ReductionStructure.from_doc(doc["structure"])
        variables = structure.variables
        from .terms import parse_term

        polys = []
        for rec in doc["polys"]:
            head = parse_term(rec["head"], variables)
            tail = poly_from_doc(rec.get("tail", {}), variables)
            polys.append(MarkedPolynomial(head, tail))
        by_head = {mp.head: mp for mp in polys}
        if len(by_head) != len(polys):
            raise ValueError("duplicate marked polynomial heads")
        try:
            aligned = [by_head[e.head] for e in structure.entries]
        except KeyError as exc:
            raise ValueError(f"missing marked polynomial for head {exc}") from None
        return MarkedSet(structure, aligned)


def monomial_marked_set(structure: ReductionStructure) -> MarkedSet:
    return MarkedSet(
        structure,
        [MarkedPolynomial(e.head, Polynomial.zero()) for e in structure.entries],
    )


# ---------------------------------------------------------------------------
# rewriting engine

@dataclass(frozen=True)
class ReductionStep:
    entry: int
    multiplier: Term
    coefficient: object
    term: Term

    def to_doc(self, ms: MarkedSet) -> dict:
        coeff = self.coefficient
        return {
            "entry": self.entry,
            "head": format_term(ms.polys[self.entry].head, ms.variables),
            "multiplier": format_term(self.multiplier, ms.variables),
            "coefficient": coeff.render() if isinstance(coeff, CPoly) else str(coeff),
            "term": format_term(self.term, ms.variables),
        }


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)

    def representation(self) -> list[tuple[int, Term, object]]:
        """Collapse steps into a representation by tau-F: distinct multiples."""
        acc: dict[tuple[int, Term], object] = {}
        for s in self.steps:
            key = (s.entry, s.multiplier)
            acc[key] = acc.get(key, 0) + s.coefficient
        return [(i, eta, c) for (i, eta), c in acc.items() if c]

    def combination(self, ms: MarkedSet) -> Polynomial:
        total = Polynomial.zero()
        for i, eta, c in self.representation():
            total = total + ms.polys[i].poly().mul_term(eta, c)
        return total


@dataclass
class ReductionOutcome:
    status: str  # "reduced" or "budget-exceeded"
    remainder: Polynomial
    trace: ReductionTrace

    @property
    def reduced(self) -> bool:
        return self.status == "reduced"


def _chooser(ms: MarkedSet, strategy: str, seed: int, phi: OrderingFunction | None):
    entries = ms.structure.entries

    if strategy == "first-match":
        def choose(g: Polynomial):
            supp = g.support()
            for i, entry in enumerate(entries):
                cands = [t for t in supp if entry.cone_contains(t)]
                if cands:
                    return max(cands, key=degrevlex_key), i
            return None
        return choose

    if strategy == "max-phi":
        if phi is None:
            cert = ms.structure.certificate
            if cert is None or not cert.verified:
                raise ValueError("max-phi strategy needs an ordering certificate")
            phi_fn = cert.ordering_function()
        else:
            phi_fn = phi

        def choose(g: Polynomial):
            best = None
            for t in g.support():
                for i, entry in enumerate(entries):
                    if entry.cone_contains(t):
                        key = (phi_fn.value(t), degrevlex_key(t))
                        if best is None or key > best[0]:
                            best = (key, t, i)
                        break
            if best is None:
                return None
            return best[1], best[2]
        return choose

    if strategy == "random":
        rng = random.Random(seed)

        def choose(g: Polynomial):
            options = [
                (t, i)
                for t in g.support()
                for i, entry in enumerate(entries)
                if entry.cone_contains(t)
            ]
            if not options:
                return None
            return options[rng.randrange(len(options))]
        return choose

    raise ValueError(f"unknown strategy {strategy!r}")


def reduce_step(
    ms: MarkedSet,
    g: Polynomial,
    strategy: str = "first-match",
    seed: int = 0,
    phi: OrderingFunction | None = None,
):
    """One base rewriting step; None when g is already a J-remainder."""
    choice = _chooser(ms, strategy, seed, phi)(g)
    if choice is None:
        _assert_reduced(ms, g)
        return None
    t, i = choice
    eta = t / ms.polys[i].head
    c = g.coeff(t)
    h = g - ms.polys[i].poly().mul_term(eta, c)
    return h, ReductionStep(i, eta, c, t)


def _assert_reduced(ms: MarkedSet, g: Polynomial) -> None:
    for t in g.support():
        if ms.structure.ideal_contains(t):
            raise RuntimeError(
                "coverage violation: a term of the ideal lies in no cone"
            )


def reduce_polynomial(
    ms: MarkedSet,
    g: Polynomial,
    strategy: str = "first-match",
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    phi: OrderingFunction | None = None,
) -> ReductionOutcome:
    """Iterate base steps to a J-remainder or until the budget runs out.

    Budget exhaustion is an outcome, not an exception: structures without
    a noetherianity certificate may legitimately loop forever.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    choose = _chooser(ms, strategy, seed, phi)
    trace = ReductionTrace()
    current = g
    for _ in range(budget):
        choice = choose(current)
        if choice is None:
            _assert_reduced(ms, current)
            return ReductionOutcome("reduced", current, trace)
        t, i = choice
        eta = t / ms.polys[i].head
        c = current.coeff(t)
        current = current - ms.polys[i].poly().mul_term(eta, c)
        trace.steps.append(ReductionStep(i, eta, c, t))
    choice = choose(current)
    if choice is None:
        return ReductionOutcome("reduced", current, trace)
    return ReductionOutcome("budget-exceeded", current, trace)


# ---------------------------------------------------------------------------
# S-polynomials and pair pruning

def s_polynomial(ms: MarkedSet, i: int, j: int) -> Polynomial:
    """(lcm / head_i) f_i - (lcm / head_j) f_j; the heads cancel."""
    if i == j:
        raise ValueError("distinct indices required")
    hi, hj = ms.polys[i].head, ms.polys[j].head
    common = lcm(hi, hj)
    return ms.polys[i].poly().mul_term(common / hi) - ms.polys[j].poly().mul_term(
        common / hj
    )


def moller_identity_check(ms: MarkedSet, i: int, j: int, k: int) -> bool:
    """Exact check of the three-term S-polynomial syzygy."""
    if len({i, j, k}) != 3:
        raise ValueError("distinct indices required")
    hi, hj, hk = (ms.polys[x].head for x in (i, j, k))
    top = lcm(lcm(hi, hj), hk)
    expr = (
        s_polynomial(ms, i, k).mul_term(top / lcm(hi, hk))
        - s_polynomial(ms, i, j).mul_term(top / lcm(hi, hj))
        + s_polynomial(ms, k, j).mul_term(top / lcm(hk, hj))
    )
    return expr.is_zero()


@dataclass(frozen=True)
class PairDecision:
    i: int
    j: int
    lcm: Term
    kept: bool
    reason: str | None = None
    chain_k: int | None = None


@dataclass
class PairReport:
    decisions: list[PairDecision]
    condition12: bool

    def kept(self) -> list[PairDecision]:
        return [d for d in self.decisions if d.kept]

    def pruned(self) -> list[PairDecision]:
        return [d for d in self.decisions if not d.kept]

    def to_doc(self, variables: Sequence[str]) -> dict:
        return {
            "condition12_certified": self.condition12,
            "pairs": [
                {
                    "pair": [d.i + 1, d.j + 1],
                    "lcm": format_term(d.lcm, variables),
                    "status": "kept" if d.kept else "pruned",
                    **({"reason": d.reason} if d.reason else {}),
                    **({"chain": d.chain_k + 1} if d.chain_k is not None else {}),
                }
                for d in self.decisions
            ],
        }


def condition12_certified(rs: ReductionStructure) -> bool:
    """Multiplicative monotonicity of the certificate's ordering function.

    Identity functions of term orders satisfy it; stably-ordered
    certificates do not claim it.
    """
    cert = rs.certificate
    return cert is not None and cert.verified and cert.kind == "term-order"


def useful_pairs(ms: MarkedSet, method: str = "cone-filter") -> PairReport:
    """Prune S-pairs that provably need no reduction test.

    Pairs are enumerated by (lcm degree, lcm, index), which refines
    divisibility of the lcms.  The cone filter discards pairs whose lcm
    lies in neither cone.  With a multiplicative certificate the
    coprime-head rule and the chain rule apply; a chain witness must use
    premise pairs that were not themselves discarded by the cone filter.
    """
    if method not in ("cone-filter", "buchberger"):
        raise ValueError(f"unknown pair method {method!r}")
    entries = ms.structure.entries
    s = len(entries)
    pairs = sorted(
        ((i, j) for i in range(s) for j in range(i + 1, s)),
        key=lambda p: (
            lcm(entries[p[0]].head, entries[p[1]].head).degree(),
            lex_key(lcm(entries[p[0]].head, entries[p[1]].head)),
            p,
        ),
    )
    cond12 = condition12_certified(ms.structure)
    position = {p: n for n, p in enumerate(pairs)}
    decisions: dict[tuple[int, int], PairDecision] = {}
    for i, j in pairs:
        common = lcm(entries[i].head, entries[j].head)
        if not (entries[i].cone_contains(common) or entries[j].cone_contains(common)):
            decisions[(i, j)] = PairDecision(i, j, common, False, "cone-filter")
            continue
        if method == "buchberger" and cond12:
            if common == entries[i].head * entries[j].head:
                decisions[(i, j)] = PairDecision(i, j, common, False, "coprime-heads")
                continue
            witness = None
            for k in range(s):
                if k in (i, j) or not entries[k].head.divides(common):
                    continue
                first = (min(i, k), max(i, k))
                second = (min(k, j), max(k, j))
                if position[first] >= position[(i, j)] or position[second] >= position[(i, j)]:
                    continue
                usable = all(
                    decisions[p].kept or decisions[p].reason != "cone-filter"
                    for p in (first, second)
                )
                if usable:
                    witness = k
                    break
            if witness is not None:
                decisions[(i, j)] = PairDecision(i, j, common, False, "chain", witness)
                continue
        decisions[(i, j)] = PairDecision(i, j, common, True)
    return PairReport([decisions[p] for p in pairs], cond12)


def criterion_checks(rs: ReductionStructure) -> list[tuple[int, Term]]:
    """Minimal nonmultiplier multiplications per head.

    These drive the linear marked-basis criterion: on a stably ordered
    structure reducing every minimal nonmultiplier multiple of every
    marked polynomial to zero is equivalent to being a marked basis.
    """
    out = []
    for i, e in enumerate(rs.entries):
        if e.excluded:
            raise ValueError("criterion checks need plain multiplier sets")
        for g in sorted_terms(e.mult.nonmult):
            out.append((i, g))
    return out


# ---------------------------------------------------------------------------
# confluence and marked-basis decisions

def default_pair_bound(rs: ReductionStructure) -> int:
    heads = rs.heads
    if len(heads) >= 2:
        best = max(
            lcm(heads[i], heads[j]).degree()
            for i in range(len(heads))
            for j in range(i + 1, len(heads))
        )
    else:
        best = max((h.degree() for h in heads), default=0)
    return best + 1


def _certified(rs: ReductionStructure) -> bool:
    return rs.certificate is not None and rs.certificate.verified


def _spoly_conclusive(ms: MarkedSet, classify) -> bool:
    return condition12_certified(ms.structure) and (
        classify.disjoint_cones or classify.maximal_cones
    )


def _reduce_kept_pairs(ms: MarkedSet, budget: int, method: str) -> Verdict | None:
    report = useful_pairs(ms, "buchberger")
    variables = ms.variables
    for d in report.kept():
        sp = s_polynomial(ms, d.i, d.j)
        outcome = reduce_polynomial(ms, sp, budget=budget)
        if outcome.status == "budget-exceeded":
            return Verdict(
                BUDGET_EXCEEDED, method,
                witness={"pair": [d.i + 1, d.j + 1]},
            )
        if not outcome.remainder.is_zero():
            heads = [format_term(ms.polys[d.i].head, variables),
                     format_term(ms.polys[d.j].head, variables)]
            return Verdict(
                FAIL, method,
                witness={
                    "pair": [d.i + 1, d.j + 1],
                    "heads": heads,
                    "remainder": format_polynomial(outcome.remainder, variables),
                },
                details={"pruned": len(report.pruned())},
            )
    return None


def confluence_test(
    ms: MarkedSet,
    method: str = "auto",
    bound: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Decide (or boundedly test) confluence of the rewriting rule.

    disjoint: certified disjoint cones are confluent outright.
    spoly: on certified maximal cones the S-pair reductions decide
      confluence exactly; failures carry the offending remainder.
    degree-bound: every tau-multiple outside the disjoint selection must
      reduce to zero over the selection, checked up to the bound.
    """
    rs = ms.structure
    classify = rs.classify()
    if method == "auto":
        if classify.disjoint_cones and _certified(rs):
            method = "disjoint"
        elif classify.maximal_cones and condition12_certified(rs):
            method = "spoly"
        else:
            method = "degree-bound"

    if method == "disjoint":
        if not classify.disjoint_cones:
            raise ValueError("the cones are not disjoint")
        if not _certified(rs):
            raise ValueError("the disjoint shortcut needs a noetherianity certificate")
        return Verdict(PASS, "confluence-disjoint")

    if method == "spoly":
        if classify.disjoint_cones and _certified(rs):
            return Verdict(PASS, "confluence-disjoint")
        if not (classify.maximal_cones and condition12_certified(rs)):
            raise ValueError(
                "the S-polynomial confluence test needs maximal cones and a "
                "term-order certificate"
            )
        failure = _reduce_kept_pairs(ms, budget, "confluence-spoly")
        return failure or Verdict(PASS, "confluence-spoly")

    if method == "degree-bound":
        if not _certified(rs):
            raise ValueError("bounded confluence needs a noetherianity certificate")
        d = default_pair_bound(rs) if bound is None else bound
        selection = disjoint_selection(rs, rs)
        restricted = ms.with_structure(selection)
        for i, entry in enumerate(rs.entries):
            head_deg = entry.head.degree()
            for eta in iter_terms_upto(rs.nvars, max(d - head_deg, 0)):
                if not entry.multiplier_contains(eta):
                    continue
                if selection.entries[i].multiplier_contains(eta):
                    continue
                g = ms.polys[i].poly().mul_term(eta)
                outcome = reduce_polynomial(restricted, g, budget=budget)
                if outcome.status == "budget-exceeded":
                    return Verdict(
                        BUDGET_EXCEEDED, f"confluence-degree-bound({d})",
                        witness=_multiple_witness(ms, i, eta),
                    )
                if not outcome.remainder.is_zero():
                    w = _multiple_witness(ms, i, eta)
                    w["remainder"] = format_polynomial(outcome.remainder, ms.variables)
                    return Verdict(FAIL, f"confluence-degree-bound({d})", witness=w)
        return Verdict(BOUNDED_PASS, f"confluence-degree-bound({d})")

    raise ValueError(f"unknown confluence method {method!r}")


def _multiple_witness(ms: MarkedSet, i: int, eta: Term) -> dict:
    return {
        "head": format_term(ms.polys[i].head, ms.variables),
        "multiplier": format_term(eta, ms.variables),
    }


def _stable_applicable(rs: ReductionStructure) -> bool:
    cert = rs.certificate
    if cert is not None and cert.verified and cert.kind == "stably-ordered":
        return True
    # Janet-like form: nonmultipliers equal the nonmultiplicative powers,
    # tails reduced, and a term-order certificate for noetherianity
    if cert is None or not cert.verified or cert.kind != "term-order":
        return False
    heads = rs.heads
    gens = rs.ideal_generators()
    for e in rs.entries:
        if e.excluded:
            return False
        if any(any(h.divides(g) for h in gens) for g in e.tails):
            return False
        if set(e.mult.nonmult) != set(nonmultiplicative_powers(heads, e.head)):
            return False
    return True


def marked_basis_test(
    ms: MarkedSet,
    method: str = "auto",
    bound: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Decide whether the marked set freely generates against the escalier.

    spoly: reduce the kept S-pairs; any nonzero remainder refutes the
      basis property outright, while a clean pass needs disjoint or
      maximal cones together with a multiplicative certificate.
    stable: the linear criterion; reduce every minimal nonmultiplier
      multiple of every marked polynomial.
    degree-bound: compare the spans of all multiples against the
      multiplier-restricted multiples degree by degree.
    auto: establish a confluence verdict first, then pick the strongest
      applicable basis method; both verdicts are reported.
    """
    rs = ms.structure
    if method == "auto":
        conf = confluence_test(ms, "auto", bound=bound, budget=budget)
        if conf.status in (FAIL, BUDGET_EXCEEDED):
            return Verdict(
                conf.status, "basis-auto", witness=conf.witness,
                details={"confluence": conf.to_doc()},
            )
        if _stable_applicable(rs):
            inner = marked_basis_test(ms, "stable", bound=bound, budget=budget)
        elif _spoly_conclusive(ms, rs.classify()):
            inner = marked_basis_test(ms, "spoly", bound=bound, budget=budget)
        else:
            inner = marked_basis_test(ms, "degree-bound", bound=bound, budget=budget)
        inner.details["confluence"] = conf.to_doc()
        return inner

    if method == "spoly":
        failure = _reduce_kept_pairs(ms, budget, "basis-spoly")
        if failure is not None:
            return failure
        if not _spoly_conclusive(ms, rs.classify()):
            raise ValueError(
                "all S-pair reductions vanish, but a pass verdict needs disjoint "
                "or maximal cones with a term-order certificate"
            )
        return Verdict(PASS, "basis-spoly")

    if method == "stable":
        if not _stable_applicable(rs):
            raise ValueError(
                "the linear criterion needs a stably-ordered certificate or a "
                "Janet-like structure with reduced tails"
            )
        for i, eps in criterion_checks(rs):
            g = ms.polys[i].poly().mul_term(eps)
            outcome = reduce_polynomial(ms, g, budget=budget)
            if outcome.status == "budget-exceeded":
                return Verdict(BUDGET_EXCEEDED, "basis-stable",
                               witness=_multiple_witness(ms, i, eps))
            if not outcome.remainder.is_zero():
                w = _multiple_witness(ms, i, eps)
                w["remainder"] = format_polynomial(outcome.remainder, ms.variables)
                return Verdict(FAIL, "basis-stable", witness=w)
        return Verdict(PASS, "basis-stable")

    if method == "degree-bound":
        d = default_pair_bound(rs) if bound is None else bound
        gap = _span_gap(ms, d)
        if gap is not None:
            t, poly = gap
            return Verdict(
                FAIL, f"basis-degree-bound({d})",
                witness={
                    "degree": t,
                    "element": format_polynomial(poly, ms.variables),
                },
            )
        return Verdict(BOUNDED_PASS, f"basis-degree-bound({d})")

    raise ValueError(f"unknown basis method {method!r}")


# ---------------------------------------------------------------------------
# linear-algebra oracle over the term basis

def _poly_degree(p: Polynomial) -> int:
    return p.degree()


def _multiples(ms: MarkedSet, limit: int, restricted: bool) -> list[Polynomial]:
    rows = []
    rs = ms.structure
    for i, entry in enumerate(rs.entries):
        f = ms.polys[i].poly()
        fdeg = _poly_degree(f)
        if fdeg > limit:
            continue
        for eta in iter_terms_upto(rs.nvars, limit - fdeg):
            if restricted and not entry.multiplier_contains(eta):
                continue
            rows.append(f.mul_term(eta))
    return rows


class _Echelon:
    """Row echelon of rational polynomials keyed by degrevlex leading terms."""

    def __init__(self):
        self.pivots: dict[Term, Polynomial] = {}

    def reduce(self, p: Polynomial) -> Polynomial:
        while True:
            target = None
            for t in sorted(p.c, key=degrevlex_key, reverse=True):
                if t in self.pivots:
                    target = t
                    break
            if target is None:
                return p
            p = p - self.pivots[target].scale(p.coeff(target))

    def insert(self, p: Polynomial) -> bool:
        p = self.reduce(p)
        if p.is_zero():
            return False
        lead = max(p.c, key=degrevlex_key)
        self.pivots[lead] = p.scale(Fraction(1, 1) / p.coeff(lead))
        return True


def _span_gap(ms: MarkedSet, limit: int) -> tuple[int, Polynomial] | None:
    """First degree where some unrestricted multiple escapes the tau-span."""
    for t in range(limit + 1):
        ech = _Echelon()
        for row in _multiples(ms, t, restricted=True):
            ech.insert(row)
        for row in _multiples(ms, t, restricted=False):
            res = ech.reduce(row)
            if not res.is_zero():
                return t, res
    return None


def linear_normal_form(ms: MarkedSet, g: Polynomial, limit: int) -> Polynomial:
    """Normal form against the span of multiplier-restricted multiples.

    Independent of the rewriting engine: Gaussian elimination over the
    degrevlex-sorted term basis up to the degree limit.
    """
    ech = _Echelon()
    for row in _multiples(ms, limit, restricted=True):
        ech.insert(row)
    return ech.reduce(g)


# ---------------------------------------------------------------------------
# canonical forms and membership

def canonical_form(
    ms: MarkedSet,
    g: Polynomial,
    budget: int = DEFAULT_BUDGET,
    confluence: Verdict | None = None,
) -> Polynomial:
    """The unique J-remainder of g; needs disjoint cones or a confluence pass."""
    rs = ms.structure
    permitted = rs.classify().disjoint_cones
    if not permitted and confluence is None:
        confluence = confluence_test(ms, "auto", budget=budget)
    if not permitted and not (confluence is not None and confluence.ok):
        raise ValueError("canonical forms need disjoint cones or a confluence pass")
    outcome = reduce_polynomial(ms, g, budget=budget)
    if outcome.status == "budget-exceeded":
        raise BudgetExceededError("reduction budget exhausted")
    return outcome.remainder


def ideal_membership(
    ms: MarkedSet,
    g: Polynomial,
    budget: int = DEFAULT_BUDGET,
    basis: Verdict | None = None,
) -> bool:
    """Membership in the generated ideal via the canonical form."""
    if basis is None:
        basis = marked_basis_test(ms, "auto", budget=budget)
    if not basis.ok:
        raise ValueError("ideal membership needs a marked-basis certificate")
    return canonical_form(ms, g, budget=budget, confluence=basis).is_zero()


def membership_degree_bound(n: int, d: int, u: int) -> int:
    """Degree beyond which span equality certifies ideal membership.

    Exact evaluation of 2*(d^2/2 + d)^(2^(n-1)) + sum_j (u*d)^(2^j); the
    value is astronomically large by design and surfaced, never silently
    applied.
    """
    if n < 1 or d < 1 or u < 1:
        raise ValueError("all arguments must be positive")
    core = Fraction(d * d, 2) + d
    total = 2 * core ** (2 ** (n - 1))
    total += sum(Fraction(u * d) ** (2 ** j) for j in range(n))
    return math.ceil(total)


# ---------------------------------------------------------------------------
# family equations over symbolic coefficients

@dataclass
class FamilyEquations:
    ring: CRing
    equations: list[CPoly]
    bound: int
    strategy: str = "first-match"

    def to_doc(self) -> dict:
        return {
            "strategy": self.strategy,
            "bound": self.bound,
            "coefficients": list(self.ring.names),
            "equations": [eq.render() for eq in self.equations],
        }


def generic_marked_set(rs: ReductionStructure) -> tuple[MarkedSet, CRing]:
    """The marked set with one symbolic coefficient per head and tail term."""
    names = []
    slots = []
    for entry in rs.entries:
        head_str = format_term(entry.head, rs.variables)
        for gamma in sorted_terms(entry.tails):
            names.append(f"C[{head_str}][{format_term(gamma, rs.variables)}]")
            slots.append((entry.head, gamma))
    ring = CRing(names)
    polys = []
    k = 0
    for entry in rs.entries:
        tail = Polynomial.zero()
        for gamma in sorted_terms(entry.tails):
            tail = tail + Polynomial.monomial(gamma, ring.variable(k))
            k += 1
        polys.append(MarkedPolynomial(entry.head, tail))
    return MarkedSet(rs, polys), ring


def family_equations(
    rs: ReductionStructure, bound: int, budget: int = DEFAULT_BUDGET
) -> FamilyEquations:
    """Degree-bounded defining equations of the marked-basis locus.

    Reduces every multiple of the generic marked set that falls outside
    the disjoint selection, up to the degree bound, and collects the
    escalier coefficients of the remainders.  Specializations killing
    all equations are exactly the marked bases, up to the bound.
    """
    if not _certified(rs):
        raise ValueError("family equations need a noetherianity certificate")
    selection = disjoint_selection(rs, rs)
    ms, ring = generic_marked_set(rs)
    restricted = ms.with_structure(selection)
    seen: set = set()
    equations: list[CPoly] = []
    for i, entry in enumerate(selection.entries):
        head_deg = entry.head.degree()
        for eta in iter_terms_upto(rs.nvars, max(bound - head_deg, 0)):
            if entry.multiplier_contains(eta):
                continue
            g = ms.polys[i].poly().mul_term(eta)
            outcome = reduce_polynomial(restricted, g, budget=budget)
            if outcome.status == "budget-exceeded":
                raise BudgetExceededError(
                    f"family reduction exceeded the budget at head "
                    f"{format_term(entry.head, rs.variables)}, multiplier "
                    f"{format_term(eta, rs.variables)}"
                )
            for t in outcome.remainder.support():
                coeff = outcome.remainder.coeff(t)
                if not isinstance(coeff, CPoly):
                    coeff = ring.constant(coeff)
                coeff = coeff.monic()
                if coeff and coeff not in seen:
                    seen.add(coeff)
                    equations.append(coeff)
    equations.sort(key=lambda e: (len(e.c), e.render()))
    return FamilyEquations(ring, equations, bound)


def specialize_marked_set(
    rs: ReductionStructure, ring: CRing, values: Sequence[Fraction]
) -> MarkedSet:
    """Instantiate the generic marked set at rational coefficient values."""
    ms, generic_ring = generic_marked_set(rs)
    if generic_ring.names != ring.names:
        raise ValueError("coefficient ring mismatch")
    polys = []
    for mp in ms.polys:
        tail = mp.tail.map_coefficients(
            lambda c: c.evaluate(values) if isinstance(c, CPoly) else Fraction(c)
        )
        polys.append(MarkedPolynomial(mp.head, tail))
    return MarkedSet(rs, polys)
