"""Reduction structures: heads, tail supports, and multiplier sets.

A multiplier set is stored as the complement of a finitely generated
semigroup ideal of nonmultipliers, which covers every order ideal by
Dickson's lemma and makes membership a divisibility scan.  Coverage
and disjointness are decided exactly: monomial-ideal membership is a
componentwise threshold test, so any witness can be capped into a
finite exponent box without changing a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from . import orders
from .orders import GT, IdentityOrder, TermOrder, parse_order
from .terms import (
    Term,
    deglex_key,
    format_term,
    iter_box,
    iter_terms_upto,
    minimal_generators,
    parse_term,
    sorted_terms,
)
from .verdict import BOUNDED_PASS, FAIL, PASS, Verdict


@dataclass(frozen=True)
class MultiplierSet:
    """Order ideal tau = T minus the semigroup ideal of the nonmultipliers."""

    nonmult: tuple[Term, ...]

    @staticmethod
    def from_generators(gens: Sequence[Term]) -> "MultiplierSet":
        return MultiplierSet(minimal_generators(gens))

    @staticmethod
    def full() -> "MultiplierSet":
        return MultiplierSet(())

    @staticmethod
    def from_variables(nvars: int, multiplicative: Sequence[int]) -> "MultiplierSet":
        gens = tuple(
            Term.variable(nvars, i) for i in range(nvars) if i not in set(multiplicative)
        )
        return MultiplierSet(gens)

    @property
    def is_full(self) -> bool:
        return not self.nonmult

    def is_empty(self) -> bool:
        return any(g.is_one() for g in self.nonmult)

    def contains(self, t: Term) -> bool:
        return not any(g.divides(t) for g in self.nonmult)

    def variable_set(self, nvars: int) -> frozenset[int] | None:
        """Multiplicative variable indices when tau = T[mu], else None."""
        if not all(g.degree() == 1 for g in self.nonmult):
            return None
        blocked = {g.min_variable() for g in self.nonmult}
        return frozenset(i for i in range(nvars) if i not in blocked)


@dataclass(frozen=True)
class RSEntry:
    """One head with its finite tail support and multiplier set.

    `excluded` carries translated cones subtracted from the multiplier
    set; only disjoint-selection structures use it, and such multiplier
    sets need not be order ideals.
    """

    head: Term
    tails: tuple[Term, ...]
    mult: MultiplierSet
    excluded: tuple[tuple[Term, MultiplierSet], ...] = ()

    def multiplier_contains(self, eta: Term) -> bool:
        if not self.mult.contains(eta):
            return False
        if self.excluded:
            t = self.head * eta
            for base, mset in self.excluded:
                if base.divides(t) and mset.contains(t / base):
                    return False
        return True

    def cone_contains(self, t: Term) -> bool:
        return self.head.divides(t) and self.multiplier_contains(t / self.head)

    def threshold_vectors(self) -> list[Term]:
        out = [self.head]
        out += [self.head * g for g in self.mult.nonmult]
        for base, mset in self.excluded:
            out.append(base)
            out += [base * g for g in mset.nonmult]
        return out


@dataclass(frozen=True)
class Certificate:
    """Noetherianity certificate attached to a structure."""

    kind: str  # "term-order" or "stably-ordered"
    order: TermOrder
    verified: bool = False

    def ordering_function(self) -> IdentityOrder:
        return IdentityOrder(self.order)

    def to_doc(self) -> dict:
        return {"kind": self.kind, "order": self.order.spec_string(), "verified": self.verified}

    @staticmethod
    def from_doc(doc: dict) -> "Certificate":
        if doc.get("kind") not in ("term-order", "stably-ordered"):
            raise ValueError(f"unknown certificate kind {doc.get('kind')!r}")
        return Certificate(doc["kind"], parse_order(doc["order"]), bool(doc.get("verified")))


@dataclass(frozen=True)
class ClassificationReport:
    homogeneous: bool
    reduced_tails: bool
    maximal_cones: bool
    disjoint_cones: bool
    multiplicative_variables: bool
    per_head_variables: tuple[frozenset[int] | None, ...]
    consistent_with_order: bool | None = None

    def to_doc(self, variables: Sequence[str]) -> dict:
        doc = {
            "homogeneous": self.homogeneous,
            "reduced_tails": self.reduced_tails,
            "maximal_cones": self.maximal_cones,
            "disjoint_cones": self.disjoint_cones,
            "multiplicative_variables": self.multiplicative_variables,
            "per_head_multiplicative": [
                sorted(variables[i] for i in mu) if mu is not None else None
                for mu in self.per_head_variables
            ],
        }
        if self.consistent_with_order is not None:
            doc["consistent_with_order"] = self.consistent_with_order
        return doc


@dataclass(frozen=True)
class ReductionStructure:
    """The triple (M, lambda, tau); entry order is part of the data."""

    variables: tuple[str, ...]
    entries: tuple[RSEntry, ...]
    certificate: Certificate | None = None
    tail_cap: int | None = None

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def heads(self) -> tuple[Term, ...]:
        return tuple(e.head for e in self.entries)

    def ideal_generators(self) -> tuple[Term, ...]:
        return minimal_generators(self.heads)

    def ideal_contains(self, t: Term) -> bool:
        return any(h.divides(t) for h in self.heads)

    def covering_entries(self, t: Term) -> list[int]:
        return [i for i, e in enumerate(self.entries) if e.cone_contains(t)]

    def with_certificate(self, certificate: Certificate | None) -> "ReductionStructure":
        return replace(self, certificate=certificate)

    def has_exclusions(self) -> bool:
        return any(e.excluded for e in self.entries)

    # -- exact scans ------------------------------------------------------

    def _box_bounds(self, extra: Sequence[Term] = ()) -> list[int]:
        vecs = [v for e in self.entries for v in e.threshold_vectors()]
        vecs += list(extra)
        return [max((v.deg(i) for v in vecs), default=0) for i in range(self.nvars)]

    def uncovered_witness(self, max_degree: int | None = None) -> Term | None:
        """Smallest term of (M) outside every cone; None when covered.

        Without a degree limit the scan runs over the exact threshold box
        and the answer is unconditional.
        """
        if not self.entries:
            return None
        bounds = self._box_bounds()
        candidates = (
            iter_box(bounds)
            if max_degree is None
            else iter_terms_upto(self.nvars, max_degree)
        )
        for t in candidates:
            if self.ideal_contains(t) and not any(
                e.cone_contains(t) for e in self.entries
            ):
                return t
        return None

    def cone_intersection(self, i: int, j: int) -> Term | None:
        """A term in cone(i) and cone(j), or None; exact."""
        ei, ej = self.entries[i], self.entries[j]
        from .terms import lcm as term_lcm

        base = term_lcm(ei.head, ej.head)
        if not (ei.excluded or ej.excluded):
            # multiplier sets are order ideals: the lcm decides
            if ei.multiplier_contains(base / ei.head) and ej.multiplier_contains(base / ej.head):
                return base
            return None
        bounds = [
            max(b, v)
            for b, v in zip(
                self._box_bounds(), base.e
            )
        ]
        for t in iter_box(bounds):
            if base.divides(t) and ei.cone_contains(t) and ej.cone_contains(t):
                return t
        return None

    def head_multiples_meet_cone(self, i: int, j: int) -> Term | None:
        """A term of head_i * T inside cone(j), or None; exact."""
        ei, ej = self.entries[i], self.entries[j]
        from .terms import lcm as term_lcm

        base = term_lcm(ei.head, ej.head)
        if not ej.excluded:
            return base if ej.cone_contains(base) else None
        bounds = [max(b, v) for b, v in zip(self._box_bounds(), base.e)]
        for t in iter_box(bounds):
            if ei.head.divides(t) and ej.cone_contains(t):
                return t
        return None

    def stor4_witness(self, i: int, gamma: Term, j: int) -> Term | None:
        """Multiplier eta of entry i with eta*gamma inside cone(j), or None."""
        ei, ej = self.entries[i], self.entries[j]
        eta0 = ej.head.quotient_clamped(gamma)
        if not (ei.excluded or ej.excluded):
            if ei.multiplier_contains(eta0) and ej.multiplier_contains(
                (eta0 * gamma) / ej.head
            ):
                return eta0
            return None
        bounds = [max(b, v) for b, v in zip(self._box_bounds(), eta0.e)]
        for eta in iter_box(bounds):
            if ei.multiplier_contains(eta) and ej.cone_contains(eta * gamma):
                return eta
        return None

    # -- validation and classification ------------------------------------

    def validate(self, mode: str = "exact", bound: int | None = None) -> Verdict:
        """Head distinctness, tail placement, and exact cone coverage."""
        seen: set[Term] = set()
        for e in self.entries:
            if e.head.nvars != self.nvars:
                return Verdict(FAIL, "validate", witness={"error": "dimension mismatch"})
            if e.head in seen:
                return Verdict(
                    FAIL, "validate",
                    witness={"error": "duplicate head",
                             "head": format_term(e.head, self.variables)},
                )
            seen.add(e.head)
            for gamma in e.tails:
                if e.cone_contains(gamma):
                    return Verdict(
                        FAIL, "validate",
                        witness={"error": "tail term lies in the head cone",
                                 "head": format_term(e.head, self.variables),
                                 "tail": format_term(gamma, self.variables)},
                    )
        if mode == "exact":
            t = self.uncovered_witness()
            method = "validate-exact"
        elif mode == "bounded":
            if bound is None:
                raise ValueError("bounded validation needs a degree bound")
            t = self.uncovered_witness(max_degree=bound)
            method = f"validate-bounded({bound})"
        else:
            raise ValueError(f"unknown validation mode {mode!r}")
        if t is not None:
            return Verdict(
                FAIL, method,
                witness={"error": "uncovered term",
                         "term": format_term(t, self.variables)},
            )
        return Verdict(PASS if mode == "exact" else BOUNDED_PASS, method)

    def classify(self, order: TermOrder | None = None) -> ClassificationReport:
        gens = self.ideal_generators()
        homogeneous = all(
            g.degree() == e.head.degree() for e in self.entries for g in e.tails
        )
        reduced = all(
            not any(h.divides(g) for h in gens)
            for e in self.entries
            for g in e.tails
        )
        maximal = all(e.mult.is_full and not e.excluded for e in self.entries)
        disjoint = all(
            self.cone_intersection(i, j) is None
            for i in range(len(self.entries))
            for j in range(i + 1, len(self.entries))
        )
        per_head = tuple(
            e.mult.variable_set(self.nvars) if not e.excluded else None
            for e in self.entries
        )
        mult_vars = all(mu is not None for mu in per_head)
        consistent = None
        if order is not None:
            consistent = all(
                order.compare(e.head, g) == GT for e in self.entries for g in e.tails
            )
        return ClassificationReport(
            homogeneous, reduced, maximal, disjoint, mult_vars, per_head, consistent
        )

    # -- serialization -----------------------------------------------------

    def to_doc(self) -> dict:
        if self.has_exclusions():
            raise ValueError("disjoint-selection structures are not serializable")
        doc = {
            "vars": list(self.variables),
            "entries": [
                {
                    "head": format_term(e.head, self.variables),
                    "nonmult": [format_term(g, self.variables) for g in e.mult.nonmult],
                    "tail_support": [format_term(g, self.variables) for g in e.tails],
                }
                for e in self.entries
            ],
        }
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_doc()
        if self.tail_cap is not None:
            doc["tail_cap"] = self.tail_cap
        return doc

    @staticmethod
    def from_doc(doc: dict) -> "ReductionStructure":
        variables = tuple(doc["vars"])
        entries = []
        for rec in doc["entries"]:
            head = parse_term(rec["head"], variables)
            nonmult = tuple(parse_term(s, variables) for s in rec.get("nonmult", []))
            tails = tuple(parse_term(s, variables) for s in rec.get("tail_support", []))
            entries.append(
                RSEntry(head, tails, MultiplierSet.from_generators(nonmult))
            )
        certificate = None
        if "certificate" in doc:
            certificate = Certificate.from_doc(doc["certificate"])
        rs = ReductionStructure(
            variables, tuple(entries), certificate, doc.get("tail_cap")
        )
        if certificate is not None:
            rs = rs.with_certificate(verify_certificate(rs, certificate))
        return rs


def verify_certificate(rs: ReductionStructure, certificate: Certificate) -> Certificate:
    """Re-run the exact verifier and record the actual outcome."""
    phi = certificate.ordering_function()
    if certificate.kind == "term-order":
        verdict = orders.verify_ordered(rs, phi, mode="exact")
    else:
        verdict = orders.verify_stably_ordered(rs, phi, mode="exact")
    return replace(certificate, verified=verdict.status == PASS)


# ---------------------------------------------------------------------------
# substructures

def is_substructure(sub: ReductionStructure, rs: ReductionStructure) -> bool:
    """True when sub shares M and lambda with rs and each tau'_a <= tau_a.

    Containment of complement-form sets reverses on the nonmultiplier
    ideals: every nonmultiplier generator of rs must be a multiple of a
    generator in sub.
    """
    if sub.variables != rs.variables or len(sub.entries) != len(rs.entries):
        raise ValueError("mismatched structures")
    for a, b in zip(sub.entries, rs.entries):
        if a.head != b.head or sorted_terms(a.tails) != sorted_terms(b.tails):
            raise ValueError("substructure comparison needs identical heads and tails")
    for a, b in zip(sub.entries, rs.entries):
        for g in b.mult.nonmult:
            if not any(gp.divides(g) for gp in a.mult.nonmult):
                return False
    return True


def staggered_substructure(
    heads: Sequence[Term],
    tails: Sequence[Sequence[Term]],
    variables: Sequence[str],
    reorder: bool = False,
) -> ReductionStructure:
    """Disjoint-cone refinement of a maximal-cone structure.

    Heads must be listed so divisors come first; the first entry keeps
    the full multiplier set and each later entry removes the translated
    ideals of all earlier heads.
    """
    heads = list(heads)
    tails = [tuple(ts) for ts in tails]
    violated = any(
        heads[i].divides(heads[j]) and heads[i] != heads[j]
        for j in range(len(heads))
        for i in range(j + 1, len(heads))
    )
    if violated:
        if not reorder:
            raise ValueError(
                "heads must be ordered with divisors first (pass reorder=True)"
            )
        ranks = sorted(range(len(heads)), key=lambda k: deglex_key(heads[k]))
        heads = [heads[k] for k in ranks]
        tails = [tails[k] for k in ranks]
    entries = []
    for i, h in enumerate(heads):
        gens = [heads[j].quotient_clamped(h) for j in range(i)]
        entries.append(RSEntry(h, tails[i], MultiplierSet.from_generators(gens)))
    return ReductionStructure(tuple(variables), tuple(entries))


def disjoint_selection(
    rs: ReductionStructure, substructure: ReductionStructure
) -> ReductionStructure:
    """Assign every covered term to the earliest cone of the substructure.

    The substructure must be certified noetherian; the result tiles (M)
    with pairwise disjoint translated cones.  Already-disjoint structures
    come back unchanged.  Later multiplier sets carry the earlier cones
    as exclusions, so they need not be order ideals.
    """
    if substructure.certificate is None or not substructure.certificate.verified:
        raise ValueError("the substructure needs a verified noetherianity certificate")
    if not is_substructure(substructure, rs):
        raise ValueError("not a substructure of the given reduction structure")
    if substructure.classify().disjoint_cones:
        return substructure
    entries = []
    for i, e in enumerate(substructure.entries):
        excluded = tuple(
            (substructure.entries[j].head, substructure.entries[j].mult)
            for j in range(i)
        )
        entries.append(replace(e, excluded=excluded))
    return ReductionStructure(
        substructure.variables,
        tuple(entries),
        substructure.certificate,
        substructure.tail_cap,
    )
