"""Term orders, well-founded ordering functions, and noetherianity certificates.

Ordering functions map terms into a well-founded set; comparable key
values realize the induced order without materializing the image set.
The Reeves-Sturmfels test either separates head/tail differences by a
strictly positive integer weight or produces a multiplicative relation
certifying that no term order can do so.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ._simplex import feasible_point
from .terms import (
    Term,
    deglex_key,
    degrevlex_key,
    format_term,
    iter_terms_upto,
    lex_key,
)
from .verdict import BOUNDED_PASS, FAIL, PASS, Verdict

LT, EQ, GT = -1, 0, 1
INCOMPARABLE = None


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


class TermOrder:
    """A semigroup well-order on terms: lex, deglex, degrevlex, or matrix."""

    def __init__(self, kind: str, matrix: Sequence[Sequence[int]] | None = None):
        if kind not in ("lex", "deglex", "degrevlex", "matrix"):
            raise ValueError(f"unknown term order kind {kind!r}")
        self.kind = kind
        self.matrix = None
        if kind == "matrix":
            if not matrix or not matrix[0]:
                raise ValueError("matrix order needs a nonempty integer matrix")
            self.matrix = tuple(tuple(int(v) for v in row) for row in matrix)
            _validate_order_matrix(self.matrix)

    def key(self, t: Term):
        if self.kind == "lex":
            return lex_key(t)
        if self.kind == "deglex":
            return deglex_key(t)
        if self.kind == "degrevlex":
            return degrevlex_key(t)
        return tuple(sum(r * a for r, a in zip(row, t.e)) for row in self.matrix)

    def compare(self, t: Term, u: Term) -> int:
        if t.nvars != u.nvars:
            raise ValueError("dimension mismatch")
        if self.matrix is not None and len(self.matrix[0]) != t.nvars:
            raise ValueError("matrix dimension does not match the variable count")
        return _cmp(self.key(t), self.key(u))

    @property
    def degree_compatible(self) -> bool:
        if self.kind in ("deglex", "degrevlex"):
            return True
        if self.kind == "matrix":
            first = self.matrix[0]
            return all(v == first[0] for v in first) and first[0] > 0
        return False

    def spec_string(self) -> str:
        if self.kind == "matrix":
            return "matrix:" + json.dumps([list(r) for r in self.matrix], separators=(",", ":"))
        return self.kind

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and self.kind == other.kind
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"TermOrder({self.spec_string()!r})"


def parse_order(spec: str) -> TermOrder:
    s = spec.strip()
    if s.startswith("matrix:"):
        return TermOrder("matrix", json.loads(s[len("matrix:"):]))
    return TermOrder(s)


def _validate_order_matrix(matrix: tuple[tuple[int, ...], ...]) -> None:
    n = len(matrix[0])
    if any(len(row) != n for row in matrix):
        raise ValueError("ragged order matrix")
    if _rank(matrix) < n:
        raise ValueError("order matrix has nontrivial kernel: comparison is not total")
    # well-order on N^n: no a >= 0, a != 0, whose first nonzero image is negative
    for k in range(len(matrix)):
        rows = [[Fraction(v) for v in matrix[i]] for i in range(k)]
        rhs = [Fraction(0)] * k
        # M_k . a <= -1 via slack t: M_k . a + t = -1
        rows.append([Fraction(v) for v in matrix[k]])
        rhs.append(Fraction(-1))
        padded = [row + [Fraction(0)] for row in rows[:-1]]
        padded.append(rows[-1] + [Fraction(1)])
        if feasible_point(padded, rhs) is not None:
            raise ValueError(
                f"matrix row {k + 1} orders some monomial below 1: not a well-order"
            )


def _rank(matrix: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(v) for v in row] for row in matrix]
    cols = len(rows[0])
    rank, r = 0, 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
        if r == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# ordering functions phi: T -> (W, >)

class OrderingFunction:
    kind = "abstract"
    exact_verifiable = False
    condition12 = False

    def value(self, t: Term):
        raise NotImplementedError

    def compare(self, t: Term, u: Term) -> int:
        return _cmp(self.value(t), self.value(u))


class IdentityOrder(OrderingFunction):
    """phi = Id with a term order; the image set is T itself."""

    kind = "identity"
    exact_verifiable = True
    condition12 = True

    def __init__(self, order: TermOrder):
        self.order = order

    def value(self, t: Term):
        return self.order.key(t)


class AffineWeight(OrderingFunction):
    """Positive rational weight row, ties broken by a term order."""

    kind = "affine-weight"
    exact_verifiable = True
    condition12 = True

    def __init__(self, weights: Sequence[Fraction], tiebreak: TermOrder):
        self.weights = tuple(Fraction(w) for w in weights)
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")
        self.tiebreak = tiebreak

    def value(self, t: Term):
        return (sum(w * a for w, a in zip(self.weights, t.e)), self.tiebreak.key(t))


class CustomTable(OrderingFunction):
    """User-supplied map into the naturals; verified only in bounded mode."""

    kind = "custom-table"
    exact_verifiable = False
    condition12 = False

    def __init__(self, fn: Callable[[Term], int], name: str = "custom"):
        self.fn = fn
        self.name = name
        self._memo: dict[Term, int] = {}

    def value(self, t: Term):
        v = self._memo.get(t)
        if v is None:
            v = int(self.fn(t))
            if v < 0:
                raise ValueError("custom ordering values must be naturals")
            self._memo[t] = v
        return v


def phi_multiset(phi: OrderingFunction, support: Iterable[Term]) -> list:
    return [phi.value(t) for t in support]


# ---------------------------------------------------------------------------
# Dershowitz-Manna multiset extension

def multiset_compare(a: Iterable, b: Iterable, compare: Callable | None = None):
    """Dershowitz-Manna comparison of two finite multisets.

    Returns GT when a >> b, LT when b >> a, EQ on equality, and
    INCOMPARABLE otherwise (possible only for partial element orders).
    """
    cmp = compare or _cmp
    a_rem = list(a)
    b_rem = list(b)
    # drop one common occurrence at a time
    for item in list(a_rem):
        for j, other in enumerate(b_rem):
            if cmp(item, other) == EQ:
                a_rem.remove(item)
                del b_rem[j]
                break
    if not a_rem and not b_rem:
        return EQ

    def dominated(lhs, rhs):
        # every element of lhs sits strictly below some element of rhs
        return bool(rhs) and all(
            any(cmp(x, y) == LT for y in rhs) for x in lhs
        )

    if dominated(b_rem, a_rem):
        return GT
    if dominated(a_rem, b_rem):
        return LT
    return INCOMPARABLE


# ---------------------------------------------------------------------------
# Reeves-Sturmfels consistency

@dataclass
class ConsistencyResult:
    weight: tuple[int, ...] | None = None
    cycle_heads: tuple[tuple[Term, int], ...] | None = None
    cycle_tails: tuple[tuple[Term, int], ...] | None = None
    slack: Term | None = None

    @property
    def consistent(self) -> bool:
        return self.weight is not None

    def cycle_identity(self, variables: Sequence[str]) -> str:
        def side(pairs):
            parts = []
            for t, m in pairs:
                body = format_term(t, variables)
                if m > 1:
                    body = f"({body})^{m}" if "*" in body or "^" in body else f"{body}^{m}"
                parts.append(body)
            return " * ".join(parts) if parts else "1"

        lhs = side(self.cycle_heads)
        if self.slack is not None and not self.slack.is_one():
            lhs += " * " + format_term(self.slack, variables)
        return f"{lhs} = {side(self.cycle_tails)}"


def find_consistent_weight(rs) -> ConsistencyResult:
    """Separate all head/tail exponent differences by a positive weight.

    Builds D = {alpha - gamma} over every entry and tail term.  On success
    the weight has strictly positive integer entries with d.w > 0 for all
    d in D.  Otherwise a positive integer combination of D summing to a
    nonpositive vector is returned; when the sum is exactly zero this is
    the pure multiplicative cycle prod(alpha_i) = prod(gamma_i).
    """
    n = rs.nvars
    pairs: list[tuple[Term, Term]] = []
    diffs: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for entry in rs.entries:
        for gamma in entry.tails:
            d = tuple(a - g for a, g in zip(entry.head.e, gamma.e))
            if d not in seen:
                seen[d] = len(diffs)
                diffs.append(d)
                pairs.append((entry.head, gamma))
    if not diffs:
        return ConsistencyResult(weight=(1,) * n)

    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    all_rows = diffs + units

    # primal: row . w >= 1 for every row, w free: w = u - v, slack s >= 0
    m = len(all_rows)
    A = []
    for i, row in enumerate(all_rows):
        rec = [Fraction(v) for v in row] + [Fraction(-v) for v in row]
        rec += [Fraction(-1) if j == i else Fraction(0) for j in range(m)]
        A.append(rec)
    b = [Fraction(1)] * m
    point = feasible_point(A, b)
    if point is not None:
        w = [point[i] - point[n + i] for i in range(n)]
        scale = 1
        for q in w:
            scale = scale * q.denominator // _gcd(scale, q.denominator)
        weight = tuple(int(q * scale) for q in w)
        assert all(v >= 1 for v in weight)
        assert all(sum(d * wv for d, wv in zip(row, weight)) >= 1 for row in diffs)
        return ConsistencyResult(weight=weight)

    # dual: nonnegative combination of rows summing to zero; prefer a pure
    # cycle over D alone, fall back to D plus unit slacks
    for rows in (diffs, all_rows):
        cols = len(rows)
        A = [[Fraction(rows[j][i]) for j in range(cols)] for i in range(n)]
        A.append([Fraction(1)] * cols)
        b = [Fraction(0)] * n + [Fraction(1)]
        y = feasible_point(A, b)
        if y is None:
            continue
        scale = 1
        for q in y:
            scale = scale * q.denominator // _gcd(scale, q.denominator)
        mults = [int(q * scale) for q in y]
        head_acc: dict[Term, int] = {}
        tail_acc: dict[Term, int] = {}
        slack = [0] * n
        for j, m_j in enumerate(mults):
            if not m_j:
                continue
            if j < len(diffs):
                alpha, gamma = pairs[j]
                head_acc[alpha] = head_acc.get(alpha, 0) + m_j
                tail_acc[gamma] = tail_acc.get(gamma, 0) + m_j
            else:
                slack[j - len(diffs)] += m_j
        heads = sorted(head_acc.items(), key=lambda kv: deglex_key(kv[0]))
        tails = sorted(tail_acc.items(), key=lambda kv: deglex_key(kv[0]))
        lhs = Term.one(n)
        for t, m_j in heads:
            lhs = lhs * (t ** m_j)
        rhs = Term.one(n)
        for t, m_j in tails:
            rhs = rhs * (t ** m_j)
        slack_term = Term(slack)
        assert lhs * slack_term == rhs
        return ConsistencyResult(
            cycle_heads=tuple(heads), cycle_tails=tuple(tails), slack=slack_term
        )
    raise RuntimeError("no weight and no Farkas certificate: simplex bug")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# certificate verification

def default_bound(rs) -> int:
    degs = [e.head.degree() for e in rs.entries]
    degs += [g.degree() for e in rs.entries for g in e.tails]
    return max(degs, default=0) + 2 * rs.nvars


def verify_ordered(rs, phi: OrderingFunction, mode: str = "exact", bound: int | None = None) -> Verdict:
    """Check phi(head * eta) > phi(tail * eta) for all multipliers eta.

    Exact mode handles identity and affine-weight functions, where the
    per-pair comparison at eta = 1 extends to every multiplier by the
    semigroup property.  Bounded mode enumerates eta up to the degree
    bound and never upgrades to a full certificate.
    """
    if mode == "exact":
        if not phi.exact_verifiable:
            raise ValueError("exact verification unsupported for this ordering function")
        for idx, entry in enumerate(rs.entries):
            if not entry.multiplier_contains(Term.one(rs.nvars)):
                continue  # empty multiplier set: nothing to order
            for gamma in entry.tails:
                if phi.compare(entry.head, gamma) != GT:
                    return Verdict(
                        FAIL,
                        "ordered-exact",
                        witness=_owitness(rs, entry.head, gamma, Term.one(rs.nvars)),
                    )
        return Verdict(PASS, "ordered-exact")

    if mode != "bounded":
        raise ValueError(f"unknown verification mode {mode!r}")
    d = default_bound(rs) if bound is None else bound
    for entry in rs.entries:
        if not entry.tails:
            continue
        for eta in iter_terms_upto(rs.nvars, d):
            if not entry.multiplier_contains(eta):
                continue
            top = entry.head * eta
            for gamma in entry.tails:
                if _cmp(phi.value(top), phi.value(gamma * eta)) != GT:
                    return Verdict(
                        FAIL, f"ordered-bounded({d})",
                        witness=_owitness(rs, entry.head, gamma, eta),
                    )
    return Verdict(BOUNDED_PASS, f"ordered-bounded({d})")


def _owitness(rs, alpha: Term, gamma: Term, eta: Term) -> dict:
    v = rs.variables
    return {
        "head": format_term(alpha, v),
        "tail": format_term(gamma, v),
        "multiplier": format_term(eta, v),
    }


def verify_stably_ordered(rs, psi: OrderingFunction, mode: str = "exact", bound: int | None = None) -> Verdict:
    """Check the four stability axioms for psi over the structure.

    For identity or affine-weight psi the first two axioms hold by
    construction and the quantified third and fourth reduce to finite
    cone-overlap scans; custom tables fall back to bounded enumeration.
    """
    if mode == "exact":
        if not phi_is_stor12_automatic(psi):
            raise ValueError("exact verification unsupported for this ordering function")
        # StOr3: multiples of one head landing in another cone
        for i, ei in enumerate(rs.entries):
            for j, ej in enumerate(rs.entries):
                if i == j:
                    continue
                if psi.compare(ej.head, ei.head) == GT:
                    continue  # requirement holds for every overlap
                t = rs.head_multiples_meet_cone(i, j)
                if t is not None:
                    return Verdict(
                        FAIL, "stably-ordered-exact",
                        witness={
                            "axiom": "StOr3",
                            "head": format_term(ei.head, rs.variables),
                            "other": format_term(ej.head, rs.variables),
                            "term": format_term(t, rs.variables),
                        },
                    )
        # StOr4: tail multiples landing in a cone
        for i, ei in enumerate(rs.entries):
            for gamma in ei.tails:
                for j, ej in enumerate(rs.entries):
                    if psi.compare(ej.head, gamma) == GT:
                        continue
                    eta = rs.stor4_witness(i, gamma, j)
                    if eta is not None:
                        return Verdict(
                            FAIL, "stably-ordered-exact",
                            witness={
                                "axiom": "StOr4",
                                "head": format_term(ei.head, rs.variables),
                                "tail": format_term(gamma, rs.variables),
                                "other": format_term(ej.head, rs.variables),
                                "multiplier": format_term(eta, rs.variables),
                            },
                        )
        return Verdict(PASS, "stably-ordered-exact")

    if mode != "bounded":
        raise ValueError(f"unknown verification mode {mode!r}")
    d = default_bound(rs) if bound is None else bound
    one = Term.one(rs.nvars)
    terms = list(iter_terms_upto(rs.nvars, d))
    for t in terms:
        if not t.is_one() and _cmp(psi.value(t), psi.value(one)) != GT:
            return Verdict(FAIL, f"stably-ordered-bounded({d})",
                           witness={"axiom": "StOr1", "term": format_term(t, rs.variables)})
    small = [t for t in terms if t.degree() <= max(2, d // 2)]
    for eta in small:
        for etap in small:
            base = _cmp(psi.value(etap), psi.value(eta))
            for eps in small:
                lifted = _cmp(psi.value(etap * eps), psi.value(eta * eps))
                if (base == GT) != (lifted == GT):
                    return Verdict(FAIL, f"stably-ordered-bounded({d})",
                                   witness={"axiom": "StOr2",
                                            "eta": format_term(eta, rs.variables),
                                            "eta2": format_term(etap, rs.variables),
                                            "eps": format_term(eps, rs.variables)})
    for i, ei in enumerate(rs.entries):
        for j, ej in enumerate(rs.entries):
            for eta in terms:
                t = ei.head * eta
                if i != j and ej.cone_contains(t):
                    if _cmp(psi.value(eta), psi.value(t / ej.head)) != GT:
                        return Verdict(FAIL, f"stably-ordered-bounded({d})",
                                       witness={"axiom": "StOr3",
                                                "head": format_term(ei.head, rs.variables),
                                                "other": format_term(ej.head, rs.variables),
                                                "term": format_term(t, rs.variables)})
            for gamma in ei.tails:
                for eta in terms:
                    if not ei.multiplier_contains(eta):
                        continue
                    t = gamma * eta
                    if ej.cone_contains(t):
                        if _cmp(psi.value(eta), psi.value(t / ej.head)) != GT:
                            return Verdict(FAIL, f"stably-ordered-bounded({d})",
                                           witness={"axiom": "StOr4",
                                                    "head": format_term(ei.head, rs.variables),
                                                    "tail": format_term(gamma, rs.variables),
                                                    "other": format_term(ej.head, rs.variables),
                                                    "multiplier": format_term(eta, rs.variables)})
    return Verdict(BOUNDED_PASS, f"stably-ordered-bounded({d})")


def phi_is_stor12_automatic(psi: OrderingFunction) -> bool:
    return isinstance(psi, (IdentityOrder, AffineWeight))
