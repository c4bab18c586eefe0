"""Terms (power products), exponent arithmetic, and monomial-ideal combinatorics.

A term is an exponent vector in N^n with the variable convention
x1 < x2 < ... < xn; variable indices are 0-based internally.  Sets of
terms are plain tuples; `minimal_generators` returns an interreduced
tuple in canonical (degree, lex) order.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class Term:
    """An immutable power product, identified with its exponent vector."""

    __slots__ = ("e", "_hash")

    def __init__(self, exponents: Iterable[int]):
        e = tuple(int(k) for k in exponents)
        if any(k < 0 for k in e):
            raise ValueError(f"negative exponent in {e}")
        self.e = e
        self._hash = hash(e)

    @staticmethod
    def one(nvars: int) -> "Term":
        return Term((0,) * nvars)

    @staticmethod
    def variable(nvars: int, index: int) -> "Term":
        e = [0] * nvars
        e[index] = 1
        return Term(e)

    @property
    def nvars(self) -> int:
        return len(self.e)

    def degree(self) -> int:
        return sum(self.e)

    def deg(self, i: int) -> int:
        return self.e[i]

    def is_one(self) -> bool:
        return not any(self.e)

    def __mul__(self, other: "Term") -> "Term":
        _check_dims(self, other)
        return Term(a + b for a, b in zip(self.e, other.e))

    def __pow__(self, k: int) -> "Term":
        return Term(a * k for a in self.e)

    def divides(self, other: "Term") -> bool:
        _check_dims(self, other)
        return all(a <= b for a, b in zip(self.e, other.e))

    def __truediv__(self, other: "Term") -> "Term":
        # exact division only
        _check_dims(self, other)
        if not other.divides(self):
            raise ValueError(f"{other.e} does not divide {self.e}")
        return Term(a - b for a, b in zip(self.e, other.e))

    def quotient_clamped(self, other: "Term") -> "Term":
        """Componentwise max(self - other, 0)."""
        _check_dims(self, other)
        return Term(max(a - b, 0) for a, b in zip(self.e, other.e))

    def min_variable(self) -> int:
        """Smallest 0-based index of a variable with positive exponent."""
        for i, a in enumerate(self.e):
            if a:
                return i
        raise ValueError("the term 1 has no variables")

    def max_variable(self) -> int:
        for i in range(len(self.e) - 1, -1, -1):
            if self.e[i]:
                return i
        raise ValueError("the term 1 has no variables")

    def __eq__(self, other) -> bool:
        return isinstance(other, Term) and self.e == other.e

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Term{self.e}"


def _check_dims(t: Term, u: Term) -> None:
    if len(t.e) != len(u.e):
        raise ValueError(f"dimension mismatch: {len(t.e)} vs {len(u.e)}")


def lcm(t: Term, u: Term) -> Term:
    """Componentwise max; the least common multiple of two terms."""
    _check_dims(t, u)
    return Term(max(a, b) for a, b in zip(t.e, u.e))


def lex_key(t: Term) -> tuple:
    # lex with x1 < ... < xn compares the highest variable first
    return tuple(reversed(t.e))


def deglex_key(t: Term) -> tuple:
    return (t.degree(), lex_key(t))


def degrevlex_key(t: Term) -> tuple:
    return (t.degree(), tuple(-a for a in t.e))


def sorted_terms(terms: Iterable[Term]) -> tuple[Term, ...]:
    """Canonical (degree, then lex) ascending order."""
    return tuple(sorted(terms, key=deglex_key))


# ---------------------------------------------------------------------------
# term string grammar: product of `var` or `var^k` separated by `*`; `1` is
# the empty product; parsing is whitespace tolerant, printing canonical.

def default_variables(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i + 1}" for i in range(n))


def parse_term(text: str, variables: Sequence[str]) -> Term:
    s = text.strip()
    if not s:
        raise ValueError("empty term string")
    if s == "1":
        return Term.one(len(variables))
    index = {name: i for i, name in enumerate(variables)}
    e = [0] * len(variables)
    for factor in s.split("*"):
        f = factor.strip()
        if f == "1":
            continue
        name, _, power = f.partition("^")
        name = name.strip()
        if name not in index:
            raise ValueError(f"unknown variable {name!r} in term {text!r}")
        if power:
            try:
                k = int(power.strip())
            except ValueError:
                raise ValueError(f"bad exponent in term {text!r}") from None
            if k < 0:
                raise ValueError(f"negative exponent in term {text!r}")
        else:
            k = 1
        e[index[name]] += k
    return Term(e)


def format_term(t: Term, variables: Sequence[str]) -> str:
    parts = []
    for name, k in zip(variables, t.e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# enumeration helpers

def iter_exponents_of_degree(nvars: int, degree: int) -> Iterator[tuple[int, ...]]:
    """Exponent vectors of the given total degree, ascending in lex_key."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    # lex_key compares the last coordinate first, so recurse on it
    for last in range(degree + 1):
        for rest in iter_exponents_of_degree(nvars - 1, degree - last):
            yield rest + (last,)


def iter_terms_upto(nvars: int, max_degree: int) -> Iterator[Term]:
    """All terms of degree <= max_degree in (degree, lex) order."""
    for d in range(max_degree + 1):
        for e in iter_exponents_of_degree(nvars, d):
            yield Term(e)


def iter_box(bounds: Sequence[int]) -> Iterator[Term]:
    """All terms with exponents <= bounds, in (degree, lex) order."""
    # plain cartesian product, then canonical sort; boxes stay desk sized
    out = []

    def rec(i: int, acc: list[int]):
        if i == len(bounds):
            out.append(Term(acc))
            return
        for k in range(bounds[i] + 1):
            rec(i + 1, acc + [k])

    rec(0, [])
    out.sort(key=deglex_key)
    return iter(out)


# ---------------------------------------------------------------------------
# monomial-ideal combinatorics

def ideal_contains(generators: Sequence[Term], t: Term) -> bool:
    return any(g.divides(t) for g in generators)


def minimal_generators(terms: Iterable[Term]) -> tuple[Term, ...]:
    """Interreduce a finite set of terms to the minimal generating set.

    The result generates the same semigroup ideal, no element divides
    another, and the order is canonical (degree, then lex).
    """
    unique = sorted(set(terms), key=deglex_key)
    kept: list[Term] = []
    for t in unique:
        if not any(g.divides(t) for g in kept):
            kept.append(t)
    return tuple(kept)


def is_interreduced(terms: Sequence[Term]) -> bool:
    return all(
        not u.divides(t) for i, t in enumerate(terms) for j, u in enumerate(terms) if i != j
    )


def escalier(generators: Sequence[Term], max_degree: int, nvars: int | None = None) -> tuple[tuple[Term, ...], bool]:
    """Terms of degree <= max_degree outside the ideal, plus a finiteness flag.

    The full escalier N(J) is finite exactly when every variable has a
    pure power inside the ideal; that flag is reported, never assumed.
    """
    if nvars is None:
        if not generators:
            raise ValueError("cannot infer variable count from an empty generator list")
        nvars = generators[0].nvars
    terms = tuple(
        t for t in iter_terms_upto(nvars, max_degree) if not ideal_contains(generators, t)
    )
    return terms, escalier_is_finite(generators, nvars)


def escalier_is_finite(generators: Sequence[Term], nvars: int | None = None) -> bool:
    if nvars is None:
        if not generators:
            return False
        nvars = generators[0].nvars
    if any(g.is_one() for g in generators):
        return True
    for i in range(nvars):
        if not any(all(k == 0 for j, k in enumerate(g.e) if j != i) and g.e[i] > 0 for g in generators):
            return False
    return True


def pure_power_degree(generators: Sequence[Term], var: int) -> int:
    """Least k with x_var^k inside the ideal; raises if there is none."""
    nvars = generators[0].nvars
    bound = max((g.deg(var) for g in generators), default=0)
    for k in range(bound + 1):
        if ideal_contains(generators, Term.variable(nvars, var) ** k):
            return k
    raise ValueError(f"no pure power of variable {var} lies in the ideal")


def escalier_full(generators: Sequence[Term], nvars: int | None = None) -> tuple[Term, ...]:
    """The whole escalier of a zero-dimensional ideal, in (degree, lex) order."""
    if nvars is None:
        if not generators:
            raise ValueError("empty generator list is not zero dimensional")
        nvars = generators[0].nvars
    if not escalier_is_finite(generators, nvars):
        raise ValueError("the ideal is not zero dimensional: the escalier is infinite")
    bounds = [pure_power_degree(generators, i) for i in range(nvars)]
    out = [
        t
        for t in iter_box([max(b - 1, 0) for b in bounds])
        if not ideal_contains(generators, t)
    ]
    return tuple(sorted(out, key=deglex_key))


def border(generators: Sequence[Term], nvars: int | None = None) -> tuple[Term, ...]:
    """Border of a zero-dimensional ideal: x_1 N(J) u ... u x_n N(J) minus N(J)."""
    escal = escalier_full(generators, nvars)
    n = generators[0].nvars if nvars is None else nvars
    inside = set(escal)
    out = {
        Term.variable(n, i) * t
        for t in escal
        for i in range(n)
    } - inside
    return tuple(sorted(out, key=deglex_key))


def is_quasi_stable(generators: Sequence[Term]) -> bool:
    """Quasi stability test for the generated monomial ideal.

    For every minimal generator tau and variable x_j above min(tau) there
    must be t >= 0 with x_j^t * tau / min(tau) in the ideal.  Membership is
    monotone in t, so searching t up to the maximal generator degree in
    x_j is exact.
    """
    gens = minimal_generators(generators)
    if not gens:
        return True
    n = gens[0].nvars
    for tau in gens:
        if tau.is_one():
            continue
        m = tau.min_variable()
        sigma = tau / Term.variable(n, m)
        for j in range(m + 1, n):
            tmax = max(g.deg(j) for g in gens)
            xj = Term.variable(n, j)
            if not any(ideal_contains(gens, sigma * (xj ** t)) for t in range(tmax + 1)):
                return False
    return True


# ---------------------------------------------------------------------------
# Janet and Janet-like division machinery

def janet_multiplicative(generating_set: Sequence[Term], alpha: Term) -> frozenset[int]:
    """Janet-multiplicative variable indices of alpha with respect to the set.

    x_j is multiplicative when no other element agrees with alpha on every
    variable above x_j while exceeding it at x_j.
    """
    if alpha not in generating_set:
        raise ValueError("the term is not an element of the generating set")
    n = alpha.nvars
    mult = set()
    for j in range(n):
        blocked = any(
            beta.deg(j) > alpha.deg(j)
            and all(beta.deg(i) == alpha.deg(i) for i in range(j + 1, n))
            for beta in generating_set
        )
        if not blocked:
            mult.add(j)
    return frozenset(mult)


def janet_cone_contains(generating_set: Sequence[Term], alpha: Term, t: Term) -> bool:
    if not alpha.divides(t):
        return False
    mult = janet_multiplicative(generating_set, alpha)
    quotient = t / alpha
    return all(k == 0 or i in mult for i, k in enumerate(quotient.e))


def is_janet_complete(generating_set: Sequence[Term]) -> bool:
    """Every term of the ideal lies in some Janet cone (uniqueness is automatic)."""
    return _first_uncovered_by_janet(generating_set) is None


def _first_uncovered_by_janet(gens: Sequence[Term]) -> Term | None:
    if not gens:
        return None
    n = gens[0].nvars
    # box bound: divisibility thresholds never exceed head + one prolongation
    bounds = [max(g.deg(i) for g in gens) + 1 for i in range(n)]
    for t in iter_box(bounds):
        if ideal_contains(gens, t) and not any(
            janet_cone_contains(gens, g, t) for g in gens
        ):
            return t
    return None


def janet_completion(generating_set: Sequence[Term]) -> tuple[Term, ...]:
    """Smallest-first Janet completion: add prolongations until the cones tile.

    Prolongations x_j * alpha with x_j nonmultiplicative are added one at a
    time in (degree, lex) order, recomputing multiplicative variables after
    each addition; the classical procedure terminates.
    """
    current = list(sorted_terms(set(generating_set)))
    while True:
        candidates = []
        for alpha in current:
            mult = janet_multiplicative(current, alpha)
            n = alpha.nvars
            for j in range(n):
                if j in mult:
                    continue
                p = alpha * Term.variable(n, j)
                if p in current:
                    continue
                if not any(janet_cone_contains(current, g, p) for g in current):
                    candidates.append(p)
        if not candidates:
            return tuple(sorted_terms(current))
        current.append(min(candidates, key=deglex_key))
        current.sort(key=deglex_key)


def nonmultiplicative_powers(generating_set: Sequence[Term], alpha: Term) -> tuple[Term, ...]:
    """The set NMP(alpha, M) of nonmultiplicative pure powers.

    For each variable x_i the power x_i^k enters with k the least positive
    difference deg_i(beta) - deg_i(alpha) over elements beta agreeing with
    alpha on all higher variables and exceeding it at x_i.
    """
    if alpha not in generating_set:
        raise ValueError("the term is not an element of the generating set")
    n = alpha.nvars
    out = []
    for i in range(n):
        diffs = [
            beta.deg(i) - alpha.deg(i)
            for beta in generating_set
            if beta.deg(i) > alpha.deg(i)
            and all(beta.deg(j) == alpha.deg(j) for j in range(i + 1, n))
        ]
        if diffs:
            out.append(Term.variable(n, i) ** min(diffs))
    return tuple(sorted(out, key=deglex_key))


def janet_like_cone_contains(generating_set: Sequence[Term], alpha: Term, t: Term) -> bool:
    if not alpha.divides(t):
        return False
    quotient = t / alpha
    return not any(p.divides(quotient) for p in nonmultiplicative_powers(generating_set, alpha))


def is_janet_like_complete(generating_set: Sequence[Term]) -> bool:
    gens = list(generating_set)
    if not gens:
        return True
    n = gens[0].nvars
    bounds = [max(g.deg(i) for g in gens) + 1 for i in range(n)]
    return not any(
        ideal_contains(gens, t)
        and not any(janet_like_cone_contains(gens, g, t) for g in gens)
        for t in iter_box(bounds)
    )


def janet_like_completion(generating_set: Sequence[Term]) -> tuple[Term, ...]:
    """Minimal completion by nonmultiplicative-power prolongations."""
    current = list(sorted_terms(set(generating_set)))
    while True:
        candidates = []
        for alpha in current:
            for p in nonmultiplicative_powers(current, alpha):
                t = alpha * p
                if t in current:
                    continue
                if not any(janet_like_cone_contains(current, g, t) for g in current):
                    candidates.append(t)
        if not candidates:
            return tuple(sorted_terms(current))
        current.append(min(candidates, key=deglex_key))
        current.sort(key=deglex_key)
