"""Hilbert series of quotients R/J, Krull dimension, a-invariants and d, epsilon."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .groebner import Ideal, minimal_generators, minimalize_monomials
from .poly import NEG_INF


class InfiniteLengthError(ValueError):
    """Q/K is not of finite length (the series difference has a pole at t = 1)."""


class NotContainedError(ValueError):
    pass


# integer polynomials are lists of coefficients, index = degree


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(p, k):
    return [0] * k + list(p) if p else []


def _divide_one_minus_t(p: list[int]) -> list[int] | None:
    """p / (1 - t) if exact, else None."""
    if not p:
        return []
    if sum(p) != 0:
        return None
    q = []
    acc = 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    return _trim(q)


def one_minus_t_power(s: int) -> list[int]:
    return [(-1) ** k * comb(s, k) for k in range(s + 1)]


@dataclass(frozen=True)
class HilbertSeries:
    """N(t) / (1 - t)^denom_power with integer numerator coefficients."""

    numerator: tuple[int, ...]
    denom_power: int

    def coefficient(self, d: int) -> int:
        if d < 0:
            return 0
        s = self.denom_power
        total = 0
        for i, c in enumerate(self.numerator):
            if i > d:
                break
            k = d - i
            # coefficient of t^k in 1/(1-t)^s
            total += c * (comb(k + s - 1, s - 1) if s > 0 else (1 if k == 0 else 0))
        return total

    def coefficients(self, upto: int) -> list[int]:
        return [self.coefficient(d) for d in range(upto + 1)]

    def reduced(self) -> tuple[tuple[int, ...], int]:
        """Cancel common factors (1 - t); returns (numerator, pole order)."""
        num = list(self.numerator)
        s = self.denom_power
        while s > 0 and num:
            q = _divide_one_minus_t(num)
            if q is None:
                break
            num, s = q, s - 1
        return tuple(num), s


def _hilbert_numerator(gens: list[tuple], nvars: int, memo: dict) -> list[int]:
    gens = minimalize_monomials(gens)
    if not gens:
        return [1]
    fk = frozenset(gens)
    hit = memo.get(fk)
    if hit is not None:
        return hit
    support_sets = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    if all(not (a & b) for a, b in combinations(support_sets, 2)):
        out = [1]
        for m in gens:
            out = _pmul(out, _padd([1], _shift([-1], sum(m))))
    else:
        counts = [0] * nvars
        for m, sup in zip(gens, support_sets):
            if len(sup) > 1:
                for i in sup:
                    counts[i] += 1
        j = max(range(nvars), key=lambda i: counts[i])
        k = min(m[j] for m, sup in zip(gens, support_sets) if len(sup) > 1 and m[j])
        p = tuple(k if i == j else 0 for i in range(nvars))
        plus = _hilbert_numerator(gens + [p], nvars, memo)
        colon = [tuple(a - min(a, b) for a, b in zip(m, p)) for m in gens]
        out = _padd(plus, _shift(_hilbert_numerator(colon, nvars, memo), k))
    memo[fk] = out
    return out


def hilbert_series_monomial(gens, nvars: int) -> HilbertSeries:
    """Series of k[x_1..x_nvars]/(monomials) via the pivot recursion."""
    gens = [tuple(m) for m in gens]
    if any(not any(m) for m in gens):
        return HilbertSeries((), nvars)
    return HilbertSeries(tuple(_hilbert_numerator(gens, nvars, {})), nvars)


def hilbert_series_quotient(J: Ideal) -> HilbertSeries:
    """Series of R/J, read off the initial ideal of J."""
    return hilbert_series_monomial(J.leading_monomials(), J.ring.nvars)


def hilbert_function(J: Ideal, deg: int) -> int:
    if deg < 0:
        raise ValueError("degree must be non-negative")
    return hilbert_series_quotient(J).coefficient(deg)


def krull_dimension(J: Ideal):
    """dim R/J as s minus the multiplicity of t = 1 in N(t); -inf for the unit ideal."""
    hs = hilbert_series_quotient(J)
    if not hs.numerator:
        return NEG_INF
    return hs.reduced()[1]


def krull_dimension_independent_sets(J: Ideal):
    """dim R/J as the largest set of variables containing no initial generator's support."""
    lms = minimalize_monomials(J.leading_monomials())
    n = J.ring.nvars
    if any(not any(m) for m in lms):
        return NEG_INF
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if not any(sup <= S for sup in supports):
                return size
    return 0


def a_invariant_pair(K: Ideal, Q: Ideal):
    """a(Q/K) for K contained in Q with Q/K of finite length; -inf when K = Q."""
    if K.ring != Q.ring:
        raise ValueError("ideals live in different rings")
    if not Q.contains_ideal(K):
        raise NotContainedError("K is not contained in Q")
    s = K.ring.nvars
    diff = _padd(list(hilbert_series_quotient(K).numerator),
                 [-c for c in hilbert_series_quotient(Q).numerator])
    q = diff
    for _ in range(s):
        q = _divide_one_minus_t(q)
        if q is None:
            raise InfiniteLengthError("quotient Q/K does not have finite length")
    if not q:
        return NEG_INF
    assert all(c >= 0 for c in q), "graded dimensions cannot be negative"
    return len(q) - 1


@dataclass(frozen=True)
class DegreeInvariants:
    d: object       # max degree of a minimal generator
    epsilon: object  # min degree of a nonzero homogeneous element
    dim: object
    degenerate: str | None = None


def degree_invariants(J: Ideal) -> DegreeInvariants:
    """d(J), epsilon(J) and dim R/J. Zero and unit ideals get a flag instead of an error."""
    if J.is_zero():
        return DegreeInvariants(NEG_INF, NEG_INF, J.ring.nvars, degenerate="zero ideal")
    gens = minimal_generators(J)
    degs = [g.degree for g in gens]
    if J.is_unit():
        return DegreeInvariants(0, 0, NEG_INF, degenerate="unit ideal")
    return DegreeInvariants(max(degs), min(degs), krull_dimension(J))
