"""Buchberger's algorithm and ideal arithmetic for homogeneous ideals.

The engine works on raw ``{exponent tuple: coefficient}`` dicts; the
:class:`Ideal` wrapper adds homogeneity checks, caching of the reduced
Groebner basis and the ideal operations (sum, product, power, intersection,
colon, elimination).
"""

from __future__ import annotations

import heapq
import threading
from typing import Iterable, Sequence

from .poly import (
    NEG_INF,
    Polynomial,
    Ring,
    monomial_order,
)


class NotHomogeneousError(ValueError):
    def __init__(self, poly):
        self.poly = poly
        super().__init__(f"generator not homogeneous: {poly}")


# ---------------------------------------------------------------------------
# Monomial helpers (plain tuples)
# ---------------------------------------------------------------------------


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def minimalize_monomials(monos: Iterable[tuple]) -> list[tuple]:
    """Minimal elements under divisibility, deduplicated, sorted by degree."""
    out: list[tuple] = []
    for m in sorted(set(monos), key=lambda e: (sum(e), e)):
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------


class _Basis:
    """Leading data for the reducer search."""

    __slots__ = ("lms", "polys", "degs")

    def __init__(self):
        self.lms: list[tuple] = []
        self.polys: list[dict] = []
        self.degs: list[int] = []

    def add(self, lm, poly):
        self.lms.append(lm)
        self.polys.append(poly)
        self.degs.append(sum(lm))

    def find(self, m, dm):
        for lm, d, p in zip(self.lms, self.degs, self.polys):
            if d <= dm and _divides(lm, m):
                return lm, p
        return None


def _monic(f: dict, field, key) -> tuple[tuple, dict]:
    lm = max(f, key=key)
    inv = field.inv(f[lm])
    norm = field.norm
    return lm, {m: norm(c * inv) for m, c in f.items()}


def _reduce(f: dict, basis: _Basis, field, order) -> dict:
    """Full reduction of ``f`` modulo monic polynomials in ``basis``."""
    if not f:
        return {}
    key = order.key
    norm = field.norm
    f = dict(f)
    heap = [(tuple(-k for k in key(m)), m) for m in f]
    heapq.heapify(heap)
    pushed = set(f)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        hit = basis.find(m, sum(m))
        if hit is None:
            rem[m] = c
            continue
        lm, g = hit
        t = _sub(m, lm)
        for gm, gc in g.items():
            if gm == lm:
                continue
            mm = tuple(a + b for a, b in zip(t, gm))
            v = norm(f.get(mm, 0) - c * gc)
            if v:
                f[mm] = v
                if mm not in pushed:
                    pushed.add(mm)
                    heapq.heappush(heap, (tuple(-k for k in key(mm)), mm))
            else:
                f.pop(mm, None)
    return rem


def _spoly(f: dict, lf, g: dict, lg, field) -> dict:
    lc = _lcm(lf, lg)
    tf, tg = _sub(lc, lf), _sub(lc, lg)
    norm = field.norm
    out: dict = {}
    for m, c in f.items():
        mm = tuple(a + b for a, b in zip(m, tf))
        out[mm] = c
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, tg))
        v = norm(out.get(mm, 0) - c)
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def buchberger(polys: Sequence[dict], field, order) -> list[dict]:
    """Reduced Groebner basis of raw polynomials.

    Pairs are selected by sugar degree (the plain degree for homogeneous
    input), with the coprime and Gebauer-Moeller chain criteria.  The output
    is monic, interreduced and sorted by ascending leading monomial.
    """
    order = monomial_order(order)
    key = order.key
    polys = [p for p in polys if p]
    if not polys:
        return []
    if all(len(p) == 1 for p in polys):
        return [{m: 1} for m in sorted(minimalize_monomials(next(iter(p)) for p in polys), key=key)]

    G: list[dict] = []
    LM: list[tuple] = []
    SUGAR: list[int] = []
    active: list[int] = []
    pairs: list[tuple] = []  # (sugar, key(lcm), i, j, lcm)

    def update(h: int):
        nonlocal active, pairs
        lh = LM[h]
        cands = [(g, _lcm(lh, LM[g])) for g in active]
        kept = []
        for idx, (g, lc) in enumerate(cands):
            if _coprime(lh, LM[g]):
                kept.append((g, lc))
                continue
            rest = cands[idx + 1:]
            if any(_divides(l2, lc) for _, l2 in rest) or any(_divides(l2, lc) for _, l2 in kept):
                continue
            kept.append((g, lc))
        new = [(g, lc) for g, lc in kept if not _coprime(lh, LM[g])]
        pairs = [
            p for p in pairs
            if not (_divides(lh, p[4]) and _lcm(LM[p[2]], lh) != p[4] and _lcm(lh, LM[p[3]]) != p[4])
        ]
        for g, lc in new:
            dlc = sum(lc)
            sug = max(SUGAR[g] + dlc - sum(LM[g]), SUGAR[h] + dlc - sum(lh))
            pairs.append((sug, key(lc), g, h, lc))
        active = [g for g in active if not _divides(lh, LM[g])] + [h]

    basis = _Basis()

    def insert(p: dict, sugar: int):
        lm, p = _monic(p, field, key)
        G.append(p)
        LM.append(lm)
        SUGAR.append(sugar)
        basis.add(lm, p)
        update(len(G) - 1)

    # interreduce the input by ascending degree first
    for p in sorted(polys, key=lambda q: (max(sum(m) for m in q), key(max(q, key=key)))):
        r = _reduce(p, basis, field, order)
        if r:
            insert(r, max(sum(m) for m in p))

    while pairs:
        i = min(range(len(pairs)), key=lambda k: pairs[k][:2])
        sug, _, a, b, _ = pairs.pop(i)
        s = _spoly(G[a], LM[a], G[b], LM[b], field)
        r = _reduce(s, basis, field, order)
        if r:
            insert(r, sug)

    final = sorted(active, key=lambda g: key(LM[g]))
    out = []
    for g in final:
        others = _Basis()
        for h in final:
            if h != g:
                others.add(LM[h], G[h])
        tail = dict(G[g])
        lm = LM[g]
        c = tail.pop(lm)
        red = _reduce(tail, others, field, order)
        red[lm] = c
        out.append(red)
    return out


def normal_form_raw(f: dict, gb: Sequence[dict], field, order) -> dict:
    order = monomial_order(order)
    basis = _Basis()
    for g in gb:
        lm, g = _monic(g, field, order.key)
        basis.add(lm, g)
    return _reduce(f, basis, field, order)


def s_pairs_reduce_to_zero(gb: Sequence[dict], field, order) -> bool:
    """Buchberger certificate: every S-pair of ``gb`` reduces to zero."""
    order = monomial_order(order)
    key = order.key
    basis = _Basis()
    monic = []
    for g in gb:
        lm, g = _monic(g, field, key)
        basis.add(lm, g)
        monic.append((lm, g))
    for i in range(len(monic)):
        for j in range(i + 1, len(monic)):
            (la, a), (lb, b) = monic[i], monic[j]
            if _reduce(_spoly(a, la, b, lb, field), basis, field, order):
                return False
    return True


# ---------------------------------------------------------------------------
# Ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Homogeneous ideal with a lazily computed, write-once reduced GB."""

    def __init__(self, ring: Ring, generators: Iterable = (), *, check: bool = True):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                if g.ring.variables == ring.variables and g.ring.field == ring.field:
                    g = Polynomial(ring, g.raw)
                else:
                    raise ValueError("generator from a different ring")
            if g.is_zero():
                continue
            if check and not g.is_homogeneous():
                raise NotHomogeneousError(g)
            gens.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: tuple[Polynomial, ...] | None = None
        self._lock = threading.Lock()

    # -- Groebner basis ------------------------------------------------------

    def groebner(self) -> tuple[Polynomial, ...]:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    raw = buchberger([g.raw for g in self.generators], self.ring.field, self.ring.order)
                    self._gb = tuple(Polynomial(self.ring, p) for p in raw)
        return self._gb

    reduced_gb = property(groebner)

    def leading_monomials(self) -> list[tuple]:
        return [tuple(g.lead_monomial()) for g in self.groebner()]

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.groebner())

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.groebner())

    def degrees(self) -> list[int]:
        return sorted(g.degree for g in self.generators)

    # -- predicates ----------------------------------------------------------

    def contains(self, f) -> bool:
        if isinstance(f, str):
            f = self.ring.parse(f)
        if f.is_zero():
            return True
        return normal_form(f, self.groebner()).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __hash__(self):
        return hash(tuple(frozenset(g.raw.items()) for g in self.groebner()))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.generators])
        return ideal_product(self, other)

    def __pow__(self, n: int):
        return ideal_power(self, n)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def to_strings(self) -> list[str]:
        return [str(g) for g in self.groebner()]


def unit_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, [ring.one()])


def zero_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, [])


def irrelevant_ideal(ring: Ring) -> Ideal:
    return Ideal(ring, ring.gens())


def _same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise ValueError("ideals live in different rings")


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``basis``.

    Basis elements are made monic; the result has no term divisible by any
    basis leading monomial.
    """
    ring = f.ring
    for g in basis:
        if g.ring != ring:
            raise ValueError("basis element from a different ring")
        if g.is_zero():
            raise ValueError("zero basis element")
    return Polynomial(ring, normal_form_raw(f.raw, [g.raw for g in basis], ring.field, ring.order))


def reduced_groebner(gens: Sequence[Polynomial], order=None) -> list[Polynomial]:
    if not gens:
        return []
    ring = gens[0].ring
    if order is not None:
        ring = ring.with_order(order)
    raw = buchberger([g.raw for g in gens], ring.field, ring.order)
    return [Polynomial(ring, p) for p in raw]


def contains(I: Ideal, f: Polynomial) -> bool:
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    return [g.raw for g in I.groebner()] == [g.raw for g in J.groebner()]


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal(I.ring, I.generators + J.generators, check=False)


def _interreduced(ring: Ring, gens: Sequence[Polynomial]) -> Ideal:
    J = Ideal(ring, gens, check=False)
    return Ideal(ring, J.groebner(), check=False)


def ideal_product(I: Ideal, J: Ideal, *, reduce: bool = True) -> Ideal:
    """Pairwise products of generators (interreduced through the GB)."""
    _same_ring(I, J)
    a = I.groebner() if reduce else I.generators
    b = J.groebner() if reduce else J.generators
    if reduce and all(g.is_monomial() for g in a + b):
        monos = minimalize_monomials(
            tuple(x + y for x, y in zip(next(iter(f.raw)), next(iter(g.raw)))) for f in a for g in b)
        return Ideal(I.ring, [I.ring.monomial(m) for m in monos], check=False)
    prods = [f * g for f in a for g in b]
    if not reduce:
        return Ideal(I.ring, prods, check=False)
    return _interreduced(I.ring, prods)


def ideal_power(I: Ideal, n: int) -> Ideal:
    """I^n by iterated products; I^0 is the unit ideal."""
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return unit_ideal(I.ring)
    P = Ideal(I.ring, I.groebner(), check=False)
    for _ in range(n - 1):
        P = ideal_product(P, I)
    return P


def _is_monomial_ideal(I: Ideal) -> bool:
    return all(g.is_monomial() for g in I.generators)


# ---------------------------------------------------------------------------
# Elimination, intersection, colon
# ---------------------------------------------------------------------------


def _mono_of(f: Polynomial) -> tuple:
    return next(iter(f.raw))


def eliminate(I: Ideal, variables: Sequence) -> Ideal:
    """``I`` intersected with the subring on the remaining variables."""
    ring = I.ring
    idx = sorted({ring.index(v) if isinstance(v, str) else int(v) for v in variables})
    if not idx or len(idx) >= ring.nvars:
        raise ValueError("eliminate needs a nonempty proper subset of the variables")
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    k = len(idx)
    raw = [{tuple(m[i] for i in perm): c for m, c in g.raw.items()} for g in I.generators]
    gb = buchberger(raw, ring.field, ("elim", k))
    target = Ring([ring.variables[i] for i in rest], ring.field, ring.order)
    keep = [{m[k:]: c for m, c in g.items()} for g in gb if all(not any(m[:k]) for m in g)]
    return Ideal(target, [Polynomial(target, g) for g in keep], check=False)


def _intersect_raw(A: Sequence[dict], B: Sequence[dict], field, nvars: int) -> list[dict]:
    """Generators of (A) meet (B) via t*A + (1-t)*B, eliminating t."""
    neg1 = field.norm(-1)
    gens = []
    for f in A:
        gens.append({(1,) + m: c for m, c in f.items()})
    for g in B:
        h = {}
        for m, c in g.items():
            h[(0,) + m] = c
            h[(1,) + m] = field.norm(neg1 * c)
        gens.append(h)
    gb = buchberger(gens, field, ("elim", 1))
    return [{m[1:]: c for m, c in g.items()} for g in gb if all(m[0] == 0 for m in g)]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I meet J; monomial ideals use lcms, the general case a tag variable."""
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return zero_ideal(ring)
    if _is_monomial_ideal(I) and _is_monomial_ideal(J):
        return _monomial_intersect(I, J)
    return intersect_generic(I, J)


def intersect_generic(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return zero_ideal(ring)
    raw = _intersect_raw([g.raw for g in I.groebner()], [g.raw for g in J.groebner()],
                         ring.field, ring.nvars)
    polys = [Polynomial(ring, g) for g in raw]
    for p in polys:
        assert p.is_homogeneous(), "intersection of homogeneous ideals must be homogeneous"
    return Ideal(ring, polys, check=False)


def _monomial_intersect(I: Ideal, J: Ideal) -> Ideal:
    monos = minimalize_monomials(_lcm(_mono_of(f), _mono_of(g))
                                 for f in I.generators for g in J.generators)
    return Ideal(I.ring, [I.ring.monomial(m) for m in monos], check=False)


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient ``g / f``; raises if ``f`` does not divide ``g``."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = g.ring
    field = ring.field
    key = ring.order.key
    norm = field.norm
    lf = tuple(f.lead_monomial())
    inv = field.inv(f.raw[lf])
    r = dict(g.raw)
    q: dict = {}
    while r:
        lm = max(r, key=key)
        if not _divides(lf, lm):
            raise ArithmeticError(f"{f} does not divide {g}")
        t = _sub(lm, lf)
        c = norm(r[lm] * inv)
        q[t] = c
        for m, a in f.raw.items():
            mm = tuple(x + y for x, y in zip(t, m))
            v = norm(r.get(mm, 0) - c * a)
            if v:
                r[mm] = v
            else:
                r.pop(mm, None)
    return Polynomial(ring, q)


def colon_poly(I: Ideal, f: Polynomial) -> Ideal:
    """I : f = {g : g*f in I}, via (I meet (f)) / f."""
    if f.is_zero():
        raise ZeroDivisionError("colon by the zero polynomial")
    if not f.is_homogeneous():
        raise NotHomogeneousError(f)
    ring = I.ring
    if I.is_zero():
        return zero_ideal(ring)
    if f.is_constant():
        return Ideal(ring, I.groebner(), check=False)
    if _is_monomial_ideal(I) and f.is_monomial():
        return _monomial_colon(I, _mono_of(f))
    return colon_poly_generic(I, f)


def colon_poly_generic(I: Ideal, f: Polynomial) -> Ideal:
    ring = I.ring
    if I.is_zero():
        return zero_ideal(ring)
    meet = intersect_generic(I, Ideal(ring, [f], check=False))
    return Ideal(ring, [exact_divide(g, f) for g in meet.generators], check=False)


def _monomial_colon(I: Ideal, m: tuple) -> Ideal:
    monos = minimalize_monomials(
        tuple(a - min(a, b) for a, b in zip(_mono_of(g), m)) for g in I.generators)
    return Ideal(I.ring, [I.ring.monomial(x) for x in monos], check=False)


def colon_variable(I: Ideal, j: int) -> Ideal:
    """I : x_j via a grevlex basis in which x_j is the last variable.

    For homogeneous ideals under such an order, x_j divides a leading term
    exactly when it divides the whole element, so dividing each basis
    element by x_j (when possible) yields a basis of the colon.
    """
    ring = I.ring
    if I.is_zero():
        return zero_ideal(ring)
    if _is_monomial_ideal(I):
        e = [0] * ring.nvars
        e[j] = 1
        return _monomial_colon(I, tuple(e))
    gb = buchberger([g.raw for g in I.generators], ring.field, ("grevlex_last", j))
    out = []
    for g in gb:
        if all(m[j] for m in g):
            g = {m[:j] + (m[j] - 1,) + m[j + 1:]: c for m, c in g.items()}
        out.append(Polynomial(ring, g))
    return Ideal(ring, out, check=False)


def variable_colons(I: Ideal) -> dict:
    """Map j -> I : x_j, skipping variables already in I (colon is the unit ideal)."""
    ring = I.ring
    out = {}
    for j in range(ring.nvars):
        e = [0] * ring.nvars
        e[j] = 1
        if I.contains(ring.monomial(e)):
            continue
        out[j] = colon_variable(I, j)
    return out


def colon_irrelevant(I: Ideal, colons: dict | None = None) -> Ideal:
    """I : R_+ as the intersection of the variable colons I : x_j."""
    ring = I.ring
    if I.is_unit():
        return I
    if colons is None:
        colons = variable_colons(I)
    parts = [colons[j] for j in sorted(colons)]
    if not parts:
        return unit_ideal(ring)
    result = parts[0]
    for P in parts[1:]:
        result = intersect(result, P)
    return Ideal(ring, result.groebner(), check=False)


def saturation_variable(I: Ideal, j: int) -> Ideal:
    """I : x_j^infinity (same grevlex trick, dividing out every power)."""
    ring = I.ring
    if I.is_zero():
        return zero_ideal(ring)
    gb = buchberger([g.raw for g in I.generators], ring.field, ("grevlex_last", j))
    out = []
    for g in gb:
        k = min(m[j] for m in g)
        if k:
            g = {m[:j] + (m[j] - k,) + m[j + 1:]: c for m, c in g.items()}
        out.append(Polynomial(ring, g))
    return Ideal(ring, out, check=False)


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """Discard loop: drop any generator lying in the ideal of the others."""
    ring = I.ring
    gens = list(I.generators)
    if _is_monomial_ideal(I):
        monos = minimalize_monomials(_mono_of(g) for g in gens)
        return [ring.monomial(m) for m in monos]
    # dedupe up to scalars, then try highest degrees first
    seen = {}
    for g in gens:
        seen.setdefault(frozenset(g.monic().raw.items()), g.monic())
    gens = sorted(seen.values(), key=lambda g: (-g.degree, sorted(g.raw)))
    i = 0
    while i < len(gens):
        g = gens[i]
        others = [h for k, h in enumerate(gens) if k != i and h.degree <= g.degree]
        if others and Ideal(ring, others, check=False).contains(g):
            gens.pop(i)
        else:
            i += 1
    return sorted(gens, key=lambda g: (g.degree, str(g)))


def ideal_degree_bounds(I: Ideal) -> tuple:
    """(min, max) degree of a minimal generating set; ``-inf`` for the zero ideal."""
    gens = minimal_generators(I)
    if not gens:
        return NEG_INF, NEG_INF
    degs = [g.degree for g in gens]
    return min(degs), max(degs)
