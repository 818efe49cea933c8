"""Deterministic test corpora: strongly stable catalogs and random monomial ideals."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .groebner import Ideal, minimalize_monomials
from .poly import GF, Ring

DEFAULT_FIELD = GF(32003)


def borel_closure(monos, nvars: int) -> list[tuple]:
    """Close a set of monomials under the moves m -> m * x_i / x_j, i < j."""
    seen = set(tuple(m) for m in monos)
    stack = list(seen)
    while stack:
        m = stack.pop()
        for j in range(nvars):
            if not m[j]:
                continue
            for i in range(j):
                e = list(m)
                e[j] -= 1
                e[i] += 1
                e = tuple(e)
                if e not in seen:
                    seen.add(e)
                    stack.append(e)
    return minimalize_monomials(seen)


def is_strongly_stable(gens, nvars: int) -> bool:
    """Every Borel move of a minimal generator stays inside the ideal."""
    gens = minimalize_monomials(gens)

    def member(m):
        return any(all(a <= b for a, b in zip(g, m)) for g in gens)

    for m in gens:
        for j in range(nvars):
            if m[j]:
                for i in range(j):
                    e = list(m)
                    e[j] -= 1
                    e[i] += 1
                    if not member(tuple(e)):
                        return False
    return True


def eliahou_kervaire_reg(gens) -> int:
    """reg of a strongly stable ideal: the largest minimal generator degree."""
    return max(sum(m) for m in minimalize_monomials(gens))


def _random_monomial(rng: random.Random, nvars: int, deg: int) -> tuple:
    choice = [rng.randrange(nvars) for _ in range(deg)]
    return tuple(choice.count(i) for i in range(nvars))


def strongly_stable_catalog(count: int = 24, seed: int = 2024, max_vars: int = 3,
                            max_deg: int = 5, field=DEFAULT_FIELD) -> list[Ideal]:
    """Random strongly stable ideals in 2..max_vars variables, generator degree <= max_deg."""
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        nvars = rng.randint(2, max_vars)
        k = rng.randint(1, 3)
        monos = [_random_monomial(rng, nvars, rng.randint(1, max_deg)) for _ in range(k)]
        gens = borel_closure(monos, nvars)
        if max(sum(m) for m in gens) > max_deg:
            continue
        key = (nvars, tuple(gens))
        if key in seen:
            continue
        seen.add(key)
        ring = Ring("xyzw"[:nvars], field)
        out.append(Ideal(ring, [ring.monomial(m) for m in gens]))
    return out


def random_monomial_ideals(count: int = 12, seed: int = 7, max_deg: int = 3,
                           field=DEFAULT_FIELD, max_gens: int = 3) -> list[Ideal]:
    """Random monomial ideals in 2 or 3 variables with small generator degrees."""
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        nvars = rng.choice((2, 3))
        k = rng.randint(1, max_gens)
        monos = minimalize_monomials(
            _random_monomial(rng, nvars, rng.randint(1, max_deg)) for _ in range(k))
        key = (nvars, tuple(monos))
        if key in seen:
            continue
        seen.add(key)
        ring = Ring("xyz"[:nvars], field)
        out.append(Ideal(ring, [ring.monomial(m) for m in monos]))
    return out


def small_monomial_ideals(nvars: int, max_deg: int, field=DEFAULT_FIELD,
                          count: int = 20, seed: int = 11) -> list[Ideal]:
    rng = random.Random(seed)
    ring = Ring("xyzw"[:nvars], field)
    monos = [m for d in range(1, max_deg + 1)
             for m in set(combinations_with_replacement(range(nvars), d))]
    monos = sorted({tuple(c.count(i) for i in range(nvars)) for c in monos})
    out = []
    for _ in range(count):
        pick = rng.sample(monos, rng.randint(1, 4))
        out.append(Ideal(ring, [ring.monomial(m) for m in pick]))
    return out


def standard_corpus(field=DEFAULT_FIELD) -> list[Ideal]:
    """Hand-picked homogeneous ideals, monomial and not, used by the property suites."""
    R2 = Ring("xy", field)
    R3 = Ring("xyz", field)
    specs = [
        (R2, ["x^2", "x*y"]),
        (R2, ["x^2", "y^2"]),
        (R2, ["x^2", "x*y", "y^3"]),
        (R2, ["x^2 - y^2", "x*y"]),
        (R2, ["x^3", "y^2"]),
        (R2, ["x + y"]),
        (R3, ["x", "y", "z"]),
        (R3, ["x^2", "y^2", "z^2", "x*y*z"]),
        (R3, ["x*y", "y*z", "x*z"]),
        (R3, ["x^2 - y*z", "y^2 - x*z"]),
        (R3, ["x*y - z^2", "x^2"]),
        (R3, ["x^2", "x*y", "x*z"]),
        (R3, ["x^3", "y^3", "x*y*z"]),
    ]
    return [Ideal(R, g) for R, g in specs]
