"""Property suites run by ``asymreg selftest`` (and by the test-suite)."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from .corpus import DEFAULT_FIELD, random_monomial_ideals, small_monomial_ideals, standard_corpus
from .groebner import (
    Ideal,
    colon_poly,
    colon_poly_generic,
    colon_variable,
    ideal_equal,
    ideal_product,
    intersect,
    intersect_generic,
    s_pairs_reduce_to_zero,
)
from .hilbert import degree_invariants, krull_dimension, krull_dimension_independent_sets
from .poly import Polynomial, Ring
from .reductions import ideal_powers, rho
from .regularity import regularity_ideal


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" -- {self.detail}" if self.detail else ""
        return f"{status} {self.name} ({self.cases} cases, {self.seconds:.1f}s){extra}"


def random_homogeneous(rng: random.Random, ring: Ring, deg: int, nterms: int) -> Polynomial:
    p = ring.field.p if hasattr(ring.field, "p") else 50
    terms = {}
    for _ in range(nterms):
        choice = [rng.randrange(ring.nvars) for _ in range(deg)]
        m = tuple(choice.count(i) for i in range(ring.nvars))
        terms[m] = rng.randrange(1, p)
    return Polynomial(ring, terms, normalized=False)


def random_gb_cases(count: int = 100, seed: int = 1) -> list[list[Polynomial]]:
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        ring = Ring("xyz"[:rng.choice((2, 3))], DEFAULT_FIELD)
        gens = [random_homogeneous(rng, ring, rng.randint(2, 4), rng.randint(1, 4))
                for _ in range(rng.randint(2, 4))]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            cases.append(gens)
    return cases


def suite_gb_determinism(count: int = 100) -> tuple[int, list[str]]:
    rng = random.Random(99)
    bad = []
    for gens in random_gb_cases(count):
        ring = gens[0].ring
        ref = Ideal(ring, gens).groebner()
        shuffled = [g * rng.randrange(1, 32003) for g in gens]
        rng.shuffle(shuffled)
        # add a redundant combination as well
        shuffled.append(gens[0] * ring.gen(0))
        other = Ideal(ring, shuffled).groebner()
        if [g.raw for g in ref] != [g.raw for g in other]:
            bad.append(str(gens))
    return count, bad


def _gb_pool() -> list[Ideal]:
    pool = [Ideal(gens[0].ring, gens) for gens in random_gb_cases(100)]
    for I in standard_corpus():
        pool.append(I)
        pool.extend(ideal_powers(I, 3)[1:])
    return pool


def suite_s_pairs() -> tuple[int, list[str]]:
    bad = []
    pool = _gb_pool()
    for I in pool:
        gb = I.groebner()
        if not s_pairs_reduce_to_zero([g.raw for g in gb], I.ring.field, I.ring.order):
            bad.append(str(I))
        # the basis generates the same ideal
        if not all(I.contains(g) for g in gb) or not all(
                Ideal(I.ring, gb, check=False).contains(g) for g in I.generators):
            bad.append(f"span {I}")
    return len(pool), bad


def suite_seed_invariance(seeds=(0, 1, 2)) -> tuple[int, list[str]]:
    bad = []
    corpus = [I for I in standard_corpus() if not I.is_unit()]
    for I in corpus:
        regs = {regularity_ideal(I, s) for s in seeds}
        if len(regs) != 1:
            bad.append(f"{I}: {sorted(regs)}")
    return len(corpus) * len(seeds), bad


def suite_degree_bound() -> tuple[int, list[str]]:
    """d(I^n) <= reg(I^n) on the corpus and its squares."""
    bad = []
    n = 0
    for I in standard_corpus():
        for P in ideal_powers(I, 2):
            n += 1
            d = degree_invariants(P).d
            r = regularity_ideal(P, 0)
            if d > r:
                bad.append(f"{P}: d={d} reg={r}")
    return n, bad


def suite_degree_lower_bound(N: int = 3) -> tuple[int, list[str]]:
    """d(I^n) >= rho(I) n for every computed power (uncapped rho only)."""
    bad = []
    n_checked = 0
    for I in standard_corpus():
        r, _, capped = rho(I)
        if capped:
            continue
        for n, P in enumerate(ideal_powers(I, N), 1):
            n_checked += 1
            if degree_invariants(P).d < r * n:
                bad.append(f"{I} n={n}")
    return n_checked, bad


def suite_colon_laws() -> tuple[int, list[str]]:
    bad = []
    ideals = small_monomial_ideals(2, 3, count=12, seed=5) + small_monomial_ideals(3, 3, count=12, seed=6)
    n = 0
    for I in ideals:
        ring = I.ring
        x, y = ring.gen(0), ring.gen(1)
        for f in (x, y, x * y):
            n += 1
            C = colon_poly(I, f)
            if not C.contains_ideal(I):
                bad.append(f"I not in I:f for {I}, {f}")
            if not I.contains_ideal(C * f):
                bad.append(f"(I:f)f not in I for {I}, {f}")
            if not ideal_equal(C, colon_poly_generic(I, f)):
                bad.append(f"monomial colon != generic colon for {I}, {f}")
        if not ideal_equal(colon_poly(colon_poly(I, x), y), colon_poly(I, x * y)):
            bad.append(f"((I:x):y) != I:xy for {I}")
        if not ideal_equal(colon_variable(I, 1), colon_poly_generic(I, y)):
            bad.append(f"variable colon mismatch for {I}")
    # intersections: fast path against the tag-variable route, and the containments
    for I, J in zip(ideals[::2], ideals[1::2]):
        if I.ring != J.ring:
            continue
        n += 1
        M = intersect(I, J)
        if not ideal_equal(M, intersect_generic(I, J)):
            bad.append(f"intersection mismatch {I} {J}")
        if not (I.contains_ideal(M) and J.contains_ideal(M)):
            bad.append(f"intersection not contained {I} {J}")
        if not M.contains_ideal(ideal_product(I, J)):
            bad.append(f"IJ not in I meet J {I} {J}")
    # non-monomial colons: variable trick against the generic route
    for I in standard_corpus():
        if I.is_monomial:
            continue
        for j in range(I.ring.nvars):
            n += 1
            if not ideal_equal(colon_variable(I, j), colon_poly_generic(I, I.ring.gen(j))):
                bad.append(f"variable colon mismatch for {I}, x_{j}")
    return n, bad


def suite_dimension() -> tuple[int, list[str]]:
    bad = []
    ideals = (small_monomial_ideals(2, 3, count=15, seed=1) + small_monomial_ideals(3, 3, count=15, seed=2)
              + small_monomial_ideals(4, 2, count=10, seed=3) + standard_corpus())
    for I in ideals:
        a, b = krull_dimension(I), krull_dimension_independent_sets(I)
        if a != b:
            bad.append(f"{I}: {a} vs {b}")
    return len(ideals), bad


def suite_closure_dilation() -> tuple[int, list[str]]:
    from .newton import closure_of_power, integral_closure_monomial

    bad = []
    ideals = random_monomial_ideals(10)
    for I in ideals:
        for n in range(1, 4):
            if not ideal_equal(closure_of_power(I, n), integral_closure_monomial(I ** n)):
                bad.append(f"{I} n={n}")
    return len(ideals) * 3, bad


SUITES: list[tuple[str, Callable]] = [
    ("reduced GB determinism under permutation and rescaling", suite_gb_determinism),
    ("S-pair certificate on cached bases", suite_s_pairs),
    ("regularity seed invariance (3 seeds)", suite_seed_invariance),
    ("d(I^n) <= reg(I^n)", suite_degree_bound),
    ("d(I^n) >= rho(I) n", suite_degree_lower_bound),
    ("colon and intersection laws", suite_colon_laws),
    ("Krull dimension: pole order vs independent sets", suite_dimension),
    ("closure of powers: dilation vs direct", suite_closure_dilation),
]


def run_suites(echo: Callable[[str], None] | None = print) -> list[SuiteResult]:
    results = []
    for name, fn in SUITES:
        t0 = time.perf_counter()
        cases, bad = fn()
        res = SuiteResult(name, not bad, cases, "; ".join(bad[:3]), time.perf_counter() - t0)
        results.append(res)
        if echo:
            echo(res.line())
    return results
