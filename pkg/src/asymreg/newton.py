"""Integral closures of monomial ideals through their Newton polyhedra.

The Newton polyhedron conv(exponents) + R^s_{>=0} is described by exact
rational halfspaces obtained by Fourier-Motzkin elimination of the
convex-combination multipliers. Its lattice points are the exponents of
the integral closure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .groebner import Ideal, ideal_equal, ideal_product, minimalize_monomials
from .hilbert import degree_invariants
from .reductions import (
    DEFAULT_CAP,
    ConsistencyError,
    ExperimentReport,
    _degenerate_report,
    fit_linear_tail,
    ring_json,
    rho,
    slope_verdict,
)
from .regularity import regularity_ideal

MAX_VARS = 4


class NotMonomialError(ValueError):
    def __init__(self, msg="monomial ideals only"):
        super().__init__(msg)


@dataclass(frozen=True)
class Halfspace:
    """normal . a >= offset, with a primitive integer normal."""

    normal: tuple[int, ...]
    offset: Fraction

    def contains(self, point: Sequence[int]) -> bool:
        return sum(c * x for c, x in zip(self.normal, point)) >= self.offset

    def value(self, point):
        return sum(c * x for c, x in zip(self.normal, point))

    def __str__(self):
        return f"{list(self.normal)} . a >= {self.offset}"


@dataclass(frozen=True)
class NewtonRegion:
    vertices: tuple[tuple[int, ...], ...]
    halfspaces: tuple[Halfspace, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def contains(self, point: Sequence[int]) -> bool:
        return all(h.contains(point) for h in self.halfspaces)

    def dilate(self, n: int) -> NewtonRegion:
        """The region of I^n: every offset and vertex scaled by n."""
        return NewtonRegion(
            tuple(tuple(n * x for x in v) for v in self.vertices),
            tuple(Halfspace(h.normal, h.offset * n) for h in self.halfspaces),
        )

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "halfspaces": [{"normal": list(h.normal), "offset": str(h.offset)}
                           for h in self.halfspaces],
        }


def _primitive(row: Sequence[Fraction]) -> tuple:
    """Scale a rational row to primitive integers (positive scaling only)."""
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def fourier_motzkin(rows: list[tuple], n_keep: int) -> list[tuple]:
    """Eliminate every column >= n_keep from ``row . (x, 1) >= 0`` systems.

    Each row is (coefficients..., constant). Redundancy is limited with
    Chernikov's rule: after k eliminations a combination built from more
    than k + 1 original rows is dropped.
    """
    ncols = len(rows[0]) - 1
    work = {}
    for i, r in enumerate(rows):
        work.setdefault(_primitive(r), frozenset([i]))
    eliminated = 0
    for col in range(ncols - 1, n_keep - 1, -1):
        eliminated += 1
        pos, neg, zero = [], [], {}
        for r, hist in work.items():
            if r[col] > 0:
                pos.append((r, hist))
            elif r[col] < 0:
                neg.append((r, hist))
            else:
                zero[r] = hist
        new = dict(zero)
        for (p, hp), (q, hq) in itertools.product(pos, neg):
            hist = hp | hq
            if len(hist) > eliminated + 1:
                continue
            a, b = p[col], -q[col]
            comb = tuple(b * x + a * y for x, y in zip(p, q))
            comb = _primitive(comb)
            if not any(comb[:-1]):
                continue  # constant row; feasible systems give 0 >= negative
            old = new.get(comb)
            if old is None or len(hist) < len(old):
                new[comb] = hist
        # drop the eliminated column
        work = {}
        for r, hist in new.items():
            rr = r[:col] + r[col + 1:]
            work.setdefault(_primitive(rr), hist)
    return list(work)


def _monomial_exponents(I: Ideal) -> list[tuple]:
    gens = I.generators
    if not all(g.is_monomial() for g in gens):
        gens = I.groebner()
        if not all(g.is_monomial() for g in gens):
            raise NotMonomialError()
    return minimalize_monomials(next(iter(g.raw)) for g in gens)


def newton_region_from_points(points: Sequence[Sequence[int]]) -> NewtonRegion:
    pts = minimalize_monomials(tuple(p) for p in points)
    if not pts:
        raise ValueError("empty point set")
    s = len(pts[0])
    if s > MAX_VARS:
        raise ValueError(f"polyhedral operations are limited to {MAX_VARS} variables")
    m = len(pts)
    # columns: a_1..a_s, lambda_1..lambda_{m-1}; lambda_m = 1 - sum(others)
    rows = []
    last = pts[-1]
    for k in range(s):
        # a_k - sum_i lambda_i v_ik >= 0 with lambda_m substituted
        coeffs = [0] * s + [-(pts[i][k] - last[k]) for i in range(m - 1)]
        coeffs[k] = 1
        rows.append(tuple(coeffs) + (-last[k],))
    for i in range(m - 1):
        r = [0] * (s + m - 1)
        r[s + i] = 1
        rows.append(tuple(r) + (0,))
    rows.append(tuple([0] * s + [-1] * (m - 1)) + (1,))
    for k in range(s):
        r = [0] * (s + m - 1)
        r[k] = 1
        rows.append(tuple(r) + (0,))
    projected = fourier_motzkin(rows, s)
    # keep the strongest offset per normal
    best: dict = {}
    for r in projected:
        normal, const = r[:-1], Fraction(-r[-1])
        if normal not in best or const > best[normal]:
            best[normal] = const
    halfspaces = []
    for normal, off in sorted(best.items()):
        coord = sum(1 for c in normal if c) == 1
        tight = min(sum(c * x for c, x in zip(normal, v)) for v in pts) == off
        if tight or coord:
            halfspaces.append(Halfspace(normal, off))
    return NewtonRegion(tuple(pts), tuple(halfspaces))


def newton_region(I: Ideal) -> NewtonRegion:
    if I.is_zero():
        raise ValueError("zero ideal has no Newton polyhedron")
    return newton_region_from_points(_monomial_exponents(I))


def lattice_generators(region: NewtonRegion) -> list[tuple]:
    """Minimal lattice points of the region inside the vertex bounding box."""
    s = region.dim
    box = [max(v[k] for v in region.vertices) for k in range(s)]
    out = []
    for p in itertools.product(*(range(b + 1) for b in box)):
        if not region.contains(p):
            continue
        minimal = True
        for k in range(s):
            if p[k]:
                q = p[:k] + (p[k] - 1,) + p[k + 1:]
                if region.contains(q):
                    minimal = False
                    break
        if minimal:
            out.append(p)
    return minimalize_monomials(out)


def _ideal_of(ring, monos) -> Ideal:
    return Ideal(ring, [ring.monomial(m) for m in monos], check=False)


def integral_closure_monomial(I: Ideal) -> Ideal:
    region = newton_region(I)
    return _ideal_of(I.ring, lattice_generators(region))


def closure_of_power(I: Ideal, n: int, region: NewtonRegion | None = None) -> Ideal:
    """Closure of I^n from the n-fold dilation of the Newton region of I."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if region is None:
        region = newton_region(I)
    return _ideal_of(I.ring, lattice_generators(region.dilate(n)))


def check_closure_stability(I: Ideal, N: int) -> list[bool]:
    """[closure(I^(n+1)) == I * closure(I^n) for n = 1..N-1]."""
    if N < 2:
        raise ValueError("N must be at least 2")
    region = newton_region(I)
    closures = [closure_of_power(I, n, region) for n in range(1, N + 1)]
    return [ideal_equal(closures[n], ideal_product(I, closures[n - 1])) for n in range(1, N)]


def closure_experiment(I: Ideal, N: int = 5, n_cap: int = DEFAULT_CAP, seed: int = 0,
                       *, strict: bool = True) -> ExperimentReport:
    """reg of closure(I^n) for n = 1..N with the slope-versus-rho verdict."""
    deg = _degenerate_report(I, N, n_cap, seed, kind="closure-powers")
    if deg is not None:
        return deg
    _monomial_exponents(I)
    region = newton_region(I)
    closures = [closure_of_power(I, n, region) for n in range(1, N + 1)]
    stability = [ideal_equal(closures[n], ideal_product(I, closures[n - 1])) for n in range(1, N)]
    regs = [regularity_ideal(C, seed) for C in closures]
    d_seq = [degree_invariants(C).d for C in closures]
    r, witness, capped = rho(I, n_cap)
    report = ExperimentReport(I.to_strings(), ring_json(I.ring), seed, N, n_cap,
                              reg_sequence=regs, rho=r, witness=witness, rho_capped=capped,
                              kind="closure-powers")
    report.extra["closures"] = [C.to_strings() for C in closures]
    report.extra["stability"] = stability
    report.extra["d_sequence"] = d_seq
    report.extra["newton_region"] = region.to_json()
    report.checks["degree_at_most_reg"] = [d <= g for d, g in zip(d_seq, regs)]
    if capped:
        report.warnings.append(
            f"reduction search hit the cap n_cap = {n_cap}; rho = {r} is an upper bound")
    # the slope verdict needs stability on the fitted part of the window
    tail = fit_linear_tail(regs) if N >= 3 else None
    stable_from = _stable_onset(stability)
    if tail is not None and stable_from is None:
        report.warnings.append("closure stability never holds in the window; no slope verdict")
        tail = None
    report.tail = tail
    report.extra["stability_onset"] = stable_from
    slope_verdict(report)
    if strict and report.failed_checks():
        raise ConsistencyError("failed checks: " + ", ".join(report.failed_checks()), report)
    return report


def _stable_onset(stability: list[bool]) -> int | None:
    """Least n such that stability holds for every n' >= n in the window."""
    if not stability or not stability[-1]:
        return None
    n = len(stability)
    while n > 1 and stability[n - 2]:
        n -= 1
    return n
