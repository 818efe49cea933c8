"""Reductions, the minimal reduction degree rho(I), and the reg(I^n) experiment."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import Ideal, ideal_equal, ideal_power, ideal_product
from .hilbert import degree_invariants
from .poly import NEG_INF
from .regularity import regularity_ideal

log = logging.getLogger(__name__)

DEFAULT_CAP = 6


class ConsistencyError(AssertionError):
    """A check that must hold for any correct implementation failed."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def truncate_ideal(I: Ideal, dmax: int) -> Ideal:
    """Ideal generated by the homogeneous elements of I of degree <= dmax.

    Reduced GB elements of degree <= dmax suffice: every element of I of
    degree e reduces to zero using basis elements of degree <= e only.
    """
    if dmax < 0:
        raise ValueError("dmax must be non-negative")
    return Ideal(I.ring, [g for g in I.groebner() if g.degree <= dmax], check=False)


def is_reduction(J: Ideal, I: Ideal, n_cap: int = DEFAULT_CAP) -> int | None:
    """Smallest n <= n_cap with I^(n+1) = J I^n, or None.

    None only means no witness was found up to the cap.
    """
    if not I.contains_ideal(J):
        raise ValueError("J is not contained in I")
    if n_cap < 0:
        raise ValueError("n_cap must be non-negative")
    power = None  # I^n, starting at I^0 = R
    for n in range(n_cap + 1):
        nxt = Ideal(I.ring, I.groebner(), check=False) if power is None else ideal_product(power, I)
        lhs = nxt
        rhs = J if power is None else ideal_product(J, power)
        if ideal_equal(lhs, rhs):
            return n
        power = nxt
    return None


@dataclass
class ReductionWitness:
    J: Ideal
    n: int
    d_J: int
    # truncation degrees below d_J proven not to give reductions
    excluded: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"generators": self.J.to_strings(), "n": self.n, "d_J": self.d_J,
                "certified_non_reductions": self.excluded}


def certify_non_reduction(J: Ideal, I: Ideal) -> bool:
    """True when J is provably not a reduction of I.

    Only monomial ideals are decided: there J is a reduction exactly when
    both share the integral closure, i.e. every generator of I lies in the
    Newton polyhedron of J.
    """
    from .newton import MAX_VARS, newton_region

    if I.ring.nvars > MAX_VARS or J.is_zero():
        return False
    if not (all(g.is_monomial() for g in I.generators) and all(g.is_monomial() for g in J.generators)):
        return False
    region = newton_region(J)
    return not all(region.contains(next(iter(g.raw))) for g in I.generators)


def rho(I: Ideal, n_cap: int = DEFAULT_CAP) -> tuple[int, ReductionWitness, bool]:
    """(rho, witness, capped): the least d such that I_{<=d} is a reduction of I.

    When ``capped`` is true some smaller truncation was inconclusive at the
    cap (and not excluded by :func:`certify_non_reduction`), so the value is
    only an upper bound.
    """
    if I.is_zero() or I.is_unit():
        raise ValueError("rho needs a nonzero proper ideal")
    inv = degree_invariants(I)
    capped = False
    excluded = []
    for d in range(inv.epsilon, inv.d + 1):
        T = truncate_ideal(I, d)
        if T.is_zero():
            continue
        n = is_reduction(T, I, n_cap)
        if n is not None:
            dT = degree_invariants(T).d
            return dT, ReductionWitness(T, n, dT, excluded), capped
        if certify_non_reduction(T, I):
            excluded.append(d)
            continue
        capped = True
        log.debug("truncation at degree %d: no reduction witness up to n = %d", d, n_cap)
    raise AssertionError("I itself is always a reduction")  # pragma: no cover


def ideal_powers(I: Ideal, N: int) -> list[Ideal]:
    """[I^1, ..., I^N], each built from the previous one."""
    out = []
    P = None
    for _ in range(N):
        P = Ideal(I.ring, I.groebner(), check=False) if P is None else ideal_product(P, I)
        out.append(P)
    return out


def reg_powers(I: Ideal, N: int, seed: int = 0, powers: Sequence[Ideal] | None = None) -> list[int]:
    if N < 1:
        raise ValueError("N must be at least 1")
    if powers is None:
        powers = ideal_powers(I, N)
    return [regularity_ideal(P, seed) for P in powers[:N]]


@dataclass(frozen=True)
class LinearTail:
    slope: int
    intercept: int
    onset: int

    def to_json(self) -> dict:
        return {"d": self.slope, "e": self.intercept, "n0": self.onset}


def fit_linear_tail(seq: Sequence[int], min_points: int = 3) -> LinearTail | None:
    """Longest suffix (>= min_points values) with constant differences.

    ``seq[k]`` is the value at n = k + 1.
    """
    seq = list(seq)
    if len(seq) < min_points:
        return None
    diff = seq[-1] - seq[-2]
    start = len(seq) - 2
    while start > 0 and seq[start] - seq[start - 1] == diff:
        start -= 1
    if len(seq) - start < min_points:
        return None
    n0 = start + 1
    return LinearTail(diff, seq[start] - diff * n0, n0)


def _enc(v):
    return "-inf" if v == NEG_INF else v


@dataclass
class ExperimentReport:
    ideal: list[str]
    ring: dict
    seed: int
    N: int
    n_cap: int
    reg_sequence: list = field(default_factory=list)
    rho: int | None = None
    witness: ReductionWitness | None = None
    rho_capped: bool = False
    tail: LinearTail | None = None
    checks: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    degenerate: str | None = None
    kind: str = "powers"
    extra: dict = field(default_factory=dict)

    @property
    def stabilized(self) -> bool:
        return self.tail is not None

    def failed_checks(self) -> list[str]:
        bad = []
        for name, val in self.checks.items():
            if isinstance(val, list):
                bad += [f"{name}[n={i + 1}]" for i, v in enumerate(val) if v is False]
            elif val is False:
                bad.append(name)
        return bad

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ideal": self.ideal,
            "ring": self.ring,
            "seed": self.seed,
            "N": self.N,
            "n_cap": self.n_cap,
            "reg_sequence": [_enc(v) for v in self.reg_sequence],
            "rho": self.rho,
            "rho_witness": self.witness.to_json() if self.witness else None,
            "rho_capped": self.rho_capped,
            "tail": self.tail.to_json() if self.tail else None,
            "tail_status": "tail observed" if self.tail else "tail not stabilized",
            "stabilized": self.stabilized,
            "checks": self.checks,
            "warnings": self.warnings,
            "degenerate": self.degenerate,
            **self.extra,
        }


def ring_json(ring) -> dict:
    return {"variables": list(ring.variables), "coefficients": ring.field.to_json(),
            "order": ring.order.to_json()}


def _degenerate_report(I: Ideal, N, n_cap, seed, kind="powers") -> ExperimentReport | None:
    if I.is_zero():
        why = "zero ideal: every power is zero"
    elif I.is_unit():
        why = "unit ideal: every power is the unit ideal"
    else:
        return None
    return ExperimentReport(I.to_strings(), ring_json(I.ring), seed, N, n_cap,
                            degenerate=why, kind=kind)


def slope_verdict(report: ExperimentReport) -> None:
    """Fill tail-related checks from report.tail, rho and the witness."""
    tail = report.tail
    if tail is None:
        report.checks["slope_equals_rho"] = None
        report.checks["intercept_nonnegative"] = None
        report.checks["slope_at_most_d_J"] = None
        return
    if report.rho_capped:
        report.checks["slope_equals_rho"] = None
        report.checks["slope_at_most_rho"] = tail.slope <= report.rho
        report.warnings.append("rho is a capped upper bound; only slope <= rho is checked")
    else:
        report.checks["slope_equals_rho"] = tail.slope == report.rho
    report.checks["intercept_nonnegative"] = tail.intercept >= 0
    report.checks["slope_at_most_d_J"] = tail.slope <= report.witness.d_J


def run_experiment(I: Ideal, N: int = 5, n_cap: int = DEFAULT_CAP, seed: int = 0,
                   *, strict: bool = True) -> ExperimentReport:
    """reg(I^n) for n = 1..N, rho(I), the fitted tail and all consistency checks.

    With ``strict`` a failed check raises ConsistencyError (report attached).
    """
    deg = _degenerate_report(I, N, n_cap, seed)
    if deg is not None:
        return deg
    r, witness, capped = rho(I, n_cap)
    powers = ideal_powers(I, N)
    regs = reg_powers(I, N, seed, powers)
    d_powers = [degree_invariants(P).d for P in powers]
    report = ExperimentReport(I.to_strings(), ring_json(I.ring), seed, N, n_cap,
                              reg_sequence=regs, rho=r, witness=witness, rho_capped=capped)
    report.extra["d_sequence"] = d_powers
    if capped:
        report.warnings.append(
            f"reduction search hit the cap n_cap = {n_cap}; rho = {r} is an upper bound")
        report.checks["degree_lower_bound"] = None
    else:
        # d(I^n) >= rho * n + epsilon(R), epsilon(R) = 0
        report.checks["degree_lower_bound"] = [d >= r * n for n, d in enumerate(d_powers, 1)]
    report.checks["degree_at_most_reg"] = [d <= g for d, g in zip(d_powers, regs)]
    report.tail = fit_linear_tail(regs) if N >= 3 else None
    slope_verdict(report)
    if strict and report.failed_checks():
        raise ConsistencyError("failed checks: " + ", ".join(report.failed_checks()), report)
    return report
