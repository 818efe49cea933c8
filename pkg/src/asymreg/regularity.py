"""Castelnuovo-Mumford regularity of R/J through filter-regular sequences.

For a sequence of linear forms z_1..z_s that is filter-regular on R/J and
spans R_+, with K_i = J + (z_1..z_i),

    reg(R/J) = max_i a((K_i : R_+) / K_i),    i = 0..s.

Generic linear forms are obtained by a seeded random change of
coordinates; every step is verified, and a failed verification redraws the
matrix from the next seed.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import (
    Ideal,
    colon_irrelevant,
    colon_poly,
    colon_variable,
    variable_colons,
)
from .hilbert import InfiniteLengthError, a_invariant_pair
from .poly import NEG_INF, Polynomial, PrimeField, Ring

MIN_FIELD_SIZE = 11
MAX_ATTEMPTS = 8


class RegularityError(RuntimeError):
    """No verified filter-regular sequence was found within the retry budget."""


class FieldTooSmallError(ValueError):
    pass


class DegenerateIdealError(ValueError):
    pass


def _det(matrix, field) -> object:
    """Exact determinant by Gaussian elimination."""
    n = len(matrix)
    if isinstance(field, PrimeField):
        p = field.p
        a = [[v % p for v in row] for row in matrix]
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det = det * a[c][c] % p
            inv = pow(a[c][c], -1, p)
            for r in range(c + 1, n):
                f = a[r][c] * inv % p
                if f:
                    a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
        return det % p
    a = [[Fraction(v) for v in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _inverse(matrix, field):
    n = len(matrix)
    a = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = field.inv(a[c][c])
        a[c] = [field.norm(x * inv) for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [field.norm(x - f * y) for x, y in zip(a[r], a[c])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True)
class CoordinateChange:
    """Invertible s x s matrix; variable x_j is sent to sum_k matrix[j][k] x_k."""

    matrix: tuple
    seed: int | None = None

    @classmethod
    def identity(cls, n: int) -> CoordinateChange:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], field=None) -> CoordinateChange:
        rows = tuple(tuple(field.convert(v) if field else v for v in row) for row in rows)
        return cls(rows)

    def images(self, ring: Ring) -> list[Polynomial]:
        gens = ring.gens()
        out = []
        for row in self.matrix:
            acc = ring.zero()
            for c, g in zip(row, gens):
                if c:
                    acc = acc + g * c
            out.append(acc)
        return out

    def determinant(self, field):
        return _det(self.matrix, field)

    def to_json(self) -> dict:
        return {"seed": self.seed, "matrix": [[str(v) for v in row] for row in self.matrix]}


def random_coordinate_change(ring: Ring, seed: int, *, min_field_size: int = MIN_FIELD_SIZE,
                             force: bool = False, max_draws: int = 100) -> CoordinateChange:
    """Seeded random invertible matrix over the ring's field."""
    fld = ring.field
    n = ring.nvars
    if isinstance(fld, PrimeField) and fld.p < min_field_size:
        msg = (f"{fld.name} has fewer than {min_field_size} elements; "
               "generic linear forms may not exist")
        if not force:
            raise FieldTooSmallError(msg)
        warnings.warn(msg, stacklevel=2)
    rng = random.Random(seed)
    for _ in range(max_draws):
        if isinstance(fld, PrimeField):
            rows = tuple(tuple(rng.randrange(fld.p) for _ in range(n)) for _ in range(n))
        else:
            rows = tuple(tuple(rng.randint(-9, 9) for _ in range(n)) for _ in range(n))
        if _det(rows, fld) != 0:
            return CoordinateChange(rows, seed)
    raise RegularityError(f"no invertible matrix found from seed {seed}")


def apply_change(J: Ideal, change: CoordinateChange) -> Ideal:
    """Substitute x_j -> sum_k matrix[j][k] x_k into every generator."""
    ring = J.ring
    if change.determinant(ring.field) == 0:
        raise ValueError("coordinate change is singular")
    images = change.images(ring)
    return Ideal(ring, [g.substitute(images) for g in J.generators], check=False)


def _linear_colon(K: Ideal, z: Polynomial) -> Ideal:
    lm = z.raw
    if len(lm) == 1:
        (m,) = lm
        if sum(m) == 1:
            return colon_variable(K, m.index(1))
    return colon_poly(K, z)


def is_filter_regular_step(K: Ideal, z: Polynomial, colon: Ideal | None = None) -> bool:
    """True iff (K : z)/K has finite length."""
    if z.is_zero():
        raise ValueError("z must be a nonzero linear form")
    if not z.is_homogeneous() or z.degree != 1:
        raise ValueError("z must be a linear form")
    if colon is None:
        colon = _linear_colon(K, z)
    try:
        a_invariant_pair(K, colon)
    except InfiniteLengthError:
        return False
    return True


@dataclass
class RegularityCertificate:
    reg: object
    a_values: list
    change: CoordinateChange | None
    verified: bool
    sequence: list[str] = field(default_factory=list)
    rejected_seeds: list[int] = field(default_factory=list)
    degenerate: str | None = None

    def to_json(self) -> dict:
        enc = lambda v: "-inf" if v == NEG_INF else v
        return {
            "reg": enc(self.reg),
            "a_values": [enc(a) for a in self.a_values],
            "change": self.change.to_json() if self.change else None,
            "verified": self.verified,
            "sequence": self.sequence,
            "rejected_seeds": self.rejected_seeds,
            "degenerate": self.degenerate,
        }


def _sequence_forms(ring: Ring, change: CoordinateChange) -> list[str]:
    """z_1..z_s written in the original coordinates."""
    inv = _inverse(change.matrix, ring.field)
    forms = CoordinateChange(inv).images(ring)
    return [str(forms[j]) for j in range(ring.nvars - 1, -1, -1)]


def _certify(J: Ideal, change: CoordinateChange):
    """Run the a-invariant computation in changed coordinates.

    z_i is the variable x_{s+1-i} of the new coordinates, i.e. the last
    variable first. Returns the a-values, or None if some step is not
    filter-regular.
    """
    ring = J.ring
    s = ring.nvars
    K = apply_change(J, change)
    a_values = []
    for i in range(s + 1):
        colons = variable_colons(K)
        Q = colon_irrelevant(K, colons)
        a_values.append(a_invariant_pair(K, Q))
        if i == s:
            break
        j = s - 1 - i
        z = ring.gen(j)
        if j in colons and not is_filter_regular_step(K, z, colons[j]):
            return None
        K = Ideal(ring, K.groebner() + (z,), check=False)
    return a_values


def regularity_cyclic(J: Ideal, seed: int = 0, *, change: CoordinateChange | None = None,
                      max_attempts: int = MAX_ATTEMPTS, force: bool = False) -> RegularityCertificate:
    """reg(R/J) with a verified certificate.

    With ``change`` given, that matrix is used as is (no redraws). Otherwise
    matrices are drawn from seeds ``seed, seed + 1, ...``.
    """
    ring = J.ring
    if J.is_unit():
        return RegularityCertificate(NEG_INF, [NEG_INF] * (ring.nvars + 1), None, True,
                                     degenerate="unit ideal: R/J = 0")
    if change is not None:
        a_values = _certify(J, change)
        if a_values is None:
            raise RegularityError("supplied coordinate change does not give a filter-regular sequence")
        return RegularityCertificate(max(a_values), a_values, change, True,
                                     _sequence_forms(ring, change))
    rejected = []
    for attempt in range(max_attempts):
        c = random_coordinate_change(ring, seed + attempt, force=force)
        a_values = _certify(J, c)
        if a_values is not None:
            return RegularityCertificate(max(a_values), a_values, c, True,
                                         _sequence_forms(ring, c), rejected)
        rejected.append(seed + attempt)
    raise RegularityError(
        f"no filter-regular sequence after {max_attempts} attempts; use a larger field")


def regularity_ideal(I: Ideal, seed: int = 0, **kw) -> int:
    """reg(I) = reg(R/I) + 1 for nonzero proper I."""
    if I.is_zero():
        raise DegenerateIdealError("zero ideal")
    if I.is_unit():
        raise DegenerateIdealError("unit ideal")
    return regularity_cyclic(I, seed, **kw).reg + 1
