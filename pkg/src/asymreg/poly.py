"""Exact coefficient fields, monomials, monomial orders and sparse polynomials."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

NEG_INF = float("-inf")


class ParseError(ValueError):
    """Raised for malformed polynomial text or bad ring descriptors."""


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class RationalField:
    """The rational numbers. Raw values are ``int`` or ``Fraction``."""

    name = "QQ"
    characteristic = 0
    size = None

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, value)

    def convert(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        raise TypeError(f"cannot convert {value!r} to QQ")

    @staticmethod
    def norm(value):
        # Fraction already keeps lowest terms; collapse integral values to int
        if type(value) is Fraction and value.denominator == 1:
            return value.numerator
        return value

    @staticmethod
    def div(a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        q = Fraction(a) / b
        return q.numerator if q.denominator == 1 else q

    def inv(self, a):
        return self.div(1, a)

    def to_json(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p. Raw values are ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"GF({p}): modulus is not prime")
        self.p = p

    characteristic = property(lambda self: self.p)
    size = property(lambda self: self.p)

    @property
    def name(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name

    def __call__(self, value) -> FieldElement:
        return FieldElement(self, value)

    def convert(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(
                    f"denominator {value.denominator} is divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot convert {value!r} to {self.name}")

    def norm(self, value):
        return value % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        return a * pow(b, -1, self.p) % self.p

    def inv(self, a):
        return self.div(1, a)

    def to_json(self):
        return {"GF": self.p}


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(spec) -> RationalField | PrimeField:
    """Decode ``"QQ"`` or ``{"GF": p}`` (also accepts ``"GF(p)"``)."""
    if spec in ("QQ", "Q", None):
        return QQ
    if isinstance(spec, Mapping) and "GF" in spec:
        return PrimeField(int(spec["GF"]))
    if isinstance(spec, str):
        m = re.fullmatch(r"\s*GF\(?\s*(\d+)\s*\)?\s*", spec)
        if m:
            return PrimeField(int(m.group(1)))
    raise ParseError(f"unknown coefficient field {spec!r}")


class FieldElement:
    """An element of QQ or GF(p) with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = field.convert(value)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("field mismatch")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.norm(self.value + self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.norm(self.value - self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.norm(self._coerce(other) - self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.norm(self.value * self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._coerce(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.norm(-self.value))

    def __pow__(self, n: int):
        if n < 0:
            return FieldElement(self.field, 1) / self ** (-n)
        r = FieldElement(self.field, 1)
        for _ in range(n):
            r = r * self
        return r

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        try:
            return self.value == self._coerce(other)
        except (TypeError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field.name}({self.value})"


# ---------------------------------------------------------------------------
# Monomials and orders
# ---------------------------------------------------------------------------


class Monomial(tuple):
    """Exponent vector; ``degree`` is the exponent sum."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(exponents)
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        return super().__new__(cls, exps)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def exponents(self) -> tuple:
        return tuple(self)

    def __mul__(self, other):
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def lcm(self, other):
        return Monomial(max(a, b) for a, b in zip(self, other))

    def gcd(self, other):
        return Monomial(min(a, b) for a, b in zip(self, other))


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


class MonomialOrder:
    """A monomial order identified by a tag.

    Tags: ``"grevlex"``, ``"lex"``, ``"grlex"``, ``("elim", k)`` (block order
    eliminating the first ``k`` variables, grevlex inside each block) and
    ``("grevlex_last", j)`` (grevlex with variable ``j`` moved to the end of
    the variable list, so it is the cheapest variable).
    """

    def __init__(self, tag="grevlex"):
        if isinstance(tag, MonomialOrder):
            tag = tag.tag
        if isinstance(tag, list):
            tag = tuple(tag)
        if tag == "grevlex":
            fn = _grevlex_key
        elif tag == "lex":
            fn = tuple
        elif tag == "grlex":
            fn = lambda e: (sum(e),) + tuple(e)
        elif isinstance(tag, tuple) and len(tag) == 2 and tag[0] == "elim":
            k = int(tag[1])
            tag = ("elim", k)
            fn = lambda e: _grevlex_key(e[:k]) + _grevlex_key(e[k:])
        elif isinstance(tag, tuple) and len(tag) == 2 and tag[0] == "grevlex_last":
            j = int(tag[1])
            tag = ("grevlex_last", j)
            fn = lambda e: (sum(e), -e[j]) + tuple(
                -e[i] for i in range(len(e) - 1, -1, -1) if i != j)
        else:
            raise ValueError(f"unknown monomial order {tag!r}")
        self.tag = tag
        self._fn = fn
        self._cache: dict = {}

    @property
    def graded(self) -> bool:
        return self.tag in ("grevlex", "grlex") or self.tag[0] == "grevlex_last"

    def key(self, e):
        """Sort key: larger key means larger monomial."""
        k = self._cache.get(e)
        if k is None:
            k = self._cache[e] = self._fn(e)
        return k

    def compare(self, a, b) -> int:
        if len(a) != len(b):
            raise ValueError("monomials of different length")
        ka, kb = self.key(tuple(a)), self.key(tuple(b))
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"MonomialOrder({self.tag!r})"

    def to_json(self):
        return self.tag if isinstance(self.tag, str) else list(self.tag)


_ORDERS: dict = {}


def monomial_order(tag="grevlex") -> MonomialOrder:
    """Shared order instances, so key caches are reused."""
    if isinstance(tag, MonomialOrder):
        return tag
    if isinstance(tag, list):
        tag = tuple(tag)
    order = _ORDERS.get(tag)
    if order is None:
        order = _ORDERS[tag] = MonomialOrder(tag)
    return order


def monomial_compare(a: Sequence[int], b: Sequence[int], order="grevlex") -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return monomial_order(order).compare(a, b)


# ---------------------------------------------------------------------------
# Rings and polynomials
# ---------------------------------------------------------------------------


class Ring:
    """Standard graded polynomial ring k[x_1..x_s] with a monomial order."""

    def __init__(self, variables: Sequence[str], field=QQ, order="grevlex"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        self.variables = variables
        self.field = field
        self.order = monomial_order(order)
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.variables == other.variables
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"Ring({list(self.variables)}, {self.field!r}, {self.order.tag!r})"

    def with_order(self, order) -> Ring:
        return Ring(self.variables, self.field, order)

    def with_field(self, field) -> Ring:
        return Ring(self.variables, field, self.order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ParseError(f"unknown variable {name}") from None

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.field.convert(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def gen(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exps): self.field.convert(coeff)})

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    __call__ = parse


class Polynomial:
    """Sparse polynomial: a map from exponent tuples to nonzero raw coefficients.

    Treated as immutable once constructed.
    """

    __slots__ = ("ring", "_terms", "_lm")

    def __init__(self, ring: Ring, terms: Mapping, *, normalized: bool = True):
        self.ring = ring
        if normalized:
            self._terms = dict(terms)
        else:
            conv = ring.field.convert
            d = {}
            for m, c in terms.items():
                c = conv(c)
                if c != 0:
                    d[tuple(m)] = c
            self._terms = d
        self._lm = None

    # -- structure ---------------------------------------------------------

    @property
    def raw(self) -> dict:
        """The underlying exponent -> coefficient dict (do not mutate)."""
        return self._terms

    def terms(self) -> list[tuple[Monomial, object]]:
        """Terms in strictly descending monomial order."""
        key = self.ring.order.key
        return [(Monomial(m), self._terms[m])
                for m in sorted(self._terms, key=key, reverse=True)]

    def __iter__(self) -> Iterator:
        return iter(self.terms())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def lead_monomial(self) -> Monomial:
        if self._lm is None:
            if not self._terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self._terms, key=self.ring.order.key)
        return Monomial(self._lm)

    def lead_coefficient(self):
        return self._terms[tuple(self.lead_monomial())]

    @property
    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def monic(self) -> Polynomial:
        if not self._terms:
            return self
        f = self.ring.field
        inv = f.inv(self.lead_coefficient())
        return Polynomial(self.ring, {m: f.norm(c * inv) for m, c in self._terms.items()})

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), 0)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.constant(other)
        if other.ring != self.ring:
            raise RingMismatchError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        norm = self.ring.field.norm
        d = dict(self._terms)
        for m, c in other._terms.items():
            v = norm(d.get(m, 0) + c)
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Polynomial(self.ring, {m: norm(-c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field.convert(other)
            if c == 0:
                return self.ring.zero()
            norm = self.ring.field.norm
            return Polynomial(self.ring, {m: norm(v * c) for m, v in self._terms.items()})
        other = self._check(other)
        return Polynomial(self.ring, mul_terms(self._terms, other._terms, self.ring.field.norm))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Replace variable i by ``images[i]`` (all in one target ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring if images else self.ring
        norm = target.field.norm
        powers: list[list[dict]] = [[{(0,) * target.nvars: 1}] for _ in images]
        out: dict = {}
        for m, c in self._terms.items():
            acc = {(0,) * target.nvars: target.field.convert(c)}
            for i, e in enumerate(m):
                if e:
                    pw = powers[i]
                    while len(pw) <= e:
                        pw.append(mul_terms(pw[-1], images[i].raw, norm))
                    acc = mul_terms(acc, pw[e], norm)
            for mm, cc in acc.items():
                v = norm(out.get(mm, 0) + cc)
                if v:
                    out[mm] = v
                else:
                    out.pop(mm, None)
        return Polynomial(target, out)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def mul_terms(a: Mapping, b: Mapping, norm) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = norm(out.get(m, 0) + ca * cb)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, name, sym = m.groups()
        if num is not None:
            yield ("num", int(num))
        elif name is not None:
            yield ("var", name)
        else:
            yield ("sym", sym)
        pos = m.end()
    yield ("end", None)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``term {(+|-) term}`` with ``term ::= [coeff '*'] factor {'*' factor}``.

    A bare coefficient is accepted as a constant term.
    """
    toks = list(_tokens(text))
    pos = 0
    field = ring.field
    nv = ring.nvars

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        return tok

    def parse_term(sign):
        exps = [0] * nv
        coeff = Fraction(sign)
        kind, val = peek()
        if kind == "num":
            take()
            num = val
            den = 1
            if peek() == ("sym", "/"):
                take()
                kind, den = take()
                if kind != "num":
                    raise ParseError(f"malformed coefficient in {text!r}")
                if den == 0:
                    raise ParseError("zero denominator")
            coeff *= Fraction(num, den)
            if peek() != ("sym", "*"):
                return exps, coeff
            take()
        while True:
            kind, val = take()
            if kind != "var":
                raise ParseError(f"expected a variable in {text!r}, got {val!r}")
            i = ring.index(val)
            e = 1
            if peek() == ("sym", "^"):
                take()
                kind, e = take()
                if kind != "num":
                    raise ParseError(f"malformed exponent in {text!r}")
            exps[i] += e
            if peek() == ("sym", "*"):
                take()
                continue
            return exps, coeff

    if peek()[0] == "end":
        raise ParseError("empty polynomial")
    acc: dict = {}
    sign = 1
    if peek() in (("sym", "-"), ("sym", "+")):
        sign = -1 if take()[1] == "-" else 1
    while True:
        exps, coeff = parse_term(sign)
        try:
            c = field.convert(coeff)
        except ZeroDivisionError as exc:
            raise ParseError(str(exc)) from None
        m = tuple(exps)
        v = field.norm(acc.get(m, 0) + c)
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
        kind, val = take()
        if kind == "end":
            break
        if kind == "sym" and val in "+-":
            sign = -1 if val == "-" else 1
            continue
        raise ParseError(f"unexpected {val!r} in {text!r}")
    return Polynomial(ring, acc)


def _format_coeff(c, field) -> tuple[int, str]:
    """Return (sign, magnitude text) of a raw coefficient."""
    if isinstance(field, PrimeField):
        return 1, str(c)
    q = Fraction(c)
    sign = -1 if q < 0 else 1
    q = abs(q)
    return sign, str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_monomial(exps, variables) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for m, c in f.terms():
        sign, mag = _format_coeff(c, f.ring.field)
        mono = format_monomial(m, f.ring.variables)
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if sign < 0 else "") + body)
        else:
            out.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(out)
