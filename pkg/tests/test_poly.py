from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymreg.poly import (
    GF,
    QQ,
    FieldElement,
    Monomial,
    ParseError,
    Ring,
    RingMismatchError,
    monomial_compare,
    monomial_order,
    parse_polynomial,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gf_vals = st.integers(0, 100)


@pytest.fixture
def R():
    return Ring(["x", "y"], QQ)


class TestFields:
    def test_rationals_lowest_terms(self):
        a = QQ(Fraction(6, -4))
        assert a.value == Fraction(-3, 2)
        assert a.value.denominator > 0

    def test_gf_reduced(self):
        F = GF(7)
        assert F(-1).value == 6
        assert F(Fraction(1, 2)).value == 4
        assert (F(3) * F(5)).value == 1

    def test_gf_rejects_composite(self):
        with pytest.raises(ValueError):
            GF(15)

    def test_gf_division_by_multiple_of_p(self):
        with pytest.raises(ZeroDivisionError):
            GF(5)(Fraction(1, 10))

    @given(rationals, rationals, rationals)
    def test_qq_axioms(self, a, b, c):
        a, b, c = QQ(a), QQ(b), QQ(c)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == 1

    @given(gf_vals, gf_vals, gf_vals)
    def test_gf_axioms(self, a, b, c):
        F = GF(101)
        a, b, c = F(a), F(b), F(c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert 0 <= (a * b - c).value < 101
        if a:
            assert (a * a.inverse()).value == 1
            assert (b / a) * a == b


class TestMonomialOrder:
    def test_grevlex_same_degree(self):
        assert monomial_compare((2, 0), (1, 1), "grevlex") == 1

    def test_grevlex_degree_first(self):
        assert monomial_compare((0, 3), (2, 0), "grevlex") == 1

    def test_lex_ignores_degree(self):
        assert monomial_compare((1, 0), (0, 5), "lex") == 1

    def test_grevlex_three_vars(self):
        # x*z < y^2 in grevlex (x > y > z)
        assert monomial_compare((1, 0, 1), (0, 2, 0), "grevlex") == -1
        assert monomial_compare((1, 0, 1), (0, 2, 0), "grlex") == 1

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            monomial_compare((1, 0), (1, 0, 0))

    @settings(max_examples=200)
    @given(st.sampled_from(["grevlex", "lex", "grlex", ("elim", 1), ("grevlex_last", 0)]),
           st.lists(st.tuples(*[st.integers(0, 4)] * 3), min_size=3, max_size=3))
    def test_order_axioms(self, tag, triple):
        a, b, c = triple
        order = monomial_order(tag)
        cmp = order.compare
        assert cmp(a, b) == -cmp(b, a)
        assert (cmp(a, b) == 0) == (a == b)
        if cmp(a, b) > 0 and cmp(b, c) > 0:
            assert cmp(a, c) > 0
        ac = tuple(x + y for x, y in zip(a, c))
        bc = tuple(x + y for x, y in zip(b, c))
        assert cmp(ac, bc) == cmp(a, b)
        # 1 is the smallest monomial
        if any(a):
            assert cmp(a, (0, 0, 0)) > 0

    def test_monomial_degree(self):
        m = Monomial((2, 0, 3))
        assert m.degree == 5
        assert (m * Monomial((1, 1, 1))).degree == 8


class TestArithmetic:
    def test_difference_of_squares(self, R):
        x, y = R.gens()
        assert (x + y) * (x - y) == x ** 2 - y ** 2

    def test_additive_inverse(self, R):
        f = R("x^2 - 3*x*y + 1/2*y^2")
        assert (f + (-f)).is_zero()

    def test_gf5_product(self):
        R5 = Ring(["x", "y"], GF(5))
        # expand by hand: x^2 + (2 + 3) x y + 6 y^2 = x^2 + 0 x y + 1 y^2 mod 5
        assert R5("x + 2*y") * R5("x + 3*y") == R5("x^2 + y^2")

    def test_ring_mismatch(self, R):
        S = Ring(["x", "y", "z"], QQ)
        with pytest.raises(RingMismatchError):
            R("x") + S("x")

    def test_homogeneity(self, R):
        f, g = R("x^2 + x*y"), R("x - y")
        assert (f * g).is_homogeneous()
        assert (f * g).degree == 3
        assert not R("x + y^2").is_homogeneous()
        assert R.zero().degree == float("-inf")

    def test_terms_descending(self, R):
        f = R("y^3 + x*y + x^3 + 2")
        keys = [R.order.key(tuple(m)) for m, _ in f.terms()]
        assert keys == sorted(keys, reverse=True)
        assert f.lead_monomial() == (3, 0)

    def test_substitute(self, R):
        x, y = R.gens()
        assert R("x^2").substitute([y, x]) == R("y^2")
        assert R("x*y").substitute([x, x + y]) == R("x^2 + x*y")


class TestParse:
    def test_basic(self, R):
        f = parse_polynomial("x^2 + 3*x*y", R)
        assert dict(f.raw) == {(2, 0): 1, (1, 1): 3}

    def test_cancellation(self, R):
        assert parse_polynomial("1/2*x - 1/2*x", R).is_zero()

    def test_unknown_variable(self, R):
        with pytest.raises(ParseError, match="unknown variable z"):
            parse_polynomial("x*z^2", R)

    @pytest.mark.parametrize("text", ["x^", "x**2", "x +", "2/0*x", "3 x", ""])
    def test_malformed(self, R, text):
        with pytest.raises(ParseError):
            parse_polynomial(text, R)

    def test_gf_bad_denominator(self):
        with pytest.raises(ParseError):
            parse_polynomial("1/7*x", Ring(["x"], GF(7)))

    def test_whitespace_and_signs(self, R):
        assert R(" - x ^ 2+ y*x ") == R("x*y - x^2")

    @settings(max_examples=100)
    @given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), rationals, max_size=6))
    def test_round_trip(self, terms):
        R = Ring(["x", "y"], QQ)
        from asymreg.poly import Polynomial

        f = Polynomial(R, terms, normalized=False)
        g = R(str(f))
        assert g == f
        assert str(R(str(g))) == str(g)

    @given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(0, 200), max_size=6))
    def test_round_trip_gf(self, terms):
        from asymreg.poly import Polynomial

        R = Ring(["x", "y"], GF(101))
        f = Polynomial(R, terms, normalized=False)
        assert R(str(f)) == f


def test_field_element_repr():
    assert repr(GF(7)(3)) == "GF(7)(3)"
    assert isinstance(QQ(1), FieldElement)
