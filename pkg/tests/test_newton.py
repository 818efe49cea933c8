import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from asymreg.corpus import eliahou_kervaire_reg, random_monomial_ideals
from asymreg.groebner import Ideal, ideal_power, ideal_product
from asymreg.newton import (
    NotMonomialError,
    check_closure_stability,
    closure_experiment,
    closure_of_power,
    fourier_motzkin,
    integral_closure_monomial,
    lattice_generators,
    newton_region,
    newton_region_from_points,
)
from asymreg.poly import GF, QQ, Ring
from asymreg.reductions import rho

F = GF(32003)


@pytest.fixture
def R():
    return Ring(["x", "y"], F)


def hull_contains_lp(points, p):
    """Feasibility of lambda >= 0, sum lambda = 1, sum lambda v <= p (floating LP)."""
    V = np.array(points, dtype=float).T
    m = V.shape[1]
    res = linprog(np.zeros(m), A_ub=V, b_ub=np.array(p, dtype=float) + 1e-9,
                  A_eq=np.ones((1, m)), b_eq=[1.0], bounds=[(0, None)] * m, method="highs")
    return res.status == 0


def halfspace_set(region):
    return {(h.normal, h.offset) for h in region.halfspaces}


def exps(I):
    return [next(iter(g.raw)) for g in I.generators]


class TestRegion:
    def test_segment(self, R):
        region = newton_region(Ideal(R, ["x^2", "y^3"]))
        assert halfspace_set(region) == {((1, 0), 0), ((0, 1), 0), ((3, 2), 6)}

    def test_principal(self, R):
        region = newton_region(Ideal(R, ["x"]))
        assert halfspace_set(region) == {((1, 0), 1), ((0, 1), 0)}

    def test_diagonal(self, R):
        region = newton_region(Ideal(R, ["x^4", "y^4"]))
        assert halfspace_set(region) == {((1, 0), 0), ((0, 1), 0), ((1, 1), 4)}

    def test_non_monomial(self, R):
        with pytest.raises(NotMonomialError, match="monomial ideals only"):
            newton_region(Ideal(R, ["x^2 - y^2"]))

    def test_monomial_ideal_given_by_binomials(self, R):
        # (x^2 + xy, xy) is the monomial ideal (x^2, xy)
        region = newton_region(Ideal(R, ["x^2 + x*y", "x*y"]))
        assert set(region.vertices) == {(1, 1), (2, 0)}

    def test_fourier_motzkin_simple(self):
        # x - t >= 0, t - 1 >= 0  =>  x - 1 >= 0
        assert fourier_motzkin([(1, -1, 0), (0, 1, -1)], 1) == [(1, -1)]

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
                    min_size=1, max_size=5))
    def test_region_invariants(self, pts):
        pts = [p for p in pts if any(p)] or [(1, 0, 0)]
        region = newton_region_from_points(pts)
        for v in region.vertices:
            assert region.contains(v)
        for h in region.halfspaces:
            coord = sum(1 for c in h.normal if c) == 1
            tight = min(h.value(v) for v in region.vertices) == h.offset
            assert coord or tight
        box = [max(v[k] for v in region.vertices) + 1 for k in range(3)]
        for p in itertools.product(*(range(b + 1) for b in box)):
            assert region.contains(p) == hull_contains_lp(region.vertices, p), p

    def test_lp_agreement_two_vars(self):
        for I in random_monomial_ideals(12, seed=3):
            region = newton_region(I)
            box = [max(v[k] for v in region.vertices) + 2 for k in range(I.ring.nvars)]
            for p in itertools.product(*(range(b) for b in box)):
                assert region.contains(p) == hull_contains_lp(region.vertices, p)

    def test_dilation(self, R):
        region = newton_region(Ideal(R, ["x^2", "y^3"])).dilate(2)
        assert ((3, 2), 12) in halfspace_set(region)

    def test_json(self, R):
        js = newton_region(Ideal(R, ["x^2", "y^3"])).to_json()
        assert {"normal": [3, 2], "offset": "6"} in js["halfspaces"]


class TestClosure:
    def test_examples(self, R):
        assert integral_closure_monomial(Ideal(R, ["x^2", "y^3"])) == Ideal(R, ["x^2", "x*y^2", "y^3"])
        assert integral_closure_monomial(Ideal(R, ["x^4", "y^4"])) == Ideal(R, ["x", "y"]) ** 4
        assert integral_closure_monomial(Ideal(R, ["x"])) == Ideal(R, ["x"])

    def test_power_two(self, R):
        I = Ideal(R, ["x^2", "y^3"])
        C = closure_of_power(I, 2)
        assert C == integral_closure_monomial(ideal_power(I, 2))
        # every generator lies on or above 3a + 2b = 12, and is minimal there
        gens = exps(C)
        assert all(3 * a + 2 * b >= 12 for a, b in gens)
        assert sorted(gens) == [(0, 6), (1, 5), (2, 3), (3, 2), (4, 0)]

    def test_first_power_and_maximal(self, R):
        I = Ideal(R, ["x^2", "x*y^3"])
        assert closure_of_power(I, 1) == integral_closure_monomial(I)
        m = Ideal(R, ["x", "y"])
        for n in range(1, 5):
            assert closure_of_power(m, n) == m ** n

    def test_bad_n(self, R):
        with pytest.raises(ValueError):
            closure_of_power(Ideal(R, ["x"]), 0)

    def test_corpus_laws(self):
        for I in random_monomial_ideals(12):
            C = integral_closure_monomial(I)
            assert C.contains_ideal(I)
            assert integral_closure_monomial(C) == C
            closures = {n: closure_of_power(I, n) for n in (1, 2, 3)}
            for n in (1, 2, 3):
                assert closures[n].contains_ideal(ideal_power(I, n))
                assert closures[n] == integral_closure_monomial(ideal_power(I, n))
            assert closures[3].contains_ideal(ideal_product(closures[1], closures[2]))

    def test_power_membership_oracle(self):
        # m lies in the closure of I iff m^k lies in I^k for some k
        for I in random_monomial_ideals(8, seed=19, max_deg=3):
            if I.ring.nvars != 2:
                continue
            region = newton_region(I)
            powers = [ideal_power(I, k) for k in range(1, 13)]
            box = [max(v[k] for v in region.vertices) + 1 for k in range(2)]
            for p in itertools.product(*(range(b + 1) for b in box)):
                found = any(powers[k - 1].contains(I.ring.monomial([k * a for a in p]))
                            for k in range(1, 13))
                assert found == region.contains(p), (I, p)

    def test_power_membership_oracle_three_vars(self):
        R3 = Ring(["x", "y", "z"], F)
        I = Ideal(R3, ["x^2", "y^2", "z^2"])
        powers = [ideal_power(I, k) for k in range(1, 7)]
        region = newton_region(I)
        for p in itertools.product(range(3), repeat=3):
            found = any(powers[k - 1].contains(R3.monomial([k * a for a in p])) for k in range(1, 7))
            assert found == region.contains(p)

    def test_lattice_generators_minimal(self):
        for I in random_monomial_ideals(10, seed=5):
            gens = lattice_generators(newton_region(I))
            for a, b in itertools.permutations(gens, 2):
                assert not all(x <= y for x, y in zip(a, b))


class TestStability:
    def test_examples(self, R):
        assert all(check_closure_stability(Ideal(R, ["x", "y"]), 4))
        assert all(check_closure_stability(Ideal(R, ["x^4", "y^4"]), 4))
        flags = check_closure_stability(Ideal(R, ["x^2", "y^3"]), 4)
        assert len(flags) == 3 and flags[-1]

    def test_bad_N(self, R):
        with pytest.raises(ValueError):
            check_closure_stability(Ideal(R, ["x"]), 1)


class TestClosureExperiment:
    def test_x2_y3(self, R):
        rep = closure_experiment(Ideal(R, ["x^2", "y^3"]), 4)
        assert rep.rho == 3 and not rep.rho_capped
        assert rep.tail is not None and rep.tail.slope == 3
        assert rep.checks["slope_equals_rho"] is True
        assert sorted(rep.extra["closures"][0]) == ["x*y^2", "x^2", "y^3"]

    def test_maximal(self, R):
        rep = closure_experiment(Ideal(R, ["x", "y"]), 4)
        assert rep.reg_sequence == [1, 2, 3, 4]
        assert (rep.tail.slope, rep.tail.intercept) == (1, 0)

    def test_flagship(self):
        R3 = Ring(["x", "y", "z"], F)
        rep = closure_experiment(Ideal(R3, ["x^2", "y^2", "z^2", "x*y*z"]), 4)
        assert rep.rho == 2
        if rep.tail is not None:
            assert rep.tail.slope == 2

    def test_closures_are_strongly_stable_for_maximal_powers(self):
        R3 = Ring(["x", "y", "z"], QQ)
        rep = closure_experiment(Ideal(R3, ["x", "y", "z"]), 3)
        ek = [eliahou_kervaire_reg(exps(closure_of_power(Ideal(R3, ["x", "y", "z"]), n))) for n in (1, 2, 3)]
        assert rep.reg_sequence == ek

    def test_non_monomial(self, R):
        with pytest.raises(NotMonomialError):
            closure_experiment(Ideal(R, ["x^2 - y^2"]), 3)

    def test_slope_matches_adic(self, R):
        from asymreg.reductions import run_experiment

        I = Ideal(R, ["x^2", "y^3"])
        a = run_experiment(I, 4)
        c = closure_experiment(I, 4)
        assert a.tail.slope == c.tail.slope == rho(I)[0]
