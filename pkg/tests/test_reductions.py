import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymreg.corpus import eliahou_kervaire_reg, small_monomial_ideals, standard_corpus
from asymreg.groebner import Ideal, ideal_power, ideal_product, unit_ideal, zero_ideal
from asymreg.hilbert import degree_invariants
from asymreg.poly import GF, QQ, Ring
from asymreg.reductions import (
    ConsistencyError,
    ExperimentReport,
    LinearTail,
    certify_non_reduction,
    fit_linear_tail,
    ideal_powers,
    is_reduction,
    reg_powers,
    rho,
    run_experiment,
    slope_verdict,
    truncate_ideal,
)

F = GF(32003)


@pytest.fixture
def R():
    return Ring(["x", "y"], QQ)


@pytest.fixture
def R3():
    return Ring(["x", "y", "z"], F)


class TestTruncation:
    def test_examples(self, R):
        assert truncate_ideal(Ideal(R, ["x^2", "x*y", "y^3"]), 2) == Ideal(R, ["x^2", "x*y"])
        assert truncate_ideal(Ideal(R, ["x^2", "x*y"]), 1).is_zero()

    def test_truncation_can_equal_ideal(self, R):
        I = Ideal(R, ["x^2 - y^2", "x*y", "y^3"])
        T = truncate_ideal(I, 2)
        assert T.contains("y^3")
        assert T == I

    def test_graded_pieces_agree(self):
        # (I_{<=d})_e = I_e for e <= d, compared through the Hilbert function
        from asymreg.hilbert import hilbert_function

        for I in standard_corpus():
            for d in range(1, 4):
                T = truncate_ideal(I, d)
                for e in range(d + 1):
                    assert hilbert_function(T, e) == hilbert_function(I, e)

    def test_negative(self, R):
        with pytest.raises(ValueError):
            truncate_ideal(Ideal(R, ["x"]), -1)


class TestIsReduction:
    def test_monomial_example(self, R3):
        I = Ideal(R3, ["x^2", "y^2", "z^2", "x*y*z"])
        J = Ideal(R3, ["x^2", "y^2", "z^2"])
        assert is_reduction(J, I) == 1
        # independent check of the defining equality by brute-force products
        I2 = Ideal(R3, [f * g for f in I.generators for g in I.generators])
        JI = Ideal(R3, [f * g for f in J.generators for g in I.generators])
        assert I2 == JI

    def test_identity(self, R):
        I = Ideal(R, ["x^2", "x*y"])
        assert is_reduction(I, I) == 0

    def test_non_reduction(self, R):
        I = Ideal(R, ["x^2", "x*y", "y^3"])
        J = Ideal(R, ["x^2", "x*y"])
        assert is_reduction(J, I, 4) is None
        assert certify_non_reduction(J, I)
        # divisibility argument: y^(3(n+1)) lies in I^(n+1) but not in J I^n
        for n in range(4):
            assert not ideal_product(J, ideal_power(I, n)).contains(R.gen(1) ** (3 * (n + 1)))

    def test_not_contained(self, R):
        with pytest.raises(ValueError):
            is_reduction(Ideal(R, ["y"]), Ideal(R, ["x"]))

    def test_non_monomial_reduction(self, R):
        # (x^2, y^2) is a reduction of (x, y)^2: (x,y)^4 = (x^2,y^2)(x,y)^2
        I = Ideal(R, ["x^2", "x*y", "y^2"])
        assert is_reduction(Ideal(R, ["x^2", "y^2"]), I) == 1
        assert is_reduction(Ideal(R, ["x^2 + y^2", "x*y"]), I) == 1


class TestRho:
    def test_examples(self, R, R3):
        r, w, capped = rho(Ideal(R3, ["x^2", "y^2", "z^2", "x*y*z"]))
        assert (r, w.n, capped) == (2, 1, False)
        assert w.J == Ideal(R3, ["x^2", "y^2", "z^2"])
        assert rho(Ideal(R, ["x^2", "x*y"]))[0] == 2
        r, w, capped = rho(Ideal(R, ["x^2", "x*y", "y^3"]))
        assert (r, capped) == (3, False)
        assert w.excluded == [2]

    def test_cap_zero_reports_capped(self, R3):
        r, w, capped = rho(Ideal(R3, ["x^2", "y^2", "z^2", "x*y*z"]), 0)
        assert (r, capped) == (3, True)

    def test_degenerate(self, R):
        with pytest.raises(ValueError):
            rho(unit_ideal(R))
        with pytest.raises(ValueError):
            rho(zero_ideal(R))

    def test_bounds(self):
        ideals = standard_corpus() + small_monomial_ideals(3, 3, count=10, seed=8)
        for I in ideals:
            if I.is_unit():
                continue
            inv = degree_invariants(I)
            r, w, _ = rho(I)
            assert inv.epsilon <= r <= inv.d
            assert w.d_J == r
            assert I.contains_ideal(w.J)

    def test_degree_lower_bound(self):
        # d(I^n) >= rho n (the module is R, whose initial degree is 0)
        for I in standard_corpus():
            if I.is_unit():
                continue
            r, _, capped = rho(I)
            if capped:
                continue
            for n, P in enumerate(ideal_powers(I, 3), 1):
                assert degree_invariants(P).d >= r * n

    def test_degree_lower_bound_is_sharp(self, R):
        # (x^2, xy): d(I^n) = 2n exactly, so no positive shift such as epsilon(I) can be added
        I = Ideal(R, ["x^2", "x*y"])
        eps = degree_invariants(I).epsilon
        for n, P in enumerate(ideal_powers(I, 4), 1):
            assert degree_invariants(P).d == 2 * n < 2 * n + eps


class TestPowers:
    def test_maximal_ideal(self, R):
        assert reg_powers(Ideal(R, ["x", "y"]), 4) == [1, 2, 3, 4]

    def test_strongly_stable_powers(self, R):
        I = Ideal(R, ["x^2", "x*y"])
        seq = reg_powers(I, 4)
        # I^n is strongly stable; its regularity is the largest generator degree
        ek = [eliahou_kervaire_reg([next(iter(g.raw)) for g in P.generators]) for P in ideal_powers(I, 4)]
        assert seq == ek == [2, 4, 6, 8]

    def test_bad_N(self, R):
        with pytest.raises(ValueError):
            reg_powers(Ideal(R, ["x"]), 0)

    def test_powers_incremental(self, R):
        I = Ideal(R, ["x^2 - y^2", "x*y"])
        for n, P in enumerate(ideal_powers(I, 3), 1):
            assert P == ideal_power(I, n)


class TestTail:
    def test_examples(self):
        assert fit_linear_tail([2, 4, 6, 8]) == LinearTail(2, 0, 1)
        assert fit_linear_tail([3, 4, 6, 8, 10]) == LinearTail(2, 0, 2)
        assert fit_linear_tail([1, 3, 4]) is None
        assert fit_linear_tail([1, 2]) is None

    @given(st.lists(st.integers(-50, 50), max_size=6), st.integers(-5, 5), st.integers(-20, 20),
           st.integers(3, 6))
    def test_suffix_property(self, prefix, d, e, length):
        n_start = len(prefix) + 1
        tail = [d * n + e for n in range(n_start, n_start + length)]
        fit = fit_linear_tail(prefix + tail)
        assert fit is not None
        assert (fit.slope, fit.intercept) == (d, e)
        assert fit.onset <= n_start
        seq = prefix + tail
        for n in range(fit.onset, len(seq) + 1):
            assert seq[n - 1] == fit.slope * n + fit.intercept

    @given(st.lists(st.integers(-20, 20), min_size=3, max_size=8))
    def test_fit_is_longest(self, seq):
        fit = fit_linear_tail(seq)
        if fit is None:
            return
        if fit.onset > 1:
            n = fit.onset - 1
            assert seq[n - 1] != fit.slope * n + fit.intercept


class TestExperiment:
    def test_x2_xy(self, R):
        rep = run_experiment(Ideal(R, ["x^2", "x*y"]), 5)
        assert rep.reg_sequence == [2, 4, 6, 8, 10]
        assert rep.rho == 2 and not rep.rho_capped
        assert rep.tail == LinearTail(2, 0, 1)
        assert rep.stabilized
        assert not rep.failed_checks()

    def test_maximal_ideal(self, R3):
        rep = run_experiment(Ideal(R3, ["x", "y", "z"]), 4)
        assert rep.rho == 1
        assert rep.tail == LinearTail(1, 0, 1)

    def test_flagship(self, R3):
        rep = run_experiment(Ideal(R3, ["x^2", "y^2", "z^2", "x*y*z"]), 4)
        assert rep.rho == 2
        assert rep.witness.n == 1
        assert rep.tail is not None and rep.tail.slope == 2
        assert rep.checks["slope_equals_rho"] is True
        assert rep.checks["slope_at_most_d_J"] is True

    def test_degenerate(self, R):
        rep = run_experiment(unit_ideal(R), 3)
        assert rep.degenerate
        assert rep.to_json()["degenerate"]

    def test_capped_downgrade(self, R3):
        rep = run_experiment(Ideal(R3, ["x^2", "y^2", "z^2", "x*y*z"]), 4, n_cap=0)
        assert rep.rho_capped and rep.rho == 3
        assert rep.checks["slope_equals_rho"] is None
        assert rep.checks["slope_at_most_rho"] is True
        assert any("cap" in w for w in rep.warnings)

    def test_report_json(self, R):
        js = run_experiment(Ideal(R, ["x^2", "x*y"]), 4).to_json()
        assert js["tail_status"] == "tail observed"
        assert js["tail"] == {"d": 2, "e": 0, "n0": 1}
        short = run_experiment(Ideal(R, ["x^2", "x*y"]), 2).to_json()
        assert short["tail_status"] == "tail not stabilized"

    def test_failed_check_is_hard(self, R):
        rep = run_experiment(Ideal(R, ["x^2", "x*y"]), 4)
        bad = ExperimentReport(rep.ideal, rep.ring, 0, 4, 6, [2, 5, 8, 11], rep.rho, rep.witness,
                               False, fit_linear_tail([2, 5, 8, 11]))
        slope_verdict(bad)
        assert "slope_equals_rho" in bad.failed_checks()
        assert isinstance(ConsistencyError("x", bad), AssertionError)
