import math

import numpy as np
import pytest
import scipy.special

from etkit import ConstantCoupling, DiabaticSystem
from etkit.errors import AccuracyError, NumericalDomainError
from etkit.model import lower_adiabat
from etkit.numerics import (
    Bracket,
    erfc,
    integrate,
    maximize_1d,
    minimize_1d,
    scan_brackets,
)


def adiabat_fn(lam, v, dg0):
    sys = DiabaticSystem(lam, dg0)
    c = ConstantCoupling(v)
    return lambda q: float(lower_adiabat(sys, c, q))


class TestScanBrackets:
    def test_parabola_single_min(self):
        found = scan_brackets(lambda x: x * x, -1.0, 1.0, 11)
        assert len(found) == 1
        br, kind = found[0]
        assert kind == "min"
        assert br.mid == pytest.approx(0.0, abs=1e-12)

    def test_sine_one_max_one_min(self):
        found = scan_brackets(math.sin, 0.0, 2.0 * math.pi, 101)
        kinds = [kind for _br, kind in found]
        assert kinds == ["max", "min"]
        assert found[0][0].mid == pytest.approx(math.pi / 2, abs=0.05)
        assert found[1][0].mid == pytest.approx(3 * math.pi / 2, abs=0.05)

    def test_lower_adiabat_double_well(self):
        # lam=4, V=1, dg0=0: stationary analysis puts the wells at
        # (1 -/+ sqrt(1 - 4V^2/lam^2))/2 and the barrier top at 1/2
        found = scan_brackets(adiabat_fn(4.0, 1.0, 0.0), -0.5, 1.5, 2001)
        mins = [br for br, kind in found if kind == "min"]
        maxs = [br for br, kind in found if kind == "max"]
        assert len(mins) == 2 and len(maxs) == 1
        q_r = (1.0 - math.sqrt(1.0 - 4.0 / 16.0)) / 2.0
        assert mins[0].mid == pytest.approx(q_r, abs=2e-3)
        assert mins[1].mid == pytest.approx(1.0 - q_r, abs=2e-3)
        assert maxs[0].mid == pytest.approx(0.5, abs=2e-3)

    def test_rejects_non_finite(self):
        with pytest.raises(NumericalDomainError):
            scan_brackets(lambda x: 1.0 / x, -1.0, 1.0, 11)

    def test_rejects_bad_grid(self):
        with pytest.raises(ValueError):
            scan_brackets(lambda x: x, 0.0, 1.0, 2)


class TestMinimize:
    def test_shifted_parabola(self):
        res = minimize_1d(
            lambda x: (x - 0.3) ** 2, Bracket(-1.0, 0.0, 1.0), tol_x=1e-10
        )
        assert res.converged
        assert res.x == pytest.approx(0.3, abs=1e-10)

    def test_quartic_flat_minimum(self):
        res = minimize_1d(lambda x: x**4, Bracket(-1.0, 0.3, 1.0))
        assert res.converged
        assert res.x == pytest.approx(0.0, abs=1e-6)

    def test_adiabat_reactant_well(self):
        # closed-form stationary point of the symmetric double well
        res = minimize_1d(
            adiabat_fn(4.0, 1.0, 0.0), Bracket(-0.2, 0.05, 0.4), tol_x=1e-10
        )
        expected = (1.0 - math.sqrt(1.0 - 4.0 / 16.0)) / 2.0
        assert res.x == pytest.approx(expected, abs=1e-8)

    def test_random_convex_quadratics(self):
        rng = np.random.default_rng(20240817)
        for _ in range(1000):
            a = rng.uniform(0.1, 5.0)
            b = rng.uniform(-3.0, 3.0)
            c = rng.uniform(-3.0, 3.0)
            vertex = -b / (2 * a)
            br = Bracket(vertex - 2.0, vertex + rng.uniform(-1.0, 1.0), vertex + 2.0)
            res = minimize_1d(lambda x: a * x * x + b * x + c, br, tol_x=1e-10)
            assert res.converged
            # abscissa accuracy is limited by sqrt(machine eps) near a
            # quadratic minimum, not by tol_x
            assert abs(res.x - vertex) <= 1e-7 * (1.0 + abs(vertex))

    def test_iteration_cap(self):
        res = minimize_1d(
            lambda x: x * x, Bracket(-1.0, 0.1, 1.0), tol_x=1e-10, max_iter=3
        )
        assert not res.converged


class TestMaximize:
    def test_negated_parabola(self):
        res = maximize_1d(lambda x: -(x * x), Bracket(-1.0, 0.2, 1.0))
        assert res.x == pytest.approx(0.0, abs=1e-9)
        assert res.fx == pytest.approx(0.0, abs=1e-15)

    def test_symmetric_adiabat_barrier_top(self):
        res = maximize_1d(
            adiabat_fn(4.0, 1.0, 0.0), Bracket(0.2, 0.4, 0.8), tol_x=1e-10
        )
        assert res.x == pytest.approx(0.5, abs=1e-8)

    def test_tilted_adiabat_barrier_top_is_a_maximum(self):
        f = adiabat_fn(4.0, 1.0, 0.3)
        found = scan_brackets(f, -0.5, 1.5, 2001)
        (br,) = [b for b, kind in found if kind == "max"]
        res = maximize_1d(f, br, tol_x=1e-10)
        h = 1e-4
        second = (f(res.x + h) - 2 * f(res.x) + f(res.x - h)) / (h * h)
        assert second < 0.0

    def test_matches_minimize_of_negation_bitwise(self):
        f = adiabat_fn(4.0, 1.0, 0.3)
        br = Bracket(0.2, 0.5, 0.9)
        res_max = maximize_1d(f, br, tol_x=1e-10)
        res_min = minimize_1d(lambda x: -f(x), br, tol_x=1e-10)
        assert res_max.x == res_min.x
        assert res_max.fx == -res_min.fx
        assert res_max.iterations == res_min.iterations


class TestIntegrate:
    def test_monomial(self):
        assert integrate(lambda x: x * x, 0.0, 1.0) == pytest.approx(
            1.0 / 3.0, abs=1e-10
        )

    def test_gaussian_normalization(self):
        val = integrate(lambda x: math.exp(-x * x / 2), -40.0, 40.0)
        assert val == pytest.approx(math.sqrt(2 * math.pi), abs=1e-8)

    def test_polynomial_exactness_random_cubics(self):
        # Simpson's rule is exact through cubics on any interval
        rng = np.random.default_rng(7)
        for _ in range(50):
            coeffs = rng.uniform(-2.0, 2.0, size=4)
            a = rng.uniform(-3.0, 0.0)
            b = a + rng.uniform(0.5, 4.0)
            exact = sum(
                c * (b ** (k + 1) - a ** (k + 1)) / (k + 1)
                for k, c in enumerate(coeffs)
            )
            got = integrate(
                lambda x: sum(c * x**k for k, c in enumerate(coeffs)), a, b
            )
            assert got == pytest.approx(exact, rel=1e-12, abs=1e-12)

    def test_continuum_integrand_vs_dense_trapezoid(self):
        # Marcus-barrier integrand at lam=4, V=0.5, 300 K, eta=-0.3
        kt = 8.617333262e-5 * 300.0
        b = 1.0 / kt
        lam, eta = 4.0, -0.3
        w = 2 * lam + abs(eta) + 40 * kt

        def f(x):
            occ = 1.0 / (1.0 + math.exp(min(b * x, 700.0)))
            return occ * math.exp(
                max(-b * (lam + eta - x) ** 2 / (4 * lam), -700.0)
            )

        xs = np.linspace(-w, w, 1_000_001)
        occ = 1.0 / (1.0 + np.exp(np.clip(b * xs, -700, 700)))
        dense = np.trapezoid(
            occ * np.exp(np.clip(-b * (lam + eta - xs) ** 2 / (4 * lam), -700, 0)),
            xs,
        )
        adaptive = integrate(f, -w, w, rel_tol=1e-9)
        assert adaptive == pytest.approx(dense, rel=1e-6)

    def test_depth_cap_raises_accuracy_error(self):
        step = lambda x: 0.0 if x < math.pi / 8 else 1.0
        with pytest.raises(AccuracyError) as err:
            integrate(step, 0.0, 1.0, rel_tol=1e-15, max_depth=20)
        assert err.value.best_estimate == pytest.approx(
            1.0 - math.pi / 8, abs=1e-3
        )

    def test_rejects_bad_interval(self):
        with pytest.raises(ValueError):
            integrate(lambda x: x, 1.0, 0.0)


class TestErfc:
    def test_at_zero(self):
        assert erfc(0.0) == 1.0

    def test_reflection_at_three_halves(self):
        assert erfc(-1.5) == pytest.approx(2.0 - erfc(1.5), abs=1e-14)

    def test_pinned_value_at_one(self):
        # mpmath 30-digit evaluation
        assert erfc(1.0) == pytest.approx(0.15729920705028513, rel=1e-13)

    def test_reflection_identity_random(self):
        rng = np.random.default_rng(99)
        for x in rng.uniform(-6.0, 6.0, size=1000):
            assert abs(erfc(float(x)) + erfc(float(-x)) - 2.0) <= 1e-13

    def test_against_scipy_across_range(self):
        for x in np.linspace(-10.0, 10.0, 4001):
            ref = scipy.special.erfc(float(x))
            assert erfc(float(x)) == pytest.approx(ref, rel=5e-13)

    def test_underflow_region(self):
        assert erfc(30.0) == 0.0
        assert erfc(-30.0) == 2.0

    def test_rejects_non_finite(self):
        with pytest.raises(NumericalDomainError):
            erfc(math.nan)


class TestBracket:
    def test_invariant(self):
        with pytest.raises(ValueError):
            Bracket(0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            Bracket(1.0, 0.5, 0.0)
