import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from casimir.analyzers.abelplana import (
    abel_plana_difference,
    abel_plana_pressure,
    bose_integral,
    bose_integral_closed_form,
    find_repulsive_window,
    ir_truncated_pressure,
    shifted_distance_factor,
    tanh_pressure,
)
from casimir.analyzers.asymptotics import fit_decay, fit_power_law
from casimir.analyzers.cutoffs import mode_function
from casimir.analyzers.modesum import sum_minus_integral
from casimir.config.cutoff_config import CutoffSpec
from casimir.config.numerics_config import IDEAL_PRESSURE
from casimir.exceptions import (
    DomainError,
    EvaluationError,
    ParameterError,
    UnsupportedCutoffError,
    UnsupportedOrderError,
)
from casimir.models.params import ReducedParams
from casimir.models.results import PressureMethod

EXP = CutoffSpec.exponential()
PI = math.pi


class TestBoseIntegrals:

    @pytest.mark.parametrize("n, expected", [
        (1, 1 / 24),
        (3, 1 / 240),
        (5, 1 / 504),
        (7, 1 / 480),
        (9, 1 / 264),
    ])
    def test_odd_orders(self, n, expected):
        assert bose_integral(n) == pytest.approx(expected, rel=1e-12)
        assert bose_integral_closed_form(n) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_even_orders_match_zeta(self, n):
        assert bose_integral(n) == pytest.approx(bose_integral_closed_form(n), rel=1e-12)

    @pytest.mark.parametrize("n", [0, 10, 1.0, True])
    def test_order_range(self, n):
        with pytest.raises(UnsupportedOrderError):
            bose_integral(n)


class TestIRTruncatedPressure:

    def test_no_truncation(self):
        result = ir_truncated_pressure(0.0)
        assert result.reduced_pressure == IDEAL_PRESSURE
        assert result.deviation == 0.0
        assert result.method is PressureMethod.CLOSED_FORM

    def test_polynomial(self):
        alpha = 1.0
        assert ir_truncated_pressure(alpha).reduced_pressure == pytest.approx(
            -PI ** 2 / 240 + 1 / 8 - 1 / (4 * PI), rel=1e-14)

    @pytest.mark.parametrize("alpha", [-0.1, math.nan, math.inf])
    def test_domain(self, alpha):
        with pytest.raises(DomainError):
            ir_truncated_pressure(alpha)


class TestAbelPlanaDifference:

    def test_zero_function(self):
        assert abel_plana_difference(lambda z: 0 * z, 0.0) == 0.0

    def test_finite_range_cubic(self):
        # Σ_{j=0}^{3} j³ - ∫_0^3 j³ = 36 - 81/4
        assert abel_plana_difference(lambda z: z ** 3, 0.0, 3.0) == pytest.approx(15.75, rel=1e-12)

    @pytest.mark.parametrize("kappa", [0.0, 0.25, 0.7])
    def test_cubic_gives_hurwitz_value(self, kappa):
        expected = 1 / 120 - kappa ** 2 / 4 + kappa ** 3 / 2
        assert abel_plana_difference(lambda z: z ** 3, kappa) == pytest.approx(expected, abs=1e-13)

    @pytest.mark.parametrize("x", [5.0, 20.0, 80.0])
    def test_exponential_matches_direct(self, x):
        params = ReducedParams(x=x)
        value = abel_plana_difference(mode_function(EXP, params), 0.0)
        assert value == pytest.approx(sum_minus_integral(EXP, params).value, abs=1e-9)

    def test_non_finite_function(self):
        with pytest.raises(EvaluationError):
            abel_plana_difference(lambda z: z * math.nan, 0.0)


class TestAbelPlanaPressure:

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 1.5])
    def test_no_cutoff_matches_closed_form(self, alpha):
        result = abel_plana_pressure(CutoffSpec.none(), ReducedParams.from_alpha(alpha))
        assert result.method is PressureMethod.ABEL_PLANA
        assert result.reduced_pressure == pytest.approx(ir_truncated_pressure(alpha).reduced_pressure, abs=1e-12)

    def test_exponential(self):
        result = abel_plana_pressure(EXP, ReducedParams(x=50.0))
        assert result.reduced_pressure == pytest.approx(IDEAL_PRESSURE + PI ** 4 / (1008 * 2500), abs=2e-8)

    def test_quartic_is_rejected(self):
        with pytest.raises(UnsupportedCutoffError):
            abel_plana_pressure(CutoffSpec.power_exponential(4), ReducedParams())

    def test_power_one_is_exponential(self):
        params = ReducedParams(x=20.0)
        assert abel_plana_pressure(CutoffSpec.power_exponential(1), params).reduced_pressure == \
            pytest.approx(abel_plana_pressure(EXP, params).reduced_pressure, abs=1e-13)

    def test_tanh_uses_its_own_width(self):
        params = ReducedParams(x=6.0, nu=1.0)
        result = abel_plana_pressure(CutoffSpec.tanh_hard(nu=2.0), params)
        assert result == tanh_pressure(params.with_nu(2.0))


def correction_integral(nu):
    """計算 ∫ y³ cos(2πy/ν)/(e^(2πy) - 1) dy"""
    omega = 2 * PI / nu

    def f(y):
        return y ** 2 * math.cos(omega * y) * (y / math.expm1(2 * PI * y)) if y > 0 else 0.0

    value, _ = integrate.quad(f, 0.0, 40.0, epsabs=0.0, epsrel=1e-13, limit=400,
                              points=list(np.arange(0.25, 10.0, 0.25)))
    return value


class TestTanhPressure:

    def test_large_x_is_ideal(self):
        result = tanh_pressure(ReducedParams(x=1000.0, nu=1.0))
        assert result.reduced_pressure == IDEAL_PRESSURE
        assert result.deviation == 0.0

    @pytest.mark.parametrize("nu", [1.0, 2.0])
    def test_leading_correction(self, nu):
        x = 10.0 * nu
        result = tanh_pressure(ReducedParams(x=x, nu=nu))
        expected = PI ** 2 * math.exp(-20.0) * correction_integral(nu)
        assert result.deviation < 0
        assert result.deviation == pytest.approx(expected, rel=1e-6)

    def test_suppression_is_exponential(self):
        samples = [(x, tanh_pressure(ReducedParams(x=float(x), nu=1.0)).deviation) for x in range(6, 15)]
        decay = fit_decay(samples)
        power = fit_power_law(samples)
        assert decay.rate == pytest.approx(2.0, abs=0.1)
        assert power.residual_rms >= 10 * decay.residual_rms

    def test_wider_step_deviates_more(self):
        narrow = tanh_pressure(ReducedParams(x=8.0, nu=1.0)).deviation
        wide = tanh_pressure(ReducedParams(x=8.0, nu=2.0)).deviation
        assert abs(wide) > abs(narrow)

    def test_needs_zero_kappa(self):
        with pytest.raises(ParameterError):
            tanh_pressure(ReducedParams(x=10.0, kappa=0.1))


class TestRepulsiveWindow:

    def test_roots_of_cubic(self):
        window = find_repulsive_window(1e-9)
        roots = np.roots([-1 / (4 * PI), 1 / 8, 0.0, -PI ** 2 / 240])
        inside = sorted(r.real for r in roots if abs(r.imag) < 1e-12 and 0 < r.real < 3)
        assert window.alpha_low == pytest.approx(inside[0], abs=1e-8)
        assert window.alpha_high == pytest.approx(inside[1], abs=1e-8)

    def test_rounded_roots(self):
        window = find_repulsive_window()
        assert round(window.alpha_low, 3) == 0.842
        assert round(window.alpha_high, 3) == 1.228
        assert ir_truncated_pressure(window.midpoint).reduced_pressure > 0
        assert ir_truncated_pressure(0.5).reduced_pressure < 0
        assert ir_truncated_pressure(1.5).reduced_pressure < 0

    @pytest.mark.parametrize("tol", [0.0, -1e-6, math.nan])
    def test_bad_tolerance(self, tol):
        with pytest.raises(ParameterError):
            find_repulsive_window(tol)


class TestShiftedDistance:

    def test_outward_shift(self):
        factor = shifted_distance_factor(1.0, 10.0, 1, 3)
        assert factor.series == pytest.approx(0.68, rel=1e-14)
        assert factor.exact == pytest.approx(1.1 ** -4, rel=1e-14)

    def test_inward_shift(self):
        factor = shifted_distance_factor(1.0, 10.0, -1, 3)
        assert factor.series == pytest.approx(1.52, rel=1e-14)
        assert factor.exact == pytest.approx(0.9 ** -4, rel=1e-14)

    def test_order_zero(self):
        assert shifted_distance_factor(2.0, 10.0, 1, 0).series == 1.0

    @pytest.mark.parametrize("args, error", [
        ((1.0, 10.0, 0, 3), ParameterError),
        ((1.0, 10.0, 1, 4), UnsupportedOrderError),
        ((1.0, 0.0, 1, 3), DomainError),
        ((math.inf, 10.0, 1, 3), DomainError),
        ((1.0, 1.0, -1, 3), DomainError),
    ])
    def test_errors(self, args, error):
        with pytest.raises(error):
            shifted_distance_factor(*args)

    @given(st.floats(min_value=0.01, max_value=0.2), st.sampled_from([1, -1]))
    def test_residual_bound(self, u, sign):
        factor = shifted_distance_factor(u, 1.0, sign, 3)
        assert abs(factor.exact - factor.series) <= 70 * u ** 4
