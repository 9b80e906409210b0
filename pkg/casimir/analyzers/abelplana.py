"""以 Abel-Plana 公式計算 Σ - ∫ 及紅外截斷與 tanh 截斷壓力，
另含 Bose 型積分、排斥區間與位移距離因子。"""
import logging
import math

import numpy as np
from scipy.optimize import bisect
from scipy.special import zeta

from casimir.analyzers.cutoffs import mode_function
from casimir.config.cutoff_config import CutoffFamily, CutoffSpec
from casimir.config.numerics_config import (
    ABEL_PLANA_Y_MAX,
    IDEAL_PRESSURE,
    MAX_BOSE_ORDER,
    MAX_SHIFT_ORDER,
    QUAD_REL_TOL,
    ROOT_SCAN,
    SMALL_Y_GUARD,
    TANH_PANEL_SPAN,
)
from casimir.exceptions import (
    DomainError,
    EvaluationError,
    NumericalError,
    ParameterError,
    UnsupportedCutoffError,
    UnsupportedOrderError,
)
from casimir.models.params import ReducedParams
from casimir.models.results import PressureMethod, PressureResult, RootWindow, ShiftFactor
from casimir.utils.quadrature import adaptive_quad

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
HALF_PI_SQUARED = 0.5 * math.pi ** 2
TWO_PI = 2.0 * math.pi
BOSE_REL_TOL = 1e-13
# tanh 修正項 Δ
TANH_REL_TOL = 1e-10
# y/(e^(2πy) - 1) 的權重大多位於這些值以下
BOSE_BREAKPOINTS = (0.5, 1.0, 2.0, 5.0, 10.0)


def _planck_kernel(y: float) -> float:
    """y/(e^(2πy) - 1)，在 y = 0 處為有限值"""
    if y < SMALL_Y_GUARD:
        return (1.0 - math.pi * y) / TWO_PI
    return y / math.expm1(TWO_PI * y)


def _check_order(n, limit, what):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1 or n > limit:
        raise UnsupportedOrderError(f"{what} must be an integer in [1, {limit}], got {n!r}")
    return int(n)


def bose_integral_closed_form(n: int) -> float:
    """∫_0^∞ yⁿ/(e^(2πy) - 1) dy = n!·ζ(n+1)/(2π)^(n+1)"""
    n = _check_order(n, MAX_BOSE_ORDER, "Bose integral order")
    return math.factorial(n) * float(zeta(n + 1)) / TWO_PI ** (n + 1)


def bose_integral(n: int) -> float:
    """以自適應積分計算 ∫_0^∞ yⁿ/(e^(2πy) - 1) dy"""
    n = _check_order(n, MAX_BOSE_ORDER, "Bose integral order")

    def integrand(y):
        return y ** (n - 1) * _planck_kernel(y)

    value, _ = adaptive_quad(integrand, 0.0, ABEL_PLANA_Y_MAX, epsrel=BOSE_REL_TOL,
                             points=BOSE_BREAKPOINTS, label=f"bose integral n={n}")
    return value


def ir_truncated_pressure(alpha: float) -> PressureResult:
    """無紫外截斷的紅外截斷壓力 P(α) = -π²/240 + α²/8 - α³/(4π)"""
    if not (math.isfinite(alpha) and alpha >= 0):
        raise DomainError(f"alpha must be a finite number >= 0, got {alpha!r}")
    correction = alpha ** 2 / 8 - alpha ** 3 / (4 * math.pi)
    pressure = IDEAL_PRESSURE + correction
    abs_error = 4 * EPS * (abs(IDEAL_PRESSURE) + alpha ** 2 / 8 + alpha ** 3 / (4 * math.pi))
    return PressureResult(pressure, PressureMethod.CLOSED_FORM, abs_error, correction)


def _imag_ratio(G, j, y):
    """Im G(j + iy) / y，y 極小時改在保護距離處取值"""
    h = max(y, SMALL_Y_GUARD)
    value = complex(G(complex(j, h)))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise EvaluationError(f"G({j}+{h}i) is not finite")
    return value.imag / h


def abel_plana_difference(G, j1: float, j2: float = math.inf, *, epsrel: float = QUAD_REL_TOL) -> float:
    """以 Abel-Plana 公式計算 Σ_{j=j1}^{j2} G(j) - ∫_{j1}^{j2} G。

    G 須在帶狀區域 j1 <= Re z <= j2 上解析，且增長慢於 e^(2π|Im z|)；
    j2 = ∞ 時 G(j2) 項為零。
    """
    finite_end = math.isfinite(j2)

    def real_at(j):
        value = complex(G(complex(j, 0.0)))
        if not math.isfinite(value.real):
            raise EvaluationError(f"G({j}) is not finite")
        return value.real

    def integrand(y):
        ratio = -_imag_ratio(G, j1, y)
        if finite_end:
            ratio += _imag_ratio(G, j2, y)
        return ratio * _planck_kernel(y)

    edges = 0.5 * real_at(j1)
    if finite_end:
        edges += 0.5 * real_at(j2)
    integral, _ = adaptive_quad(integrand, 0.0, ABEL_PLANA_Y_MAX, epsrel=epsrel,
                                points=BOSE_BREAKPOINTS, label="abel-plana integral")
    return math.fsum([edges, 2.0 * integral])


def abel_plana_pressure(spec: CutoffSpec, params: ReducedParams) -> PressureResult:
    """以 j1 = κ 的 Abel-Plana 差值計算約化壓力。

    形式截斷 None 以數值方式給出紅外截斷壓力；tanh 族交由 tanh_pressure 計算。
    """
    family = spec.family
    if family is CutoffFamily.TANH_HARD:
        nu = spec.smoothing(params.nu)
        return tanh_pressure(params.with_nu(nu))
    if family is CutoffFamily.POWER_EXPONENTIAL and spec.power > 1:
        raise UnsupportedCutoffError(
            "exp(-(pi z/x)^p) grows along arg z = pi/p for p > 1; the Abel-Plana formula does not apply"
        )

    G = mode_function(spec, params)
    diff = abel_plana_difference(G, params.kappa)
    pressure = -HALF_PI_SQUARED * diff
    deviation = -HALF_PI_SQUARED * (diff - 1.0 / 120)
    abs_error = HALF_PI_SQUARED * 10 * QUAD_REL_TOL * max(abs(diff), 1.0 / 120)
    return PressureResult(pressure, PressureMethod.ABEL_PLANA, abs_error, deviation)


def tanh_pressure(params: ReducedParams) -> PressureResult:
    """由 Abel-Plana 積分計算 tanh 硬截斷壓力。

    P = -π²/240 + Δ，其中 q = e^(-2x/ν)，
    Δ = π² q ∫ y³ (cos(2πy/ν) + q) / ((e^(2πy) - 1)(1 + 2q cos(2πy/ν) + q²)) dy。
    Δ 單獨積分，以保留 e^(-2x/ν) 的抑制。
    """
    if params.kappa != 0:
        raise ParameterError("the tanh-cutoff pressure is defined for kappa = 0")
    nu = params.nu
    q = math.exp(-2.0 * params.x / nu)
    if q == 0.0:
        return PressureResult(IDEAL_PRESSURE, PressureMethod.ABEL_PLANA, 4 * EPS * abs(IDEAL_PRESSURE), 0.0)

    omega = TWO_PI / nu

    def integrand(y):
        c = math.cos(omega * y)
        return y * y * _planck_kernel(y) * (c + q) / (1.0 + 2.0 * q * c + q * q)

    panels = np.arange(nu / 4, TANH_PANEL_SPAN + nu / 8, nu / 4)
    points = sorted(set(BOSE_BREAKPOINTS) | {float(p) for p in panels})
    integral, err = adaptive_quad(integrand, 0.0, ABEL_PLANA_Y_MAX, epsrel=TANH_REL_TOL,
                                  points=points, label="tanh correction")
    delta = math.pi ** 2 * q * integral
    abs_error = math.pi ** 2 * q * err + 4 * EPS * abs(IDEAL_PRESSURE)
    logger.debug("tanh_pressure(x=%g, nu=%g): delta=%.6e", params.x, nu, delta)
    return PressureResult(IDEAL_PRESSURE + delta, PressureMethod.ABEL_PLANA, abs_error, delta)


def _window_polynomial(alpha: float) -> float:
    return ir_truncated_pressure(alpha).reduced_pressure


def find_repulsive_window(tol: float = 1e-6) -> RootWindow:
    """在 (0, 3) 上框出 P(α) 的兩個變號點，並各自二分至 tol"""
    if not (math.isfinite(tol) and tol > 0):
        raise ParameterError(f"tol must be > 0, got {tol!r}")

    start, stop, step = ROOT_SCAN['start'], ROOT_SCAN['stop'], ROOT_SCAN['step']
    grid = np.linspace(start, stop, int(round((stop - start) / step)) + 1)
    values = np.array([_window_polynomial(a) for a in grid])
    crossings = np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)
    if len(crossings) != 2:
        raise NumericalError(f"expected two sign changes of P(alpha) on ({start}, {stop}), found {len(crossings)}")

    roots = [bisect(_window_polynomial, grid[i], grid[i + 1], xtol=tol) for i in crossings]
    logger.debug("repulsive window: %s", roots)
    return RootWindow(float(roots[0]), float(roots[1]), tol)


def shifted_distance_factor(alpha_shift: float, x: float, sign: int, order: int) -> ShiftFactor:
    """板距位移為 d(1 ± α/x) 時乘在 -π²/240 上的因子。

    exact  = (1 ± u)^-4,  u = α/x
    series = Σ_{k<=order} C(k+3, 3)(∓u)^k = 1 ∓ 4u + 10u² ∓ 20u³
    """
    if sign not in (1, -1):
        raise ParameterError(f"sign must be +1 or -1, got {sign!r}")
    if isinstance(order, bool) or not isinstance(order, int) or order < 0 or order > MAX_SHIFT_ORDER:
        raise UnsupportedOrderError(f"shift series order must be an integer in [0, {MAX_SHIFT_ORDER}], got {order!r}")
    if not (math.isfinite(alpha_shift) and math.isfinite(x)) or x == 0:
        raise DomainError("alpha and x must be finite with x != 0")

    u = alpha_shift / x
    base = 1.0 + sign * u
    if base == 0:
        raise DomainError(f"shifted distance vanishes at x = {-sign * alpha_shift:g}")
    if abs(u) >= 1:
        logger.debug("shift series outside its convergence radius (u=%g)", u)

    exact = base ** -4
    series = math.fsum(math.comb(k + 3, 3) * (-sign * u) ** k for k in range(order + 1))
    return ShiftFactor(exact, series)
