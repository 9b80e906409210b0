"""離散模式和 Σ j³f、連續積分 ∫ j³f 以及約化壓力

    P = p·d⁴ = -(π²/2) (Σ_j - ∫ dj) j³ f(πj/x)

可選擇在 κ = d·k_c/π 處做紅外截斷。
"""
import logging
import math

import numpy as np
from scipy.special import gamma, gammaincc

from casimir.analyzers.cutoffs import mode_terms
from casimir.config.cutoff_config import CutoffFamily, CutoffSpec
from casimir.config.numerics_config import (
    GENERIC_TAIL_SAFETY,
    IDEAL_PRESSURE,
    MIN_CLOSED_FORM_X,
    PRESSURE_SUM_REL_TOL,
    QUAD_REL_TOL,
    SUM_BLOCK,
    SUM_J_MAX,
    SUM_REL_TOL,
)
from casimir.exceptions import DomainError, NonConvergenceError, UnsupportedCutoffError
from casimir.models.params import ReducedParams
from casimir.models.results import IRConvention, ModeSumResult, PressureMethod, PressureResult, SumMethod
from casimir.utils.quadrature import adaptive_quad
from casimir.utils.summation import CompensatedSum

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
HALF_PI_SQUARED = 0.5 * math.pi ** 2
# 小於 e^-750 的被積函數值捨去
LOG_FLOOR = 750.0


def _first_index(j_start: float, convention: IRConvention) -> float:
    if not (math.isfinite(j_start) and j_start >= 0):
        raise DomainError(f"j_start must be a finite number >= 0, got {j_start!r}")
    if convention is IRConvention.INTEGER:
        return float(math.ceil(j_start))
    return float(j_start)


def _tail_bounds(t_next: np.ndarray, t_after: np.ndarray, safety: float) -> np.ndarray:
    """由 t_{n+1} 與 t_{n+2} 估計 Σ_{k>n} t_k 的上界。

    所有截斷族的 j³f(πj/x) 皆為對數凹函數，比值 t_{n+2}/t_{n+1} 一旦小於一，
    之後的比值也小於一，尾部受幾何級數控制。出現零項表示權重已永久下溢。
    """
    bound = np.full(t_next.shape, np.inf)
    zero = t_next == 0.0
    bound[zero] = 0.0
    falling = ~zero & (t_after < t_next)
    ratio = t_after[falling] / t_next[falling]
    bound[falling] = safety * t_next[falling] / (1.0 - ratio)
    return bound


def sum_modes(spec: CutoffSpec, params: ReducedParams, j_start: float, *,
              rel_tol: float = SUM_REL_TOL,
              convention: IRConvention = IRConvention.CONTINUUM,
              j_max: int = SUM_J_MAX) -> ModeSumResult:
    """對 j = j0, j0+1, ... 做補償求和 Σ j³·f(πj/x) (j0 = j_start 或 ceil(j_start))。

    在尾部上界首次小於 rel_tol·|部分和| 時停止；
    abs_error 為該尾部上界加上總和的捨入誤差。
    """
    if not spec.decays:
        raise UnsupportedCutoffError("the mode sum diverges without a UV cutoff")
    first = _first_index(j_start, convention)
    safety = 1.0 if spec.family is CutoffFamily.EXPONENTIAL else GENERIC_TAIL_SAFETY

    acc = CompensatedSum()
    offset = 0
    while offset < j_max:
        n = min(SUM_BLOCK, j_max - offset)
        j = first + np.arange(offset, offset + n + 2, dtype=float)
        terms = mode_terms(spec, j, params)
        block = terms[:n]

        partial = acc.total + np.cumsum(block)
        tail = _tail_bounds(terms[1:n + 1], terms[2:n + 2], safety)
        done = np.flatnonzero(tail <= rel_tol * np.abs(partial))
        if done.size:
            k = int(done[0])
            acc.add_many(block[:k + 1])
            total = acc.total
            used = offset + k + 1
            abs_error = float(tail[k]) + EPS * abs(total)
            logger.debug("sum_modes(%s, x=%g, start=%g): %d terms, tail bound %.3e",
                         spec.label(), params.x, first, used, tail[k])
            return ModeSumResult(total, abs_error, used, SumMethod.DIRECT)

        acc.add_many(block)
        offset += n

    raise NonConvergenceError(
        f"mode sum did not converge within {j_max} terms (x={params.x:g})",
        terms_used=offset,
    )


def closed_sum_exponential(params: ReducedParams, j_start: float = None) -> ModeSumResult:
    """Σ_{n>=0} (a+n)³ e^(-t(a+n)) 的閉合形式，t = π/x，a = j_start (預設為 κ)。

    由 q = e^-t 的四個幾何級數導數項組成；a = 0 時化簡為
    q(1 + 4q + q²)/(1 - q)⁴。
    """
    a = params.kappa if j_start is None else j_start
    if not (math.isfinite(a) and a >= 0):
        raise DomainError(f"lower limit must be a finite number >= 0, got {a!r}")
    if params.x < MIN_CLOSED_FORM_X:
        raise DomainError(f"closed form needs x >= {MIN_CLOSED_FORM_X:g} (e^(pi/x) overflows)")

    t = params.mode_scale
    s = -math.expm1(-t)
    terms = [
        a ** 3 * math.exp(-t * a) / s,
        (3 * a ** 2 + 3 * a + 1) * math.exp(-t * (a + 1)) / s ** 2,
        (6 * a + 6) * math.exp(-t * (a + 2)) / s ** 3,
        6 * math.exp(-t * (a + 3)) / s ** 4,
    ]
    value = math.fsum(terms)
    return ModeSumResult(value, 8 * EPS * abs(value), 4, SumMethod.CLOSED_FORM)


def _knee(spec: CutoffSpec, params: ReducedParams) -> float:
    """j³f 的峰值位置 (解析族) 或階躍位置 (tanh)"""
    t = params.mode_scale
    if spec.family is CutoffFamily.TANH_HARD:
        return params.x / math.pi
    p = spec.exponent
    return (3.0 / p) ** (1.0 / p) / t


def _truncation_point(spec: CutoffSpec, params: ReducedParams) -> float:
    """超過此 j 後被積函數小於 e^-690 ~ 1e-300"""
    t = params.mode_scale
    if spec.family is CutoffFamily.TANH_HARD:
        nu = spec.smoothing(params.nu)
        j0 = (params.x + 0.5 * LOG_FLOOR * nu) / math.pi
        return (params.x + nu * (0.5 * LOG_FLOOR + 1.5 * math.log1p(j0))) / math.pi
    p = spec.exponent
    return (LOG_FLOOR + 3.0 * math.log1p(LOG_FLOOR / t)) ** (1.0 / p) / t


def _closed_integral(spec: CutoffSpec, params: ReducedParams, a: float) -> ModeSumResult:
    t = params.mode_scale
    p = spec.exponent
    if p == 1:
        u = t * a
        value = math.exp(-u) * (6 + 6 * u + 3 * u ** 2 + u ** 3) / t ** 4
    else:
        s = 4.0 / p
        value = float(gamma(s) * gammaincc(s, (t * a) ** p)) / (p * t ** 4)
    return ModeSumResult(value, 8 * EPS * abs(value), 0, SumMethod.CLOSED_FORM)


def _quadrature_integral(spec: CutoffSpec, params: ReducedParams, a: float, epsrel: float) -> ModeSumResult:
    end = _truncation_point(spec, params)
    if a >= end:
        return ModeSumResult(0.0, 0.0, 0, SumMethod.QUADRATURE)

    def integrand(j):
        return float(mode_terms(spec, j, params))

    knee = _knee(spec, params)
    edges = [a, knee, end] if a < knee < end else [a, end]
    total = CompensatedSum()
    abs_error = 0.0
    for lo, hi in zip(edges, edges[1:]):
        value, err = adaptive_quad(integrand, lo, hi, epsrel=epsrel, label="mode integral")
        total.add(value)
        abs_error += err
    return ModeSumResult(total.total, abs_error, 0, SumMethod.QUADRATURE)


def integral_modes(spec: CutoffSpec, params: ReducedParams, j_start: float, *,
                   method: SumMethod = None, epsrel: float = QUAD_REL_TOL) -> ModeSumResult:
    """∫_{j_start}^∞ dj j³·f(πj/x)。

    指數族除非要求數值積分，否則使用閉合形式；tanh 族一律以自適應積分計算。
    """
    if not spec.decays:
        raise UnsupportedCutoffError("the mode integral diverges without a UV cutoff")
    if not (math.isfinite(j_start) and j_start >= 0):
        raise DomainError(f"j_start must be a finite number >= 0, got {j_start!r}")

    if method is SumMethod.CLOSED_FORM and not spec.analytic:
        raise UnsupportedCutoffError(f"no closed-form integral for the {spec.family.value} cutoff")
    if spec.analytic and method in (None, SumMethod.CLOSED_FORM):
        return _closed_integral(spec, params, j_start)
    return _quadrature_integral(spec, params, j_start, epsrel)


def sum_minus_integral(spec: CutoffSpec, params: ReducedParams, *,
                       convention: IRConvention = IRConvention.CONTINUUM,
                       rel_tol: float = PRESSURE_SUM_REL_TOL) -> ModeSumResult:
    """求和與積分皆從 κ 開始的 (Σ - ∫) j³f"""
    total = sum_modes(spec, params, params.kappa, rel_tol=rel_tol, convention=convention)
    integral = integral_modes(spec, params, params.kappa)
    value = total.value - integral.value
    abs_error = total.abs_error + integral.abs_error + EPS * (abs(total.value) + abs(integral.value))
    return ModeSumResult(value, abs_error, total.terms_used, SumMethod.DIRECT)


def reduced_pressure_direct(spec: CutoffSpec, params: ReducedParams, *,
                            convention: IRConvention = IRConvention.CONTINUUM) -> PressureResult:
    """由直接求和減積分得到的約化卡西米爾壓力"""
    diff = sum_minus_integral(spec, params, convention=convention)
    pressure = -HALF_PI_SQUARED * diff.value
    deviation = -HALF_PI_SQUARED * (diff.value - 1.0 / 120)
    return PressureResult(pressure, PressureMethod.DIRECT, HALF_PI_SQUARED * diff.abs_error, deviation)


def reduced_pressure_closed(params: ReducedParams) -> PressureResult:
    """由閉合求和與閉合積分得到的指數截斷壓力"""
    total = closed_sum_exponential(params)
    integral = _closed_integral(CutoffSpec.exponential(), params, params.kappa)
    diff = total.value - integral.value
    abs_error = HALF_PI_SQUARED * (total.abs_error + integral.abs_error)
    return PressureResult(-HALF_PI_SQUARED * diff, PressureMethod.CLOSED_FORM, abs_error,
                          -HALF_PI_SQUARED * (diff - 1.0 / 120))


def sum_expansion_exponential(params: ReducedParams) -> float:
    """紅外截斷指數和的大 x 展開，至 x⁻² 項"""
    k = params.kappa
    t = params.mode_scale
    return math.fsum([
        6.0 / t ** 4,
        (1 - 30 * k ** 2 + 60 * k ** 3 - 30 * k ** 4) / 120,
        -(k / 30) * (1 - 10 * k ** 2 + 15 * k ** 3 - 6 * k ** 4) * t,
        -(t ** 2 / 504) * (1 - 21 * k ** 2 + 105 * k ** 4 - 126 * k ** 5 + 42 * k ** 6),
    ])


def pressure_expansion_exponential(params: ReducedParams) -> float:
    """紅外截斷指數截斷壓力的大 x 展開，至 x⁻² 項"""
    k = params.kappa
    t = params.mode_scale
    return math.fsum([
        IDEAL_PRESSURE * (1 - 30 * k ** 2 + 60 * k ** 3),
        (math.pi ** 2 / 60) * k * t * (1 - 10 * k ** 2 + 15 * k ** 3),
        (math.pi ** 2 * t ** 2 / 1008) * (1 - 21 * k ** 2 + 105 * k ** 4 - 126 * k ** 5),
    ])
