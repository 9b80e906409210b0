"""紫外截斷函數 f(πj/x) 及求和引擎所需的資料"""
import math

import numpy as np
from scipy.special import expit

from casimir.config.cutoff_config import CutoffFamily, CutoffSpec
from casimir.config.numerics_config import MAX_MACLAURIN_ORDER
from casimir.exceptions import DomainError, UnsupportedCutoffError, UnsupportedOrderError
from casimir.models.params import ReducedParams


def weight(spec: CutoffSpec, j, params: ReducedParams):
    """模式 j 的截斷權重 (純量或陣列，j 可為分數)。

    Exponential        exp(-πj/x)
    PowerExponential   exp(-(πj/x)^p)
    TanhHard           ½(1 - tanh((πj - x)/ν))，階躍位於 j = x/π，寬度 ν/π
    None               1
    """
    arr = np.asarray(j, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("mode index j must be >= 0")

    family = spec.family
    if family is CutoffFamily.EXPONENTIAL:
        w = np.exp(-(params.mode_scale * arr))
    elif family is CutoffFamily.POWER_EXPONENTIAL:
        w = np.exp(-(params.mode_scale * arr) ** spec.power)
    elif family is CutoffFamily.TANH_HARD:
        nu = spec.smoothing(params.nu)
        # ½(1 - tanh u) = expit(-2u)，在階躍兩側皆數值穩定
        w = expit(-2.0 * (math.pi * arr - params.x) / nu)
    else:
        w = np.ones_like(arr)

    if np.ndim(j) == 0:
        return float(w)
    return w


def mode_terms(spec: CutoffSpec, j, params: ReducedParams):
    """被加項 G(j) = j³·f(πj/x)"""
    arr = np.asarray(j, dtype=float)
    return arr ** 3 * weight(spec, arr, params)


def maclaurin_coeffs(spec: CutoffSpec, params: ReducedParams, order: int):
    """G(j) = j³·f(πj/x) 在 j = 0 的 Taylor 係數 c_0..c_order。

    精確級數合成：令 a = (π/x)^p，只出現 j^(3+pm) 次方，
    且 c_(3+pm) = (-a)^m / m!。
    """
    if not spec.analytic:
        raise UnsupportedCutoffError(f"no Maclaurin data for the {spec.family.value} cutoff")
    if isinstance(order, bool) or not isinstance(order, int) or order < 0 or order > MAX_MACLAURIN_ORDER:
        raise UnsupportedOrderError(f"Maclaurin order must be an integer in [0, {MAX_MACLAURIN_ORDER}], got {order!r}")

    p = spec.exponent
    a = params.mode_scale ** p
    coeffs = [0.0] * (order + 1)
    m = 0
    while 3 + p * m <= order:
        coeffs[3 + p * m] = (-a) ** m / math.factorial(m)
        m += 1
    return coeffs


def mode_function(spec: CutoffSpec, params: ReducedParams):
    """可於複數求值的 G(z) = z³·f(πz/x)，供 Abel-Plana 被積函數使用"""
    t = params.mode_scale
    family = spec.family

    if family is CutoffFamily.EXPONENTIAL:
        def g(z):
            return z ** 3 * np.exp(-t * z)
    elif family is CutoffFamily.POWER_EXPONENTIAL:
        p = spec.power

        def g(z):
            return z ** 3 * np.exp(-(t * z) ** p)
    elif family is CutoffFamily.TANH_HARD:
        nu = spec.smoothing(params.nu)
        x = params.x

        def g(z):
            return z ** 3 * 0.5 * (1.0 - np.tanh((math.pi * z - x) / nu))
    else:
        def g(z):
            return z ** 3
    return g
