"""以 Euler-Maclaurin 公式估計 Σ - ∫，並以最小平方法擷取
漸近係數與抑制速率。"""
import logging
import math

import numpy as np

from casimir.analyzers.cutoffs import maclaurin_coeffs
from casimir.config.cutoff_config import CutoffSpec
from casimir.config.numerics_config import (
    EM_TERMS,
    MAX_EM_ORDER,
    MAX_FIT_CONDITION,
    MIN_DECAY_SAMPLES,
    MIN_POWER_LAW_SAMPLES,
)
from casimir.exceptions import FitError, ParameterError, UnsupportedOrderError
from casimir.models.params import ReducedParams
from casimir.models.results import (
    AsymptoticSeries,
    DecayFit,
    EMEstimate,
    PowerLawFit,
    PressureMethod,
    PressureResult,
    SeriesTerm,
)

logger = logging.getLogger(__name__)

HALF_PI_SQUARED = 0.5 * math.pi ** 2


def _em_terms(coeffs):
    """由 Taylor 係數得到帶號的 EM 貢獻 (order, value)；G^(k)(0) = k!·c_k"""
    terms = []
    for k, w in EM_TERMS:
        c = coeffs[k] if k < len(coeffs) else 0.0
        terms.append((k, float(w) * math.factorial(k) * c))
    return terms


def em_difference(coeffs, order=None) -> EMEstimate:
    """由 G 在零點的導數計算 Σ_{j>=0} G - ∫_0^∞ G。

    指定 order 時保留至該導數階數的所有項，誤差上界為第一個被省略的非零項。
    未指定時在各項不再縮小處截斷。沒有可省略的項時，
    上界取最後一個納入的非零項。
    """
    if order is not None:
        if isinstance(order, bool) or not isinstance(order, int) or order < 0 or order > MAX_EM_ORDER:
            raise UnsupportedOrderError(f"Euler-Maclaurin order must be an integer in [0, {MAX_EM_ORDER}], got {order!r}")

    head = 0.5 * coeffs[0] if len(coeffs) else 0.0
    nonzero = [(k, v) for k, v in _em_terms(coeffs) if v != 0.0]

    if order is not None:
        kept = [v for k, v in nonzero if k <= order]
        omitted = [v for k, v in nonzero if k > order]
    else:
        cut = len(nonzero)
        for i in range(1, len(nonzero)):
            if abs(nonzero[i][1]) >= abs(nonzero[i - 1][1]):
                cut = i
                break
        kept = [v for _, v in nonzero[:cut]]
        omitted = [v for _, v in nonzero[cut:]]

    value = math.fsum([head] + kept)
    if omitted:
        bound = abs(omitted[0])
    elif kept:
        bound = abs(kept[-1])
    else:
        bound = 0.0
    return EMEstimate(value, bound)


def em_pressure(spec: CutoffSpec, params: ReducedParams, order=None) -> PressureResult:
    """由 Euler-Maclaurin 級數計算約化壓力 -(π²/2)(Σ - ∫) (κ = 0)"""
    if params.kappa != 0:
        raise ParameterError("the Euler-Maclaurin path needs kappa = 0 (derivatives are taken at j = 0)")
    coeffs = maclaurin_coeffs(spec, params, MAX_EM_ORDER)
    estimate = em_difference(coeffs, order)
    # 所有解析族皆有 G'''(0) = 6，首項為 1/120
    correction = estimate.value - 1.0 / 120
    logger.debug("em_pressure(%s, x=%g): Σ-∫ = %.16g +- %.2e", spec.label(), params.x, *estimate)
    return PressureResult(
        -HALF_PI_SQUARED * estimate.value,
        PressureMethod.EULER_MACLAURIN,
        HALF_PI_SQUARED * estimate.error_bound,
        -HALF_PI_SQUARED * correction,
    )


def _as_samples(samples, minimum, what):
    data = np.asarray(samples, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise FitError(f"{what} expects (x, value) pairs")
    if len(data) < minimum:
        raise FitError(f"{what} needs at least {minimum} samples, got {len(data)}")
    if not np.all(np.isfinite(data)):
        raise FitError(f"{what}: samples must be finite")
    return data[:, 0], data[:, 1]


def fit_series(samples, powers) -> AsymptoticSeries:
    """最小平方擬合 value ≈ Σ c_p x^(-p)。

    SVD 前先將各行正規化，條件數反映基底的形狀而非 x 的大小。
    """
    powers = [int(p) for p in powers]
    if not powers:
        raise ParameterError("fit_series needs at least one power")
    x, y = _as_samples(samples, len(powers) + 2, "fit_series")
    if np.any(x <= 0):
        raise FitError("fit_series needs x > 0")
    if len(np.unique(x)) != len(x):
        raise FitError("fit_series needs distinct x values")
    if x.max() < 10 * x.min():
        raise FitError("fit_series needs samples spanning at least one decade in x")

    design = x[:, None] ** (-np.asarray(powers, dtype=float)[None, :])
    norms = np.linalg.norm(design, axis=0)
    scaled = design / norms
    u, s, vt = np.linalg.svd(scaled, full_matrices=False)
    condition = float(s[0] / s[-1]) if s[-1] > 0 else math.inf
    if condition > MAX_FIT_CONDITION:
        raise FitError(
            f"design matrix condition {condition:.2e} exceeds {MAX_FIT_CONDITION:.0e}; "
            "drop or rescale some of the powers"
        )

    coef = (vt.T @ ((u.T @ y) / s)) / norms
    residual = y - design @ coef
    dof = len(y) - len(powers)
    sigma2 = float(residual @ residual) / dof
    stderr = np.sqrt(sigma2 * np.sum((vt.T / s) ** 2, axis=1)) / norms
    rms = float(np.sqrt(np.mean(residual ** 2)))

    logger.debug("fit_series powers=%s: coef=%s, rms=%.3e, cond=%.2e", powers, coef, rms, condition)
    terms = tuple(SeriesTerm(p, float(c), float(e)) for p, c, e in zip(powers, coef, stderr))
    return AsymptoticSeries(terms, residual_rms=rms, condition=condition)


def _log_magnitudes(delta, what):
    if np.any(delta == 0):
        raise FitError(f"{what}: samples must be non-zero")
    signs = np.sign(delta)
    if not np.all(signs == signs[0]):
        raise FitError(
            f"{what}: samples change sign (oscillatory modulation); "
            "sample where the modulation has a fixed phase"
        )
    return np.log(np.abs(delta))


def fit_decay(samples) -> DecayFit:
    """擬合 ln|δ| = log_prefactor - rate·x"""
    x, delta = _as_samples(samples, MIN_DECAY_SAMPLES, "fit_decay")
    log_delta = _log_magnitudes(delta, "fit_decay")
    slope, intercept = np.polyfit(x, log_delta, 1)
    residual = log_delta - (slope * x + intercept)
    rms = float(np.sqrt(np.mean(residual ** 2)))
    if slope >= 0:
        raise FitError(f"fit_decay: samples do not decay (slope {slope:.3g})")
    logger.debug("fit_decay: rate=%.6g, rms=%.3e", -slope, rms)
    return DecayFit(float(-slope), float(intercept), rms, len(x))


def fit_power_law(samples) -> PowerLawFit:
    """擬合 ln|δ| = log_prefactor - exponent·ln x"""
    x, delta = _as_samples(samples, MIN_POWER_LAW_SAMPLES, "fit_power_law")
    if np.any(x <= 0):
        raise FitError("fit_power_law needs x > 0")
    log_delta = _log_magnitudes(delta, "fit_power_law")
    log_x = np.log(x)
    slope, intercept = np.polyfit(log_x, log_delta, 1)
    residual = log_delta - (slope * log_x + intercept)
    rms = float(np.sqrt(np.mean(residual ** 2)))
    logger.debug("fit_power_law: exponent=%.6g, rms=%.3e", -slope, rms)
    return PowerLawFit(float(-slope), float(intercept), rms, len(x))
