import logging
import math

from scipy import integrate

from casimir.config.numerics_config import QUAD_LIMIT, QUAD_REL_TOL
from casimir.exceptions import EvaluationError, QuadratureError

logger = logging.getLogger(__name__)

# QUADPACK 在達到機器精度時可能回報捨入誤差 (ier=2)；
# 誤差估計仍在此倍數內時保留該結果。
ACCEPT_FACTOR = 100.0


def adaptive_quad(func, a, b, *, epsrel=QUAD_REL_TOL, epsabs=0.0, points=None, limit=QUAD_LIMIT, label="integral"):
    """以自適應 Gauss-Kronrod 積分計算 func 在 [a, b] 上的積分 (b 可為 inf)。

    回傳 (value, abs_error)。QUADPACK 未達容許誤差時拋出 QuadratureError，
    被積函數非有限值時拋出 EvaluationError。
    """
    kwargs = {}
    if points is not None and math.isfinite(b):
        inside = sorted(p for p in points if a < p < b)
        if inside:
            kwargs["points"] = inside
            limit = max(limit, 4 * len(inside))

    out = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1, **kwargs)
    value, abserr, info = out[0], out[1], out[2]

    if not math.isfinite(value):
        raise EvaluationError(f"{label}: integrand produced a non-finite value")

    target = max(epsabs, epsrel * abs(value))
    if len(out) > 3:
        if abserr > ACCEPT_FACTOR * target and abserr > 0:
            raise QuadratureError(
                f"{label}: quadrature stopped at abs error {abserr:.3e} (target {target:.3e}): {out[3]}",
                achieved=abserr,
            )
        logger.debug("%s: accepted with QUADPACK warning, abserr=%.3e", label, abserr)

    logger.debug("%s on [%g, %g]: %.16g +- %.2e (%d evaluations)", label, a, b, value, abserr, info.get("neval", 0))
    return value, abserr
