import logging

from casimir.analyzers.abelplana import abel_plana_pressure, ir_truncated_pressure
from casimir.analyzers.asymptotics import em_pressure
from casimir.analyzers.modesum import reduced_pressure_closed, reduced_pressure_direct
from casimir.config.cutoff_config import CutoffFamily, resolve_cutoff
from casimir.config.defaults_config import METHOD_NAMES
from casimir.exceptions import ParameterError, UnsupportedCutoffError
from casimir.models.params import ReducedParams
from casimir.models.results import IRConvention, PressureResult

logger = logging.getLogger(__name__)

# 各截斷支援的方法，第一項為其自然方法
SUPPORTED_METHODS = {
    CutoffFamily.EXPONENTIAL: ('direct', 'em', 'abel-plana', 'closed'),
    CutoffFamily.POWER_EXPONENTIAL: ('direct', 'em'),
    CutoffFamily.TANH_HARD: ('abel-plana', 'direct'),
    CutoffFamily.NONE: ('closed', 'abel-plana'),
}


def _applies(family, method, params):
    if params is None or params.kappa == 0:
        return True
    if method == 'em':
        return False
    return not (method == 'abel-plana' and family is CutoffFamily.TANH_HARD)


class PressureService:
    """壓力計算服務 - 依截斷分派計算方法"""

    def resolve_method(self, cutoff: str, method=None, fallback=None, params: ReducedParams = None):
        """決定計算方法：明確指定者優先，其次為截斷支援的已儲存方法，最後為截斷的自然方法

        未明確指定時略過無法計算 params 的方法 (kappa > 0 時排除 em，tanh 另排除 abel-plana)。
        """
        family = resolve_cutoff(cutoff).family
        supported = SUPPORTED_METHODS[family]
        if method is not None:
            if method not in METHOD_NAMES:
                raise ParameterError(f"unknown method '{method}' (choose from {', '.join(METHOD_NAMES)})")
            if method not in supported:
                raise UnsupportedCutoffError(
                    f"method '{method}' is not available for cutoff '{cutoff}' (use {', '.join(supported)})"
                )
            return method
        candidates = ([fallback] if fallback in supported else []) + list(supported)
        for name in candidates:
            if _applies(family, name, params):
                return name
        return supported[0]

    def compute(self, cutoff: str, params: ReducedParams, method=None,
                convention: IRConvention = IRConvention.CONTINUUM) -> PressureResult:
        """計算單一參數點的約化壓力"""
        spec = resolve_cutoff(cutoff)
        method = self.resolve_method(cutoff, method, params=params)
        if convention is not IRConvention.CONTINUUM and method != 'direct':
            raise ParameterError("the integer IR convention only applies to the direct method")
        logger.debug("pressure: cutoff=%s method=%s params=%s", cutoff, method, params)

        if method == 'direct':
            return reduced_pressure_direct(spec, params, convention=convention)
        if method == 'em':
            return em_pressure(spec, params)
        if method == 'abel-plana':
            return abel_plana_pressure(spec, params)
        if spec.family is CutoffFamily.NONE:
            return ir_truncated_pressure(params.alpha)
        return reduced_pressure_closed(params)

    def describe(self, cutoff: str, params: ReducedParams, method: str, result: PressureResult):
        """供顯示與 CSV 輸出的有序紀錄"""
        return {
            'cutoff': cutoff,
            'method': method,
            'x': params.x,
            'kappa': params.kappa,
            'alpha': params.alpha,
            'nu': params.nu,
            'reduced_pressure': result.reduced_pressure,
            'abs_error': result.abs_error,
            'deviation': result.deviation,
        }
