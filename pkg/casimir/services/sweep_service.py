import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd

from casimir.analyzers.abelplana import ir_truncated_pressure
from casimir.exceptions import CasimirError, ParameterError
from casimir.models.params import ReducedParams
from casimir.models.results import IRConvention, SweepGrid, SweepVariable
from casimir.services.pressure_service import PressureService

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ['variable', 'value', 'reduced_pressure', 'abs_error', 'error']
FIG2_COLUMNS = ['alpha', 'reduced_pressure']


class SweepService:
    """參數掃描服務 - 每個網格點一個壓力值，列依網格順序排列"""

    def __init__(self, pressure_service=None, threads=1):
        if threads < 1:
            raise ParameterError("threads must be >= 1")
        self.pressure_service = pressure_service or PressureService()
        self.threads = threads

    def _point_params(self, grid: SweepGrid, base: ReducedParams, value: float):
        if grid.variable is SweepVariable.X:
            return base.with_x(value)
        if grid.variable is SweepVariable.ALPHA:
            return base.with_kappa(value / math.pi)
        return base.with_nu(value)

    def _evaluate(self, grid, cutoff, base, method, convention, value):
        try:
            params = self._point_params(grid, base, value)
            result = self.pressure_service.compute(cutoff, params, method, convention)
        except CasimirError as e:
            logger.warning("sweep point %s=%g failed: %s", grid.variable.value, value, e)
            return [grid.variable.value, value, np.nan, np.nan, type(e).__name__]
        return [grid.variable.value, value, result.reduced_pressure, result.abs_error, '']

    def _resolve_method(self, grid, cutoff, base, method, fallback):
        """整個網格使用同一方法，依 kappa 最大的點決定"""
        if method is not None:
            return self.pressure_service.resolve_method(cutoff, method)
        widest = base
        for value in grid.values:
            try:
                params = self._point_params(grid, base, value)
            except CasimirError:
                continue
            if params.kappa > widest.kappa:
                widest = params
        return self.pressure_service.resolve_method(cutoff, fallback=fallback, params=widest)

    def run(self, grid: SweepGrid, cutoff: str, base: ReducedParams, method=None,
            convention: IRConvention = IRConvention.CONTINUUM, fallback=None) -> pd.DataFrame:
        """計算所有網格點；失敗的點保留該列並記錄錯誤代碼"""
        method = self._resolve_method(grid, cutoff, base, method, fallback)
        logger.debug("sweep: cutoff=%s method=%s points=%d", cutoff, method, len(grid.values))

        def task(value):
            return self._evaluate(grid, cutoff, base, method, convention, value)

        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            # map 依提交順序產出，即網格索引順序
            rows = list(pool.map(task, grid.values))
        return pd.DataFrame(rows, columns=SWEEP_COLUMNS)

    @staticmethod
    def failures(frame: pd.DataFrame) -> int:
        return int((frame['error'] != '').sum())

    @staticmethod
    def fig2_frame(alpha_max: float = 1.58, points: int = 100) -> pd.DataFrame:
        """在 [0, alpha_max] 均勻 α 網格上的紅外截斷壓力"""
        if not (math.isfinite(alpha_max) and alpha_max > 0):
            raise ParameterError("alpha_max must be a finite number > 0")
        if points < 2:
            raise ParameterError("points must be >= 2")
        alphas = np.linspace(0.0, alpha_max, points)
        pressures = [ir_truncated_pressure(float(a)).reduced_pressure for a in alphas]
        return pd.DataFrame({'alpha': alphas, 'reduced_pressure': pressures}, columns=FIG2_COLUMNS)
