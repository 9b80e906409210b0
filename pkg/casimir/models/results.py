import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Tuple

import numpy as np

from casimir.exceptions import ParameterError


class SumMethod(Enum):
    DIRECT = "direct"
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


class PressureMethod(Enum):
    DIRECT = "direct"
    EULER_MACLAURIN = "euler_maclaurin"
    ABEL_PLANA = "abel_plana"
    CLOSED_FORM = "closed_form"


class IRConvention(Enum):
    """紅外截斷模式和的起點。

    CONTINUUM 對 j = κ, κ+1, κ+2, ... 求和 (與閉合形式一致)；
    INTEGER 對整數 j >= ceil(κ) 求和。
    """
    CONTINUUM = "continuum"
    INTEGER = "integer"


@dataclass(frozen=True)
class ModeSumResult:
    value: float
    abs_error: float
    terms_used: int
    method: SumMethod


@dataclass(frozen=True)
class PressureResult:
    """約化壓力 P = p·d⁴。

    deviation 為 P + π²/240；能避開與理想值相消的計算路徑會直接計算它。
    """
    reduced_pressure: float
    method: PressureMethod
    abs_error: float
    deviation: float


class EMEstimate(NamedTuple):
    value: float
    error_bound: float


@dataclass(frozen=True)
class SeriesTerm:
    power: int
    coefficient: float
    residual_bound: float = 0.0


@dataclass(frozen=True)
class AsymptoticSeries:
    """以紫外尺度倒數展開的級數 Σ c_p x^(-p)"""
    terms: Tuple[SeriesTerm, ...]
    residual_rms: float = 0.0
    condition: float = 1.0

    def __post_init__(self):
        powers = [t.power for t in self.terms]
        if any(p < 0 for p in powers) or any(b <= a for a, b in zip(powers, powers[1:])):
            raise ParameterError(f"series powers must be >= 0 and strictly increasing, got {powers}")

    def coefficient(self, power: int) -> float:
        for term in self.terms:
            if term.power == power:
                return term.coefficient
        raise KeyError(power)

    def __call__(self, x: float) -> float:
        return math.fsum(t.coefficient * x ** (-t.power) for t in self.terms)


@dataclass(frozen=True)
class DecayFit:
    """指數衰減擬合 |δ(x)| ≈ exp(log_prefactor - rate·x)"""
    rate: float
    log_prefactor: float
    residual_rms: float
    samples: int


@dataclass(frozen=True)
class PowerLawFit:
    """冪律擬合 |δ(x)| ≈ exp(log_prefactor)·x^(-exponent)"""
    exponent: float
    log_prefactor: float
    residual_rms: float
    samples: int


@dataclass(frozen=True)
class RootWindow:
    """紅外截斷壓力為排斥力的 α = k_c·d 區間"""
    alpha_low: float
    alpha_high: float
    bracket_tol: float

    def __post_init__(self):
        if not self.alpha_low < self.alpha_high:
            raise ParameterError("alpha_low must be below alpha_high")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.alpha_low + self.alpha_high)


class ShiftFactor(NamedTuple):
    exact: float
    series: float


class SweepVariable(Enum):
    X = "x"
    ALPHA = "alpha"
    NU = "nu"


class SweepScale(Enum):
    LINEAR = "linear"
    LOG = "log"


@dataclass(frozen=True)
class SweepGrid:
    variable: SweepVariable
    start: float
    stop: float
    points: int
    scale: SweepScale = SweepScale.LINEAR
    values: Tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or not self.start < self.stop:
            raise ParameterError("sweep needs finite start < stop")
        if self.points < 2:
            raise ParameterError("sweep needs at least 2 points")
        if self.scale is SweepScale.LOG and self.start <= 0:
            raise ParameterError("log-scale sweep needs start > 0")
        object.__setattr__(self, "values", self._grid())

    def _grid(self) -> Tuple[float, ...]:
        if self.scale is SweepScale.LOG:
            grid = np.geomspace(self.start, self.stop, self.points)
        else:
            grid = np.linspace(self.start, self.stop, self.points)
        return tuple(float(v) for v in grid)


@dataclass(frozen=True)
class CheckResult:
    """單一驗證檢查；資訊性檢查不會使測試組失敗"""
    suite: str
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool
    informational: bool = False
