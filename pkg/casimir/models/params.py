import math
from dataclasses import dataclass

from casimir.exceptions import ParameterError


@dataclass(frozen=True)
class ReducedParams:
    """無因次問題參數。

    x  = dΛ      紫外尺度
    κ  = d·k_c/π 紅外截斷，α = k_c·d = πκ
    ν  = dμ      tanh 平滑寬度

    由這些參數計算的壓力皆為約化壓力 p·d⁴。
    """
    x: float = 50.0
    kappa: float = 0.0
    nu: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and self.x > 0):
            raise ParameterError(f"x must be a finite number > 0, got {self.x!r}")
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise ParameterError(f"kappa must be a finite number >= 0, got {self.kappa!r}")
        if not (math.isfinite(self.nu) and self.nu > 0):
            raise ParameterError(f"nu must be a finite number > 0, got {self.nu!r}")

    @classmethod
    def from_alpha(cls, alpha: float, x: float = 50.0, nu: float = 1.0):
        return cls(x=x, kappa=alpha / math.pi, nu=nu)

    @property
    def alpha(self) -> float:
        return math.pi * self.kappa

    @property
    def mode_scale(self) -> float:
        """每個模式指標的約化動量 t = π/x"""
        return math.pi / self.x

    def with_x(self, x: float):
        return ReducedParams(x=x, kappa=self.kappa, nu=self.nu)

    def with_kappa(self, kappa: float):
        return ReducedParams(x=self.x, kappa=kappa, nu=self.nu)

    def with_nu(self, nu: float):
        return ReducedParams(x=self.x, kappa=self.kappa, nu=nu)
