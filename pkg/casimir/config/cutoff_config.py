import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

from casimir.exceptions import ParameterError


class CutoffFamily(Enum):
    EXPONENTIAL = "exponential"
    POWER_EXPONENTIAL = "power_exponential"
    TANH_HARD = "tanh_hard"
    NONE = "none"


@dataclass(frozen=True)
class CutoffSpec:
    """紫外截斷函數族及其參數"""
    family: CutoffFamily
    power: int = 1
    nu: Optional[float] = None

    def __post_init__(self):
        if self.family is CutoffFamily.POWER_EXPONENTIAL:
            if isinstance(self.power, bool) or not isinstance(self.power, int) or self.power < 1:
                raise ParameterError(f"power-exponential cutoff needs an integer power >= 1, got {self.power!r}")
        if self.nu is not None and not (math.isfinite(self.nu) and self.nu > 0):
            raise ParameterError(f"tanh smoothing width must be > 0, got {self.nu!r}")
        if self.nu is not None and self.family is not CutoffFamily.TANH_HARD:
            raise ParameterError("only the tanh cutoff carries a smoothing width")

    @classmethod
    def exponential(cls):
        return cls(CutoffFamily.EXPONENTIAL)

    @classmethod
    def power_exponential(cls, power: int):
        return cls(CutoffFamily.POWER_EXPONENTIAL, power=power)

    @classmethod
    def tanh_hard(cls, nu: Optional[float] = None):
        return cls(CutoffFamily.TANH_HARD, nu=nu)

    @classmethod
    def none(cls):
        return cls(CutoffFamily.NONE)

    @property
    def decays(self) -> bool:
        """權重在 j 很大時是否趨於零 (模式和收斂)"""
        return self.family is not CutoffFamily.NONE

    @property
    def analytic(self) -> bool:
        """j³·f 是否有 Maclaurin 展開資料 (指數族)"""
        return self.family in (CutoffFamily.EXPONENTIAL, CutoffFamily.POWER_EXPONENTIAL)

    @property
    def exponent(self) -> int:
        """指數族的冪次 p (一般指數為 1)"""
        return self.power if self.family is CutoffFamily.POWER_EXPONENTIAL else 1

    def smoothing(self, default: float) -> float:
        """tanh 平滑寬度 ν，未設定時使用問題的 ν"""
        return self.nu if self.nu is not None else default

    def label(self) -> str:
        if self.family is CutoffFamily.POWER_EXPONENTIAL:
            return f"exp(-(pi j/x)^{self.power})"
        if self.family is CutoffFamily.TANH_HARD:
            return "tanh step" if self.nu is None else f"tanh step (nu={self.nu:g})"
        return self.family.value


@dataclass(frozen=True)
class CutoffOption:
    spec: CutoffSpec
    description: str


# CLI 截斷名稱
CUTOFF_CHOICES: Dict[str, CutoffOption] = {
    'exp': CutoffOption(
        CutoffSpec.exponential(),
        "exp(-pi j/x), the classic exponential regulator"
    ),
    'exp4': CutoffOption(
        CutoffSpec.power_exponential(4),
        "exp(-(pi j/x)^4), quartic exponential regulator"
    ),
    'tanh': CutoffOption(
        CutoffSpec.tanh_hard(),
        "(1 - tanh((pi j - x)/nu))/2, smoothed hard cutoff at j = x/pi"
    ),
    'none': CutoffOption(
        CutoffSpec.none(),
        "no UV regulator, formal closed forms only"
    ),
}


def resolve_cutoff(name: str) -> CutoffSpec:
    """CLI 名稱 -> CutoffSpec"""
    try:
        return CUTOFF_CHOICES[name].spec
    except KeyError:
        raise ParameterError(f"unknown cutoff '{name}' (choose from {', '.join(CUTOFF_CHOICES)})") from None
