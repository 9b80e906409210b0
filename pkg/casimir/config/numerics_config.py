import math
from fractions import Fraction
from typing import Dict, Tuple

# 理想約化卡西米爾壓力 p·d⁴
IDEAL_PRESSURE: float = -math.pi ** 2 / 240

# Σ_{j>=0} G - ∫_0^∞ G 的 Euler-Maclaurin 項，格式為 (導數階數, 帶號權重)
EM_TERMS: Tuple[Tuple[int, Fraction], ...] = (
    (1, Fraction(-1, 12)),
    (3, Fraction(1, 30 * math.factorial(4))),
    (5, Fraction(-1, 42 * math.factorial(6))),
    (7, Fraction(1, 30 * math.factorial(8))),
    (9, Fraction(-5, 66 * math.factorial(10))),
)
MAX_EM_ORDER: int = 9
MAX_MACLAURIN_ORDER: int = 12

# 模式和
SUM_REL_TOL: float = 1e-13
PRESSURE_SUM_REL_TOL: float = 1e-20
SUM_J_MAX: int = 10 ** 7
SUM_BLOCK: int = 4096
GENERIC_TAIL_SAFETY: float = 10.0
WEIGHT_FLOOR: float = 1e-300
MIN_CLOSED_FORM_X: float = 1e-3

# 數值積分
QUAD_REL_TOL: float = 1e-12
QUAD_LIMIT: int = 400
ABEL_PLANA_Y_MAX: float = 60.0
SMALL_Y_GUARD: float = 1e-8
TANH_PANEL_SPAN: float = 5.0

# 擬合
MAX_FIT_CONDITION: float = 1e12
MIN_DECAY_SAMPLES: int = 4
MIN_POWER_LAW_SAMPLES: int = 3

# 在 (0, 3) 上搜尋排斥區間
ROOT_SCAN: Dict[str, float] = {
    'start': 0.0,
    'stop': 3.0,
    'step': 0.01,
}

MAX_BOSE_ORDER: int = 9
MAX_SHIFT_ORDER: int = 3
