"""模式和各項的補償累加。

每個區塊以 math.fsum 精確捨入相加；區塊間的累計值以基於無誤差
two-sum 變換的雙字累加器保存，結果與區塊順序無關。
"""
import math

import numpy as np


def two_sum(u, v):
    """無誤差變換：u + v == s + t 精確成立"""
    s = u + v
    up = s - v
    vpp = s - up
    up -= u
    vpp -= v
    t = -(up + vpp)
    return s, t


class CompensatedSum:
    """以 (high, low) 對保存的累計和"""

    def __init__(self, value=0.0):
        self._s = float(value)
        self._t = 0.0

    def add(self, value):
        y, u = two_sum(float(value), self._t)
        self._s, self._t = two_sum(y, self._s)
        if self._s == 0:
            self._s = u
        else:
            self._t += u
        return self

    def add_many(self, values):
        values = np.asarray(values, dtype=float)
        if values.size:
            self.add(math.fsum(values))
        return self

    @property
    def total(self):
        return self._s + self._t

    def __float__(self):
        return self.total
