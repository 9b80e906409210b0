import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from casimir.utils.summation import CompensatedSum, two_sum

finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False, allow_infinity=False)
terms = st.lists(st.floats(min_value=-1e3, max_value=1e3, allow_nan=False), min_size=1, max_size=60)


@given(finite, finite)
def test_two_sum_is_error_free(u, v):
    s, t = two_sum(u, v)
    assert Fraction(s) + Fraction(t) == Fraction(u) + Fraction(v)


def test_recovers_cancelled_unit():
    acc = CompensatedSum()
    for v in (1e16, 1.0, -1e16):
        acc.add(v)
    assert acc.total == 1.0


@given(terms, st.randoms(use_true_random=False))
def test_order_independent(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    forward = CompensatedSum()
    for v in values:
        forward.add(v)
    permuted = CompensatedSum()
    for v in shuffled:
        permuted.add(v)
    scale = math.fsum(abs(v) for v in values) or 1.0
    assert abs(forward.total - permuted.total) <= 1e-14 * scale
    assert abs(forward.total - math.fsum(values)) <= 1e-14 * scale


def test_add_many_blocks_match_fsum():
    rng = np.random.default_rng(7)
    values = rng.standard_normal(10_000) * 10.0 ** rng.integers(-8, 8, 10_000)
    acc = CompensatedSum()
    for block in np.array_split(values, 13):
        acc.add_many(block)
    assert float(acc) == pytest.approx(math.fsum(values), rel=1e-15, abs=1e-15)


def test_empty_block_is_noop():
    acc = CompensatedSum(2.5).add_many([])
    assert acc.total == 2.5
