from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qheis.series import TruncatedSeries, TruncationMismatch, exp_series, sinh_over

T = (3, 3)
h = TruncatedSeries.h(T)
w = TruncatedSeries.w(T)


def series(t=T, max_den=5):
    kh, kw = t
    key = st.tuples(st.integers(0, kh - 1), st.integers(0, kw - 1))
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=max_den)
    return st.dictionaries(key, coeff, max_size=6).map(lambda d: TruncatedSeries(d, t))


def nilpotent(t=T):
    return series(t).map(lambda s: s - s.constant)


def test_add_examples():
    assert (h + w).coeffs == {(1, 0): 1, (0, 1): 1}
    assert (h + (-h)).is_zero()
    assert (1 + h * w) + h * w == 1 + 2 * h * w


def test_mul_examples():
    assert h * w == TruncatedSeries.monomial(1, 1, 1, T)
    t2 = (2, 2)
    assert (TruncatedSeries.h(t2) * TruncatedSeries.h(t2)).is_zero()
    assert (1 + h) * (1 - h) == 1 - h * h


def test_exp_examples():
    assert exp_series(TruncatedSeries.zero(T)) == TruncatedSeries.one(T)
    assert exp_series(h) == 1 + h + h * h / 2
    t2 = (2, 2)
    hw = TruncatedSeries.h(t2) * TruncatedSeries.w(t2)
    assert exp_series(hw) == 1 + hw


def test_exp_rejects_constant_term():
    with pytest.raises(ValueError):
        exp_series(1 + h)


def test_sinh_over_examples():
    t = (4, 1)
    one = TruncatedSeries.one(t)
    hh = TruncatedSeries.h(t)
    assert sinh_over(one, "h") == 1 + hh * hh / 6
    assert sinh_over(TruncatedSeries.zero(t), "h").is_zero()
    assert sinh_over(2 * one, "h") == 2 + Fraction(8, 6) * hh * hh


def test_canonical_form_drops_zeros_and_out_of_range():
    s = TruncatedSeries({(0, 0): 0, (5, 0): 3, (1, 1): 2}, T)
    assert s.coeffs == {(1, 1): Fraction(2)}


def test_truncation_mismatch_raises():
    with pytest.raises(TruncationMismatch):
        TruncatedSeries.h((2, 2)) + TruncatedSeries.h((3, 3))


def test_inverse_and_evaluate():
    x = 1 + h + w * w
    assert x * x.inverse() == TruncatedSeries.one(T)
    assert (h * w).evaluate(2, 3) == 6


@given(series(), series(), series())
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + y == y + x


@given(nilpotent())
def test_exp_inverse_pair(x):
    assert exp_series(x) * exp_series(-x) == TruncatedSeries.one(T)


@given(series((4, 4)), series((4, 4)))
def test_truncation_is_a_homomorphism(x, y):
    assert (x * y).truncate(T) == x.truncate(T) * y.truncate(T)
    assert (x + y).truncate(T) == x.truncate(T) + y.truncate(T)
