import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgheat.quadratic import QuadraticValue

ints = st.integers(min_value=-10**6, max_value=10**6)
radicands = st.integers(min_value=1, max_value=50)


def test_product_rule():
    x = QuadraticValue(2, 3, 5)
    y = QuadraticValue(-1, 4, 5)
    assert x * y == QuadraticValue(2 * -1 + 3 * 4 * 5, 2 * 4 + -1 * 3, 5)


def test_int_coercion():
    x = QuadraticValue(1, 1, 2)
    assert x + 1 == QuadraticValue(2, 1, 2)
    assert 3 * x == QuadraticValue(3, 3, 2)
    assert 1 - x == QuadraticValue(0, -1, 2)


def test_mismatched_radicands():
    with pytest.raises(ValueError):
        QuadraticValue(1, 1, 2) + QuadraticValue(1, 1, 3)


def test_sqrt_squares_to_radicand():
    r = QuadraticValue.sqrt(7)
    assert r * r == QuadraticValue(7, 0, 7)


@pytest.mark.parametrize(
    "a,b,n,expected",
    [
        (0, 0, 5, 0),
        (3, -1, 9, 0),  # 3 - sqrt 9
        (3, -1, 8, 1),
        (2, -1, 5, -1),
        (-5, 2, 6, -1),
        (-4, 2, 5, 1),
    ],
)
def test_sign_cases(a, b, n, expected):
    assert QuadraticValue(a, b, n).sign() == expected


@given(ints, ints, radicands)
def test_sign_agrees_with_float_when_clear(a, b, n):
    x = QuadraticValue(a, b, n)
    approx = a + b * math.sqrt(n)
    if abs(approx) > 1e-6 * (abs(a) + abs(b) * math.sqrt(n) + 1):
        assert x.sign() == (1 if approx > 0 else -1)


@given(ints, ints, ints, ints, radicands)
def test_norm_is_multiplicative(a, b, c, d, n):
    x, y = QuadraticValue(a, b, n), QuadraticValue(c, d, n)
    assert (x * y).norm() == x.norm() * y.norm()


@given(ints, ints, radicands)
def test_sign_of_product_with_conjugate(a, b, n):
    x = QuadraticValue(a, b, n)
    assert (x * x.conjugate()).sign() == (1 if x.norm() > 0 else -1 if x.norm() < 0 else 0)
