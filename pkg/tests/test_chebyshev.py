import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgheat.chebyshev import (
    UnsupportedSizeError,
    cheb_at_sqrt,
    cheb_coeff_deriv,
    cheb_coeff_eval,
    cheb_pair,
    cheb_zeros,
)
from qgheat.checks import interlaces
from qgheat.quadratic import QuadraticValue

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def test_pair_examples():
    assert cheb_pair(5, 2) == (6, 35)
    assert cheb_pair(0, Fraction(17, 3)) == (1, 0)
    assert cheb_pair(2, 3) == (8, 6)


def test_coeff_examples():
    assert cheb_coeff_eval(3, 2) == 4
    assert cheb_coeff_eval(1, 7) == 7
    assert cheb_coeff_eval(4, 0) == 1


def test_pair_integer_and_rational_paths_agree():
    for s in range(30):
        assert cheb_pair(s, 3) == cheb_pair(s, Fraction(6, 2))
        assert cheb_pair(s, Fraction(7, 3)) == (
            cheb_coeff_eval(s, Fraction(7, 3)),
            cheb_coeff_deriv(s, Fraction(7, 3)),
        )


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        cheb_pair(-1, 2)


def test_oracle_equivalence_random():
    rnd = random.Random(1)
    xs = [Fraction(rnd.randint(-99, 99), rnd.randint(1, 30)) for _ in range(50)]
    for s in range(61):
        for x in xs:
            assert cheb_pair(s, x)[0] == cheb_coeff_eval(s, x)


@given(st.integers(0, 60), rationals)
def test_parity(s, x):
    assert cheb_pair(s, -x)[0] == (-1) ** s * cheb_pair(s, x)[0]
    assert cheb_pair(s, -x)[1] == (-1) ** (s + 1) * cheb_pair(s, x)[1]


def test_values_at_two():
    for s in range(501):
        u, du = cheb_pair(s, 2)
        assert u == s + 1
        assert du == Fraction(s * (s + 1) * (s + 2), 6)


def test_at_sqrt_examples():
    assert cheb_at_sqrt(2, 5) == (QuadraticValue(4, 0, 5), QuadraticValue(0, 2, 5))
    for n in (2, 3, 11):
        assert cheb_at_sqrt(1, n)[0] == QuadraticValue(0, 1, n)
    assert cheb_at_sqrt(2, 4)[0] == QuadraticValue(3, 0, 4)


@pytest.mark.parametrize("n", [2, 4, 5, 9, 13])
def test_at_sqrt_parity_and_perfect_square_check(n):
    for m in range(40):
        u, du = cheb_at_sqrt(m, n)
        if m % 2 == 0:
            assert u.b == 0 and du.a == 0
        else:
            assert u.a == 0 and du.b == 0
    # at perfect squares the Z[sqrt N] value must match rational evaluation
    if n in (4, 9):
        r = int(n**0.5)
        for m in range(40):
            u, du = cheb_at_sqrt(m, n)
            assert u.a + u.b * r == cheb_pair(m, r)[0]
            assert du.a + du.b * r == cheb_pair(m, r)[1]


def test_zeros_small_cases():
    (z,) = cheb_zeros(1, Fraction(1, 100))
    assert 0 in z
    lo, hi = cheb_zeros(2, Fraction(1, 100))
    assert -1 in lo and 1 in hi
    eps = Fraction(1, 10**9)
    a, b, c = cheb_zeros(3, eps)
    assert a.hi ** 2 <= 2 <= a.lo ** 2 and a.hi < 0
    assert 0 in b
    assert c.lo ** 2 <= 2 <= c.hi ** 2 and c.lo > 0


@pytest.mark.parametrize("s", [1, 2, 7, 16, 33, 64])
def test_zero_enclosure_properties(s):
    eps = Fraction(1, 10**12)
    zs = cheb_zeros(s, eps)
    assert len(zs) == s
    for z in zs:
        assert -2 <= z.lo <= z.hi <= 2
        assert z.width <= eps
    for a, b in zip(zs, zs[1:]):
        assert a.hi < b.lo


def test_root_product_identity():
    for s in range(1, 21):
        prod = Fraction(1)
        for z in cheb_zeros(s, Fraction(1, 10**12)):
            prod *= z.mid
        assert abs(float(prod) - (-1) ** s * float(cheb_coeff_eval(s, 0))) <= 1e-6


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 40))
def test_interlacing(s):
    eps = Fraction(1, 10**10)
    assert interlaces(cheb_zeros(s, eps), cheb_zeros(s + 1, eps))


def test_zeros_size_limit():
    with pytest.raises(UnsupportedSizeError):
        cheb_zeros(65, Fraction(1, 10))
    with pytest.raises(ValueError):
        cheb_zeros(3, 0)
