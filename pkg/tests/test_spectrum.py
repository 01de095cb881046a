from fractions import Fraction

import pytest

from qgheat.chebyshev import cheb_coeff_deriv, cheb_coeff_eval
from qgheat.spectrum import (
    Family,
    GroupKind,
    bound_report,
    eigenvalue,
    eigenvalue_floats,
    spectral_gap,
    spectral_line,
    spectral_table,
)

O = GroupKind.orthogonal
S = GroupKind.permutation


def test_group_kind_domain():
    with pytest.raises(ValueError):
        O(1)
    with pytest.raises(ValueError):
        S(3)
    with pytest.raises(TypeError):
        O(2.0)
    assert GroupKind.parse("s", 4) == S(4)


def test_o2_and_s4_closed_forms():
    for s in range(201):
        assert eigenvalue(O(2), s) == Fraction(-s * (s + 2), 6)
        assert eigenvalue(S(4), s) == Fraction(-s * (s + 1), 6)


@pytest.mark.parametrize("n", [2, 3, 7, 20])
def test_first_level(n):
    assert eigenvalue(O(n), 1) == Fraction(-1, n)
    if n >= 4:
        assert eigenvalue(S(n), 1) == Fraction(-1, n - 1)


def test_lines():
    line = spectral_line(O(2), 7)
    assert (line.dim, line.mult) == (8, 64)
    assert spectral_line(O(3), 2).dim == 8
    assert spectral_line(S(4), 1).dim == 3
    zero = spectral_line(S(9), 0)
    assert (zero.lambda_, zero.dim, zero.mult) == (0, 1, 1)


@pytest.mark.parametrize("kind", [O(2), O(5), S(4), S(7)])
def test_table_matches_single_evaluations(kind):
    table = spectral_table(kind, 60)
    for s, line in enumerate(table):
        assert line == spectral_line(kind, s)
    assert eigenvalue_floats(kind, 60) == tuple(float(line.lambda_) for line in table)


@pytest.mark.parametrize("n", [2, 3, 6, 11])
def test_eigenvalue_via_expansion_oracle(n):
    for s in range(61):
        assert eigenvalue(O(n), s) == -cheb_coeff_deriv(s, n) / cheb_coeff_eval(s, n)


@pytest.mark.parametrize("kind", [O(2), O(3), O(10), S(4), S(5), S(12)])
def test_monotone_and_nonpositive(kind):
    lams = [line.lambda_ for line in spectral_table(kind, 200)]
    assert lams[0] == 0
    assert all(a > b for a, b in zip(lams, lams[1:]))


@pytest.mark.parametrize("kind", [O(3), O(8), S(5), S(16)])
def test_dimension_growth(kind):
    dims = [line.dim for line in spectral_table(kind, 200)]
    assert dims[0] == 1
    assert all(b > a for a, b in zip(dims, dims[1:]))
    assert all(line.mult == line.dim**2 for line in spectral_table(kind, 200))


def test_bound_examples():
    r = bound_report(O(2), 5)
    assert r.lower == Fraction(5, 2) and not r.upper_finite and r.holds
    assert r.upper == float("inf")
    for n in (2, 3, 9):
        r = bound_report(O(n), 1)
        assert r.neg_lambda == r.lower == Fraction(1, n)
    r = bound_report(S(9), 1)
    assert (r.lower, r.neg_lambda, r.upper) == (Fraction(1, 9), Fraction(1, 8), Fraction(1, 3))
    assert r.holds
    with pytest.raises(ValueError):
        bound_report(O(3), 0)


def test_irrational_upper_bound_value():
    r = bound_report(S(5), 2)
    assert r.upper == pytest.approx(2 / (5 - 2 * 5**0.5), rel=1e-14)
    assert r.holds


def test_bound_sweep():
    failures = [
        (n, s)
        for n in range(2, 21)
        for s in range(1, 201)
        if not bound_report(O(n), s).holds
    ]
    failures += [
        (n, s)
        for n in range(4, 21)
        for s in range(1, 201)
        if not bound_report(S(n), s).holds
    ]
    assert failures == []


def test_spectral_gap():
    assert spectral_gap(O(5)) == Fraction(1, 5)
    assert spectral_gap(S(4)) == Fraction(1, 4)
    assert spectral_gap(O(2)) == Fraction(1, 2) == -eigenvalue(O(2), 1)


def test_family_values():
    assert Family("O") is Family.FreeOrthogonal
    assert str(S(9)) == "S_9+"
