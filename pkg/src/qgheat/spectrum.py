"""Exact spectral data of the heat generators on O_N+ and S_N+.

On O_N+ the generator acts on the level-``s`` coefficients with eigenvalue
``-U_s'(N) / U_s(N)``; on S_N+ the eigenvalue is
``-U_{2s}'(sqrt N) / (2 sqrt N U_{2s}(sqrt N))``.  Both are rational.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .chebyshev import cheb_at_sqrt, cheb_pair
from .quadratic import QuadraticValue


class Family(enum.Enum):
    FreeOrthogonal = "O"
    FreePermutation = "S"


@dataclass(frozen=True)
class GroupKind:
    family: Family
    N: int

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or isinstance(self.N, bool):
            raise TypeError(f"N must be an int, got {self.N!r}")
        least = 2 if self.family is Family.FreeOrthogonal else 4
        if self.N < least:
            raise ValueError(
                f"{self.family.value}_N+ requires N >= {least}, got N={self.N}"
            )

    @classmethod
    def orthogonal(cls, N: int) -> GroupKind:
        return cls(Family.FreeOrthogonal, N)

    @classmethod
    def permutation(cls, N: int) -> GroupKind:
        return cls(Family.FreePermutation, N)

    @classmethod
    def parse(cls, family: str, N: int) -> GroupKind:
        return cls(Family(family.upper()), N)

    @property
    def is_orthogonal(self) -> bool:
        return self.family is Family.FreeOrthogonal

    def envelope_coefficients(self, constant: float) -> tuple[float, float]:
        """(beta, gamma) in ``||x||_inf <= (beta s + gamma) ||x||_2`` on level ``s``.

        ``constant`` is D_N for O_N+ (level bound ``D (s+1)``) and C_N for
        S_N+ (level bound ``C (2s+1)``).
        """
        if self.is_orthogonal:
            return constant, constant
        return 2 * constant, constant

    def __str__(self) -> str:
        return f"{self.family.value}_{self.N}+"


@dataclass(frozen=True)
class SpectralLine:
    s: int
    lambda_: Fraction
    dim: int
    mult: int


@dataclass(frozen=True)
class BoundReport:
    """Exact check of ``lower <= -lambda_s <= upper``.

    The upper bound is stored as ``upper_num / upper_den`` with
    ``upper_num`` in ``Z[sqrt N]``; it is meaningless when
    ``upper_finite`` is false.
    """

    kind: GroupKind
    s: int
    neg_lambda: Fraction
    lower: Fraction
    upper_num: QuadraticValue
    upper_den: int
    upper_finite: bool
    holds: bool

    @property
    def upper(self) -> Fraction | float:
        if not self.upper_finite:
            return float("inf")
        num = self.upper_num
        if num.is_rational():
            return Fraction(num.a + num.b * isqrt(num.radicand), self.upper_den)
        return float(self.upper_num) / self.upper_den


def _check_level(s: int) -> None:
    if s < 0:
        raise ValueError(f"level must be nonnegative, got {s}")


def _line(kind: GroupKind, s: int) -> tuple[Fraction, int]:
    if kind.is_orthogonal:
        u, du = cheb_pair(s, kind.N)
        return -du / u, int(u)
    u, du = cheb_at_sqrt(2 * s, kind.N)
    # parity: U_{2s}(sqrt N) is an integer, U_{2s}'(sqrt N) is an integer times sqrt N
    assert u.b == 0 and du.a == 0
    return Fraction(-du.b, 2 * u.a), u.a


def eigenvalue(kind: GroupKind, s: int) -> Fraction:
    _check_level(s)
    return _line(kind, s)[0]


def spectral_line(kind: GroupKind, s: int) -> SpectralLine:
    _check_level(s)
    lam, dim = _line(kind, s)
    return SpectralLine(s=s, lambda_=lam, dim=dim, mult=dim * dim)


@lru_cache(maxsize=256)
def spectral_table(kind: GroupKind, smax: int) -> tuple[SpectralLine, ...]:
    """Spectral lines ``0..smax`` from a single pass of the recurrence."""
    _check_level(smax)
    if kind.is_orthogonal:
        x, scale = kind.N, 1
        u_prev, u, d_prev, d = 1, x, 0, 1
    else:
        # work with U_{2k}(sqrt N) directly: even-index values are integers and
        # even-index derivatives are integers times sqrt N
        x = QuadraticValue.sqrt(kind.N)
        u_prev, u = QuadraticValue(1, 0, kind.N), x
        d_prev, d = QuadraticValue(0, 0, kind.N), QuadraticValue(1, 0, kind.N)
        scale = 2
    lines = [SpectralLine(0, Fraction(0), 1, 1)]
    deg = 1
    for s in range(1, smax + 1):
        while deg < scale * s:
            u_prev, u, d_prev, d = u, x * u - u_prev, d, u + x * d - d_prev
            deg += 1
        if kind.is_orthogonal:
            lam, dim = Fraction(-d, u), u
        else:
            lam, dim = Fraction(-d.b, 2 * u.a), u.a
        lines.append(SpectralLine(s, lam, dim, dim * dim))
    return tuple(lines)


@lru_cache(maxsize=256)
def eigenvalue_floats(kind: GroupKind, smax: int) -> tuple[float, ...]:
    """Correctly rounded doubles of ``lambda_0..lambda_smax``."""
    return tuple(float(line.lambda_) for line in spectral_table(kind, smax))


def bound_report(kind: GroupKind, s: int) -> BoundReport:
    """Exact check of the two-sided eigenvalue bound at level ``s >= 1``."""
    if s < 1:
        raise ValueError("eigenvalue bounds are stated for s >= 1")
    N = kind.N
    r = -eigenvalue(kind, s)
    lower = Fraction(s, N)
    ok_lower = lower <= r
    if kind.is_orthogonal:
        finite = N > 2
        num = QuadraticValue(s, 0, N)
        den = N - 2
        ok_upper = (not finite) or r <= Fraction(s, den)
    else:
        # s / (N - 2 sqrt N) = s (N + 2 sqrt N) / (N^2 - 4N)
        finite = N > 4
        num = QuadraticValue(s * N, 2 * s, N)
        den = N * N - 4 * N
        p, q = r.numerator, r.denominator
        # r (N - 2 sqrt N) <= s  <=>  (s q - p N) + 2 p sqrt N >= 0
        ok_upper = (not finite) or QuadraticValue(s * q - p * N, 2 * p, N).sign() >= 0
    return BoundReport(
        kind=kind,
        s=s,
        neg_lambda=r,
        lower=lower,
        upper_num=num,
        upper_den=den,
        upper_finite=finite,
        holds=ok_lower and ok_upper,
    )


def spectral_gap(kind: GroupKind, s_check: int = 200) -> Fraction:
    """The spectral-gap constant ``1/N``, checked against levels ``1..s_check``."""
    gap = Fraction(1, kind.N)
    table = spectral_table(kind, s_check)
    worst = min((-line.lambda_ for line in table[1:]), default=gap)
    if worst < gap:
        raise ArithmeticError(f"spectral gap violated on {kind}: {worst} < {gap}")
    return gap
