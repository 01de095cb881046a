"""Monic Chebyshev polynomials of the second kind.

``U_0 = 1``, ``U_1 = X`` and ``U_{k+1} = X U_k - U_{k-1}``, so that
``U_s(2) = s + 1`` and every zero lies in ``(-2, 2)``.  Everything here is
exact: arguments are rationals (``fractions.Fraction``) or elements of
``Z[sqrt(N)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .quadratic import QuadraticValue

MAX_ZERO_DEGREE = 64


class UnsupportedSizeError(ValueError):
    pass


@dataclass(frozen=True)
class RootEnclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x: object) -> bool:
        return self.lo <= x <= self.hi  # type: ignore[operator]


def _check_degree(s: int) -> None:
    if s < 0:
        raise ValueError(f"degree must be nonnegative, got {s}")


def cheb_pair(s: int, x: Fraction | int) -> tuple[Fraction, Fraction]:
    """Return ``(U_s(x), U_s'(x))`` by the coupled three-term recurrence."""
    _check_degree(s)
    x = Fraction(x)
    if s == 0:
        return Fraction(1), Fraction(0)
    if x.denominator == 1:
        # integer fast path; identical values, no gcd work per step
        n = x.numerator
        ui_prev, ui, di_prev, di = 1, n, 0, 1
        for _ in range(s - 1):
            ui_prev, ui, di_prev, di = ui, n * ui - ui_prev, di, ui + n * di - di_prev
        return Fraction(ui), Fraction(di)
    u_prev, u = Fraction(1), x
    d_prev, d = Fraction(0), Fraction(1)
    for _ in range(s - 1):
        u_prev, u, d_prev, d = u, x * u - u_prev, d, u + x * d - d_prev
    return u, d


def cheb_coeff_eval(s: int, x: Fraction | int) -> Fraction:
    """Evaluate ``U_s(x)`` from its explicit binomial expansion."""
    _check_degree(s)
    x = Fraction(x)
    return sum(
        ((-1) ** p * comb(s - p, p) * x ** (s - 2 * p) for p in range(s // 2 + 1)),
        Fraction(0),
    )


def cheb_coeff_deriv(s: int, x: Fraction | int) -> Fraction:
    """Evaluate ``U_s'(x)`` by term-wise differentiation of the expansion."""
    _check_degree(s)
    x = Fraction(x)
    return sum(
        (
            (-1) ** p * comb(s - p, p) * (s - 2 * p) * x ** (s - 2 * p - 1)
            for p in range(s // 2 + 1)
            if s - 2 * p > 0
        ),
        Fraction(0),
    )


def cheb_at_sqrt(m: int, N: int) -> tuple[QuadraticValue, QuadraticValue]:
    """Return ``(U_m(sqrt N), U_m'(sqrt N))`` exactly in ``Z[sqrt N]``."""
    _check_degree(m)
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if m == 0:
        return QuadraticValue(1, 0, N), QuadraticValue(0, 0, N)
    # (a, b) pairs for a + b sqrt N; multiplying by sqrt N maps (a, b) -> (b N, a)
    ua_prev, ub_prev, ua, ub = 1, 0, 0, 1
    da_prev, db_prev, da, db = 0, 0, 1, 0
    for _ in range(m - 1):
        ua_prev, ub_prev, ua, ub, da_prev, db_prev, da, db = (
            ua, ub, ub * N - ua_prev, ua - ub_prev,
            da, db, ua + db * N - da_prev, ub + da - db_prev,
        )
    return QuadraticValue(ua, ub, N), QuadraticValue(da, db, N)


def _scaled_sign(s: int, num: int, den: int) -> int:
    # sign of den^s * U_s(num/den), computed in integers
    v_prev, v = 1, num
    if s == 0:
        return 1
    d2 = den * den
    for _ in range(s - 1):
        v_prev, v = v, num * v - d2 * v_prev
    return (v > 0) - (v < 0)


def _sign_at(s: int, x: Fraction) -> int:
    return _scaled_sign(s, x.numerator, x.denominator)


def _bisect(s: int, lo: Fraction, hi: Fraction, s_lo: int, eps: Fraction) -> RootEnclosure:
    while hi - lo > eps:
        mid = (lo + hi) / 2
        sm = _sign_at(s, mid)
        if sm == 0:
            return RootEnclosure(mid, mid)
        if sm == s_lo:
            lo = mid
        else:
            hi = mid
    return RootEnclosure(lo, hi)


def cheb_zeros(s: int, eps: Fraction | int | str) -> list[RootEnclosure]:
    """Isolate the ``s`` simple zeros of ``U_s`` in ``[-2, 2]``.

    A uniform scan with step ``2/s^2`` finds sign changes using exact signs,
    then each bracket is bisected down to width ``eps``.  The scan step is
    halved until exactly ``s`` roots have been bracketed.
    """
    if s < 1:
        raise ValueError(f"degree must be at least 1, got {s}")
    if s > MAX_ZERO_DEGREE:
        raise UnsupportedSizeError(
            f"zero isolation supports degree <= {MAX_ZERO_DEGREE}, got {s}"
        )
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")

    steps = 2 * s * s
    while True:
        h = Fraction(4, steps)
        found: list[RootEnclosure | tuple[Fraction, Fraction, int]] = []
        last: tuple[Fraction, int] | None = None
        for k in range(steps + 1):
            x = -2 + k * h
            sg = _sign_at(s, x)
            if sg == 0:
                found.append(RootEnclosure(x, x))
                last = None
                continue
            if last is not None and last[1] != sg:
                found.append((last[0], x, last[1]))
            last = (x, sg)
        if len(found) == s:
            break
        steps *= 2

    return [
        r if isinstance(r, RootEnclosure) else _bisect(s, r[0], r[1], r[2], eps)
        for r in found
    ]
