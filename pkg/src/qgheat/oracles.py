"""Independent brute-force evaluations used to cross-check the closed forms.

Nothing here shares code paths with the quantities it checks: series are
summed term by term with a ratio-test tail bound, integrals go through
adaptive quadrature.
"""

from __future__ import annotations

import math
from collections.abc import Callable

from scipy import integrate

from .interval import CertifiedValue, ToleranceError, widen
from .spectrum import Family


def ratio_tail_series(
    term: Callable[[int], float], start: int, count: int
) -> CertifiedValue:
    """Enclose ``sum_{s >= start} term(s)`` for a positive, eventually log-concave sequence.

    Sums ``count`` terms, then bounds the rest geometrically by the ratio of
    the last two terms, which must be below 1 and nonincreasing onwards.
    """
    terms = [term(s) for s in range(start, start + count + 1)]
    head = math.fsum(terms[:-1])
    last, nxt = terms[-2], terms[-1]
    if last == 0.0:
        return widen(head, head)
    rho = nxt / last
    if not rho < 1.0:
        raise ToleranceError(f"ratio {rho} not below 1 after {count} terms")
    return widen(head, head + nxt / (1.0 - rho), chains=4)


def envelope_f_series(alpha: float, beta: float, gamma: float, t: float, count: int = 10_000) -> CertifiedValue:
    """``sum_{s>=0} (beta s + gamma)^2 exp(-2 alpha s t)`` term by term."""
    return ratio_tail_series(
        lambda s: (beta * s + gamma) ** 2 * math.exp(-2.0 * alpha * s * t), 0, count
    )


def cubic_series(family: Family, x: float, count: int = 2_000) -> CertifiedValue:
    """``sum_{s>=1} w_s^2 x^s`` with ``w_s = s+1`` (O) or ``2s+1`` (S)."""
    if family is Family.FreeOrthogonal:
        return ratio_tail_series(lambda s: (s + 1) ** 2 * x**s, 1, count)
    return ratio_tail_series(lambda s: (2 * s + 1) ** 2 * x**s, 1, count)


def gap_sum_o2(p: float, D: float, tau: float, count: int = 200) -> CertifiedValue:
    """``(p-1) sum_{s>=1} D^2 (s+1)^2 exp(-s(s+2) tau / 3)`` for O_2+ directly."""
    enc = ratio_tail_series(
        lambda s: D * D * (s + 1) ** 2 * math.exp(-s * (s + 2) * tau / 3.0), 1, count
    )
    return widen((p - 1) * enc.lo, (p - 1) * enc.hi)


def gaussian_second_moment() -> tuple[float, float]:
    """``int_0^inf u^2 exp(-u^2) du`` by adaptive quadrature, with its error estimate."""
    val, err = integrate.quad(
        lambda u: u * u * math.exp(-u * u), 0.0, math.inf, epsabs=1e-10, epsrel=0.0
    )
    return val, err
