"""Ultracontractivity envelopes.

If the level-``s`` eigenvalues satisfy ``lambda_s <= -alpha s`` and
``||x||_inf <= (beta s + gamma) ||x||_2`` on level ``s``, then
``||T_t||_{2->inf} <= sqrt(f(t))`` with

    f(t) = sum_{s>=0} (beta s + gamma)^2 exp(-2 alpha s t)

which has a closed form through the first three exponential moments.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .interval import SLACK, CertifiedValue, ToleranceError, widen
from .spectrum import GroupKind

MAX_GAUSSIAN_TERMS = 10**8


@dataclass(frozen=True)
class EnvelopeParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.beta < 0 or self.gamma < 0:
            raise ValueError("beta and gamma must be nonnegative")
        if self.beta + self.gamma <= 0:
            raise ValueError("beta and gamma cannot both vanish")


def _require_positive(name: str, x: float) -> None:
    if not x > 0:
        raise ValueError(f"{name} must be positive, got {x}")


def exp_series_moments(
    lam: float,
) -> tuple[CertifiedValue, CertifiedValue, CertifiedValue]:
    """Enclosures of ``sum_k k^j exp(-lam k)`` over ``k >= 0`` for ``j = 0, 1, 2``."""
    _require_positive("lam", lam)
    e = math.exp(-lam)
    om = -math.expm1(-lam)
    s0 = 1.0 / om
    s1 = e / (om * om)
    s2 = e * (1.0 + e) / (om * om * om)
    return CertifiedValue.point(s0), CertifiedValue.point(s1), CertifiedValue.point(s2)


def envelope_f(params: EnvelopeParams, t: float) -> CertifiedValue:
    _require_positive("t", t)
    a, b, g = params.alpha, params.beta, params.gamma
    e = math.exp(-2.0 * a * t)
    om = -math.expm1(-2.0 * a * t)
    num = b * b * e * (1.0 + e) + 2.0 * b * g * e * om + g * g * om * om
    return CertifiedValue.point(num / (om * om * om))


def group_params(kind: GroupKind, constant: float) -> EnvelopeParams:
    """Envelope parameters: ``(1/N, D, D)`` on O_N+ and ``(1/N, 2C, C)`` on S_N+."""
    if constant < 1:
        raise ValueError(f"the level-norm constant is at least 1, got {constant}")
    beta, gamma = kind.envelope_coefficients(constant)
    return EnvelopeParams(alpha=1.0 / kind.N, beta=beta, gamma=gamma)


def envelope_for_group(kind: GroupKind, constant: float, t: float) -> CertifiedValue:
    return envelope_f(group_params(kind, constant), t)


def l1_linf_envelope(params: EnvelopeParams, t: float) -> CertifiedValue:
    """Bound on ``||T_t||_{1->inf}``: the 2->inf envelope ``f`` at ``t/2``."""
    _require_positive("t", t)
    return envelope_f(params, t / 2.0)


def _gaussian_tail(S: int, k: float) -> float:
    # int_S^inf u^2 exp(-k u^2) du + S^2 exp(-k S^2); dominates the sum over s > S
    # whenever S lies past the maximum of u^2 exp(-k u^2)
    ek = math.exp(-k * S * S)
    integral = S * ek / (2.0 * k) + math.sqrt(math.pi) / (4.0 * k**1.5) * math.erfc(
        S * math.sqrt(k)
    )
    return integral + S * S * ek


def width_floor(value: CertifiedValue, tol: float) -> float:
    """Attainable width: ``tol``, but never below the rounding slack of ``value``."""
    return max(tol, 8.0 * SLACK * max(abs(value.lo), abs(value.hi)))


def gaussian_moment_sum(t: float, tol: float) -> CertifiedValue:
    """Enclosure of ``sum_{s>=1} s^2 exp(-s^2 t / 3)``.

    The width is at most ``tol`` unless that is below the rounding floor
    ``8 * SLACK * |value|``.
    """
    _require_positive("t", t)
    _require_positive("tol", tol)
    k = t / 3.0
    S = math.ceil(math.sqrt(3.0 / t)) + 1
    while _gaussian_tail(S, k) > tol / 2.0:
        S *= 2
        if S > MAX_GAUSSIAN_TERMS:
            raise ToleranceError(f"gaussian tail above {tol / 2} after {S} terms")
    s = np.arange(1, S + 1, dtype=float)
    head = math.fsum((s * s * np.exp(-k * s * s)).tolist())
    out = widen(head, head + _gaussian_tail(S, k))
    if out.width > width_floor(out, tol):
        raise ToleranceError(f"width {out.width:.3g} exceeds tol {tol:.3g}")
    return out


def envelope_g_O2(D: float, t: float, tol: float) -> CertifiedValue:
    """Sharper O_2+ envelope ``g(t) = 4 D^2 sum_{s>=1} s^2 exp(-s^2 t/3) + D^2``."""
    _require_positive("D", D)
    _require_positive("tol", tol)
    d2 = D * D
    inner = gaussian_moment_sum(t, tol / (4.0 * d2) / (1.0 + 2**-20))
    out = widen(4.0 * d2 * inner.lo + d2, 4.0 * d2 * inner.hi + d2)
    if out.width > width_floor(out, tol):
        raise ToleranceError(f"width {out.width:.3g} exceeds tol {tol:.3g}")
    return out


Envelope = Callable[[float], "CertifiedValue | float"]


def dimension_estimate(
    envelope: Envelope, t_lo: float, t_hi: float, npoints: int
) -> float:
    """Return ``-2 * slope`` of ``log envelope(t)`` against ``log t``.

    The slope is the ordinary least-squares fit over ``npoints``
    log-spaced times in ``[t_lo, t_hi]``; for an L1->Linf bound behaving
    like ``t^(-d/2)`` this recovers ``d``.
    """
    if not 0 < t_lo < t_hi:
        raise ValueError("need 0 < t_lo < t_hi")
    if npoints < 3:
        raise ValueError("need at least 3 points")
    ts = np.geomspace(t_lo, t_hi, npoints)
    vals = []
    for t in ts:
        v = envelope(float(t))
        vals.append(v.mid if isinstance(v, CertifiedValue) else float(v))
    slope, _ = np.polyfit(np.log(ts), np.log(vals), 1)
    return float(-2.0 * slope)
