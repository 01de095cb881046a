"""Hypercontractivity times, the R_p series, the D_N bound and log-Sobolev data.

The semigroup maps L^2 into L^p contractively from any time ``tau`` with

    G(tau) = (p - 1) * sum_{s>=1} (beta s + gamma)^2 exp(2 lambda_s tau) <= 1.

Three sufficient times are computed: the certified root of ``G = 1`` with
exact eigenvalues (``series``), the root obtained after replacing
``lambda_s`` by ``-s/N`` which reduces to a cubic (``cubic``), and the
closed linear-in-``log(p-1)`` bound valid for ``p >= 4`` (``linear``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .contractivity import exp_series_moments
from .interval import CertifiedValue, ToleranceError, widen
from .spectrum import Family, GroupKind, eigenvalue_floats

MAX_LEVELS = 1 << 16
MAX_RP_TERMS = 1 << 22
MAX_DN_FACTORS = 10**6
MIN_GAP_TOL = 1e-13

# exponent constants of the linear bound: 3^c = 4 + 2 sqrt 3 and z = 3^-d solves 4z^2 - 11z + 1 = 0
LINEAR_C = 2.0 * math.log(math.sqrt(3.0) + 1.0) / math.log(3.0)
LINEAR_D = (math.log(11.0 + math.sqrt(105.0)) - math.log(2.0)) / math.log(3.0)


@dataclass(frozen=True)
class HypParams:
    p: float
    constant: float = 1.0

    def __post_init__(self) -> None:
        if not self.p > 2:
            raise ValueError(f"target exponent must exceed 2, got {self.p}")
        if not self.constant >= 1:
            raise ValueError(f"level-norm constant must be >= 1, got {self.constant}")


@dataclass(frozen=True)
class TauResult:
    tau: CertifiedValue
    method: str
    certified: bool = True
    notes: tuple[str, ...] = field(default=())


def linear_constant(family: Family) -> CertifiedValue:
    return CertifiedValue.point(
        LINEAR_C if family is Family.FreeOrthogonal else LINEAR_D, chains=2
    )


# --------------------------------------------------------------------------
# gap sum and its certified root


def _split_index(kind: GroupKind, params: HypParams, tau: float) -> int:
    beta, gamma = kind.envelope_coefficients(params.constant)
    s0 = 32
    for _ in range(2):
        need = kind.N * (math.log(params.p - 1) + 2 * math.log(beta * s0 + gamma)) / tau
        s0 = max(32, math.ceil(need))
    return s0


def hyper_gap_sum(
    kind: GroupKind, params: HypParams, tau: float, tol: float = 1e-12
) -> CertifiedValue:
    """Certified enclosure of ``G(tau)``.

    Levels up to a split index use exact eigenvalues; beyond it the
    domination ``lambda_s <= -s/N`` bounds the tail in closed form.
    """
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    beta, gamma = kind.envelope_coefficients(params.constant)
    pm1 = params.p - 1
    lam = 2.0 * tau / kind.N
    m0, m1, m2 = (m.hi for m in exp_series_moments(lam))
    S = min(_split_index(kind, params, tau), MAX_LEVELS)
    while True:
        # sum_{s>S} (beta s + gamma)^2 x^s = x^{S+1} sum_k (beta k + A)^2 x^k
        A = beta * (S + 1) + gamma
        tail = math.exp(-lam * (S + 1)) * (
            beta * beta * m2 + 2.0 * beta * A * m1 + A * A * m0
        )
        tail *= pm1 * (1 + 2**-30)
        if tail <= tol / 2:
            break
        if S >= MAX_LEVELS:
            raise ToleranceError(f"gap-sum tail {tail:.3g} above {tol / 2:.3g}")
        S = min(2 * S, MAX_LEVELS)
    s = np.arange(1, S + 1, dtype=float)
    lams = np.asarray(eigenvalue_floats(kind, S)[1:])
    terms = (beta * s + gamma) ** 2 * np.exp(2.0 * tau * lams)
    head = pm1 * math.fsum(terms.tolist())
    return widen(head, head + tail, chains=2)


def tau_series(kind: GroupKind, params: HypParams, tol: float = 1e-9) -> TauResult:
    """Certified bracket ``[lo, hi]`` of the root of ``G = 1``.

    On return ``G(lo) >= 1 >= G(hi)`` holds enclosure-wise, and
    ``hi - lo <= tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    gtol = 1e-12

    def G(t: float) -> CertifiedValue:
        return hyper_gap_sum(kind, params, t, gtol)

    hi = tau_cubic(kind, params, tol=max(tol, 1e-6)).tau.hi
    while not G(hi).hi <= 1.0:
        hi *= 2.0
    lo = hi / 2.0
    while not G(lo).lo >= 1.0:
        hi, lo = lo, lo / 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        g = G(mid)
        if g.hi <= 1.0:
            hi = mid
        elif g.lo >= 1.0:
            lo = mid
        elif gtol > MIN_GAP_TOL:
            gtol /= 16.0
        else:
            # G(mid) is 1 to working precision: step off mid on both sides
            a, b = max(lo, mid - tol / 4), min(hi, mid + tol / 4)
            moved = False
            if a > lo and G(a).lo >= 1.0:
                lo, moved = a, True
            if b < hi and G(b).hi <= 1.0:
                hi, moved = b, True
            if not moved:
                break
    if hi - lo > tol:
        raise ToleranceError(f"tau bracket width {hi - lo:.3g} exceeds {tol:.3g}")
    return TauResult(CertifiedValue(lo, hi), "series")


# --------------------------------------------------------------------------
# cubic reduction


def cubic_numerator(family: Family) -> tuple[int, int, int, int]:
    """Coefficients (x^3, x^2, x, 1) of the closed-form numerator."""
    if family is Family.FreeOrthogonal:
        return (1, -3, 4, 0)
    return (1, -2, 9, 0)


def cubic_closed_form(family: Family, x: Fraction | float) -> Fraction | float:
    """``num(x) / (1-x)^3``, equal to ``sum_{s>=1} w_s^2 x^s`` on ``(0, 1)``."""
    a3, a2, a1, a0 = cubic_numerator(family)
    return (((a3 * x + a2) * x + a1) * x + a0) / (1 - x) ** 3


def cubic_rhs(params: HypParams) -> Fraction:
    """``1 / ((p-1) constant^2)`` as an exact rational of the double inputs."""
    c = Fraction(params.constant)
    return 1 / ((Fraction(params.p) - 1) * c * c)


def cubic_poly_sign(family: Family, K: Fraction, x: Fraction) -> int:
    """Exact sign of ``num(x) - K (1-x)^3``."""
    a3, a2, a1, a0 = cubic_numerator(family)
    v = ((a3 * x + a2) * x + a1) * x + a0 - K * (1 - x) ** 3
    return (v > 0) - (v < 0)


def cubic_root(family: Family, K: Fraction, rel_width: float) -> tuple[Fraction, Fraction]:
    """Bracket the unique root in ``(0, 1)`` with ``hi/lo - 1 <= rel_width``."""
    if K <= 0:
        raise ValueError("right-hand side must be positive")
    lo, hi = Fraction(0), Fraction(1)
    rel = Fraction(rel_width)
    while lo == 0 or hi - lo > lo * rel:
        mid = (lo + hi) / 2
        sg = cubic_poly_sign(family, K, mid)
        if sg == 0:
            return mid, mid
        if sg < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def tau_cubic(kind: GroupKind, params: HypParams, tol: float = 1e-9) -> TauResult:
    """Time ``-(N/2) log X`` at the smallest positive root of the cubic equation."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    half_n = kind.N / 2.0
    # tau width = (N/2) log(hi/lo) <= (N/2) (hi/lo - 1)
    lo, hi = cubic_root(kind.family, cubic_rhs(params), tol / (2.0 * half_n))
    t_lo = -half_n * math.log(float(hi))
    t_hi = -half_n * math.log(float(lo))
    return TauResult(widen(t_lo, t_hi), "cubic")


# --------------------------------------------------------------------------
# linear-in-log bound and R_p


def tau_linear(
    kind: GroupKind, params: HypParams, unverified: bool = False
) -> TauResult:
    """``(k N / 2) log(p-1) + (1 - 2/p) N log(constant)`` with ``k = c`` or ``d``.

    Certified for ``p >= 4``; below 4 the bound only holds up to an
    unquantified margin and requires ``unverified=True``.
    """
    p = params.p
    if p < 4 and not unverified:
        raise ValueError(f"linear bound is certified only for p >= 4, got p={p}")
    k = linear_constant(kind.family)
    N = kind.N
    rest = (1 - 2 / p) * N * math.log(params.constant)
    lp = math.log(p - 1)
    lo = k.lo * N / 2 * lp + rest
    hi = k.hi * N / 2 * lp + rest
    notes = () if p >= 4 else ("unverified regime: p < 4",)
    return TauResult(widen(lo, hi, chains=2), "linear", certified=p >= 4, notes=notes)


def _rp_weight(family: Family, s: np.ndarray | int):
    return s + 1 if family is Family.FreeOrthogonal else 2 * s + 1


def _rp_partial(family: Family, p: float, k: float, M: int) -> tuple[float, float]:
    """Head sum over ``s <= M`` and a ratio bound for the tail at exponent ``k``."""
    lp = math.log(p - 1)
    e = 2.0 * (1.0 - 2.0 / p)
    s = np.arange(1, M + 1, dtype=float)
    terms = np.exp((1.0 - k * s) * lp + e * np.log(_rp_weight(family, s)))
    head = math.fsum(terms.tolist())
    w1, w2 = _rp_weight(family, M + 1), _rp_weight(family, M + 2)
    rho = (w2 / w1) ** e * math.exp(-k * lp)
    if rho >= 1.0:
        return head, math.inf
    first = math.exp((1.0 - k * (M + 1)) * lp + e * math.log(w1))
    return head, first / (1.0 - rho)


def r_p(family: Family, p: float, tol: float = 1e-10) -> CertifiedValue:
    """Certified enclosure of ``R_p = sum_{s>=1} (p-1)^(1-ks) w_s^(2(1-2/p))``.

    ``w_s = s+1, k = c`` for O_N+ and ``w_s = 2s+1, k = d`` for S_N+.
    """
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")
    if p == 2:
        return CertifiedValue(math.inf, math.inf)
    k = linear_constant(family)
    M = 64
    while True:
        head_hi, tail = _rp_partial(family, p, k.lo, M)
        if tail <= tol / 2:
            break
        M *= 2
        if M > MAX_RP_TERMS:
            raise ToleranceError(f"R_p tail above {tol / 2:.3g} at p={p}")
    head_lo, _ = _rp_partial(family, p, k.hi, M)
    out = widen(head_lo, head_hi + tail, chains=2)
    if out.width > tol:
        raise ToleranceError(f"R_p width {out.width:.3g} exceeds {tol:.3g}")
    return out


def rp_crossing(family: Family, tol: float = 1e-6) -> CertifiedValue:
    """Bracket where ``R_p`` crosses 1, scanning down from ``p = 5``.

    Returns ``[lo, hi]`` with ``R_lo > 1`` certified and ``R_hi`` either
    certified below 1 or indistinguishable from 1.
    """
    lo, hi = 2.5, 5.0
    while not r_p(family, lo, 1e-10).lo > 1.0:
        lo = 2.0 + (lo - 2.0) / 2
    if not r_p(family, hi, 1e-10).hi < 1.0:
        raise ArithmeticError("R_p not below 1 at p = 5")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        r = r_p(family, mid, 1e-10)
        if r.lo > 1.0:
            lo = mid
        elif r.hi < 1.0:
            hi = mid
        else:
            # R_mid is 1 to working precision
            return CertifiedValue(lo, mid)
    return CertifiedValue(lo, hi)


# --------------------------------------------------------------------------
# D_N bound


def q_parameter(N: float) -> float:
    """The ``q`` in ``(0, 1)`` with ``N = q + 1/q``."""
    if not N > 2:
        raise ValueError(f"N must exceed 2, got {N}")
    return 2.0 / (N + math.sqrt((N - 2.0) * (N + 2.0)))


def dn_partial_product(N: float, r: int) -> float:
    """``(1-q^2)^-1 prod_{s=1}^r (1-q^{2s})^-3``."""
    if r < 1:
        raise ValueError("r must be at least 1")
    q2 = q_parameter(N) ** 2
    log_val = -math.log1p(-q2) - 3.0 * math.fsum(
        math.log1p(-(q2**s)) for s in range(1, r + 1)
    )
    return math.exp(log_val)


def _dn_log_tail(q2: float, r: int) -> float:
    # sum_{s>r} 3 q^{2s}/(1-q^{2s}) <= 3 q^{2(r+1)} / ((1-q^{2(r+1)}) (1-q^2))
    a = q2 ** (r + 1)
    return 3.0 * a / ((1.0 - a) * (1.0 - q2))


def dn_upper_bound(N: float, tol: float = 1e-12) -> CertifiedValue:
    """Enclosure of the ``r -> infinity`` limit of the D_N product bound."""
    q2 = q_parameter(N) ** 2
    r = 1
    while _dn_log_tail(q2, r) >= tol:
        r *= 2
        if r > MAX_DN_FACTORS:
            raise ToleranceError(f"D_N product needs more than {MAX_DN_FACTORS} factors")
    log_lo = -math.log1p(-q2) - 3.0 * math.fsum(
        math.log1p(-(q2**s)) for s in range(1, r + 1)
    )
    log_hi = log_lo + _dn_log_tail(q2, r)
    return widen(math.exp(log_lo), math.exp(log_hi), chains=2)


def default_constant(kind: GroupKind) -> tuple[float, bool]:
    """Level-norm constant to use when none is supplied, and whether it is certified.

    For O_N+ with ``N > 2`` any upper bound on D_N is sound, so the
    product bound is used.  Otherwise only ``constant >= 1`` is known and
    the returned 1 is a lower bound, flagged uncertified.
    """
    if kind.is_orthogonal and kind.N > 2:
        return dn_upper_bound(kind.N).hi, True
    return 1.0, False


# --------------------------------------------------------------------------
# log-Sobolev data


@dataclass(frozen=True)
class LogSobolevReport:
    c: CertifiedValue
    t0: TauResult
    cubic: TauResult
    linear: TauResult


def log_sobolev_constant(
    kind: GroupKind, constant: float = 1.0, tol: float = 1e-9
) -> LogSobolevReport:
    """Constant ``c = t0 / 2`` with ``t0`` the best certified L^2 -> L^4 time."""
    params = HypParams(p=4.0, constant=constant)
    t0 = tau_series(kind, params, tol)
    return LogSobolevReport(
        c=CertifiedValue(t0.tau.lo / 2, t0.tau.hi / 2),
        t0=t0,
        cubic=tau_cubic(kind, params, tol),
        linear=tau_linear(kind, params),
    )


def q_exponent_path(t: float, t0: float) -> float:
    """Interpolation exponent ``4 / (2 - t/t0)``, from 2 at ``t=0`` to 4 at ``t0``."""
    if not t0 > 0:
        raise ValueError("t0 must be positive")
    if not 0 <= t <= t0:
        raise ValueError(f"t must lie in [0, {t0}], got {t}")
    return 4.0 / (2.0 - t / t0)


def holder_surrogate(kind: GroupKind, constant: float, s: int, nu: float, p: float) -> float:
    """Bound ``(w_s)^(1-2/p) nu`` on ``||x_s||_p`` given ``||x_s||_2 = nu``.

    ``w_s = beta s + gamma`` is the level-``s`` Linf/L2 ratio bound, so the
    value runs from ``nu`` at ``p = 2`` to ``w_s nu`` at ``p = inf``.
    """
    beta, gamma = kind.envelope_coefficients(constant)
    w = beta * s + gamma
    expo = 1.0 if math.isinf(p) else 1.0 - 2.0 / p
    return w**expo * nu
