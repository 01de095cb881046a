"""Verification suites: each returns rows of plain data with a ``holds`` flag."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from . import chebyshev as cb
from .contractivity import gaussian_moment_sum
from .hypercontractivity import LINEAR_C, LINEAR_D, HypParams, r_p, tau_series
from .levelmodel import (
    check_hyper_chain,
    check_spectral_gap,
    check_ultra,
    heat_apply,
    l2_norm,
    random_level_vector,
)
from .oracles import gaussian_second_moment
from .spectrum import Family, GroupKind, bound_report

IDENTITY_TOL = 1e-12
RP_WIDTH = 1e-10
CONSTANT_TOL = 5e-5
REFERENCE_C = 1.8297
REFERENCE_D = 2.15096


def _row(name: str, holds: bool, **data) -> dict:
    return {"check": name, **data, "holds": bool(holds)}


def chebyshev_suite(smax: int = 500, seed: int = 0) -> list[dict]:
    rows = []
    ok = all(
        cb.cheb_pair(s, 2) == (s + 1, Fraction(s * (s + 1) * (s + 2), 6))
        for s in range(smax + 1)
    )
    rows.append(_row("special_values_at_2", ok, smax=smax))

    rnd = random.Random(seed)
    xs = [Fraction(rnd.randint(-50, 50), rnd.randint(1, 20)) for _ in range(50)]
    ok = all(
        cb.cheb_pair(s, x)[0] == cb.cheb_coeff_eval(s, x) for s in range(61) for x in xs
    )
    rows.append(_row("recurrence_matches_expansion", ok, smax=60, samples=len(xs)))
    ok = all(
        cb.cheb_pair(s, -x)[0] == (-1) ** s * cb.cheb_pair(s, x)[0]
        for s in range(61)
        for x in xs
    )
    rows.append(_row("parity", ok, smax=60))

    eps = Fraction(1, 10**12)
    zeros = {s: cb.cheb_zeros(s, eps) for s in range(1, cb.MAX_ZERO_DEGREE + 1)}
    ok = all(
        len(z) == s and all(-2 <= r.lo <= r.hi <= 2 and r.width <= eps for r in z)
        for s, z in zeros.items()
    )
    rows.append(_row("zeros_in_[-2,2]", ok, smax=cb.MAX_ZERO_DEGREE))
    rows.append(
        _row("interlacing", all(interlaces(zeros[s], zeros[s + 1]) for s in range(1, 41)), smax=40)
    )
    return rows


def interlaces(inner: list[cb.RootEnclosure], outer: list[cb.RootEnclosure]) -> bool:
    """Exactly one enclosure of ``inner`` strictly between consecutive ``outer`` ones."""
    if len(outer) != len(inner) + 1:
        return False
    return all(
        outer[k].hi < inner[k].lo and inner[k].hi < outer[k + 1].lo
        for k in range(len(inner))
    )


def bounds_suite(kind: GroupKind, smax: int = 200) -> list[dict]:
    rows = []
    for s in range(1, smax + 1):
        r = bound_report(kind, s)
        rows.append(
            _row(
                "eigenvalue_bounds",
                r.holds,
                group=str(kind),
                s=s,
                lower=r.lower,
                neg_lambda=r.neg_lambda,
                upper=r.upper,
            )
        )
    return rows


def _vectors(samples: int, seed: int):
    rng = np.random.default_rng(seed)
    return [random_level_vector(rng) for _ in range(samples)]


def gap_suite(kind: GroupKind, samples: int = 1000, seed: int = 0) -> list[dict]:
    reports = [check_spectral_gap(kind, v) for v in _vectors(samples, seed)]
    return [_row("spectral_gap", all(r.holds for r in reports), group=str(kind), samples=samples)]


def ultra_suite(
    kind: GroupKind,
    constant: float = 1.0,
    times: tuple[float, ...] = (0.05, 0.5, 2.0, 10.0),
    samples: int = 1000,
    seed: int = 0,
) -> list[dict]:
    vs = _vectors(samples, seed)
    rows = []
    for t in times:
        ok = all(check_ultra(kind, v, t, constant).holds for v in vs)
        rows.append(_row("ultracontractivity_chain", ok, group=str(kind), t=t, samples=samples))
    return rows


def hyper_suite(
    kind: GroupKind,
    constant: float = 1.0,
    ps: tuple[float, ...] = (3.0, 4.0, 6.0),
    samples: int = 1000,
    seed: int = 0,
) -> list[dict]:
    vs = _vectors(samples, seed)
    rows = []
    for p in ps:
        tau = tau_series(kind, HypParams(p, constant)).tau.hi
        reps = [check_hyper_chain(kind, v, p, tau, constant, tau=tau) for v in vs]
        ok = all(r.holds and r.tested for r in reps)
        rows.append(_row("hypercontractivity_chain", ok, group=str(kind), p=p, t=tau, samples=samples))
    return rows


def semigroup_suite(kind: GroupKind, samples: int = 1000, seed: int = 0) -> list[dict]:
    vs = _vectors(samples, seed)
    contraction = all(
        l2_norm(heat_apply(kind, v, t)) <= l2_norm(v) * (1 + 1e-15)
        for v in vs
        for t in (0.0, 0.1, 1.0, 10.0)
    )
    law = True
    for v in vs:
        a = heat_apply(kind, heat_apply(kind, v, 0.7), 1.3)
        b = heat_apply(kind, v, 2.0)
        law &= a.mean == b.mean and all(
            math.isclose(x, y, rel_tol=1e-13, abs_tol=1e-300) for x, y in zip(a.norms, b.norms)
        )
    return [
        _row("l2_contraction", contraction, group=str(kind), samples=samples),
        _row("semigroup_law", law, group=str(kind), samples=samples),
    ]


def identities_suite() -> list[dict]:
    rows = []
    for fam in Family:
        r4 = r_p(fam, 4.0, RP_WIDTH)
        rows.append(
            _row(
                "R_4_equals_1",
                r4.contains(1.0) and r4.width <= RP_WIDTH,
                family=fam.value,
                lo=r4.lo,
                hi=r4.hi,
            )
        )
    res_c = 3.0**LINEAR_C - (4.0 + 2.0 * math.sqrt(3.0))
    rows.append(_row("3^c = 4 + 2 sqrt 3", abs(res_c) <= IDENTITY_TOL, residual=res_c))
    z = 3.0**-LINEAR_D
    res_d = 4.0 * z * z - 11.0 * z + 1.0
    rows.append(_row("4z^2 - 11z + 1 = 0 at z = 3^-d", abs(res_d) <= IDENTITY_TOL, residual=res_d))
    rows.append(_row("c value", abs(LINEAR_C - REFERENCE_C) <= CONSTANT_TOL, value=LINEAR_C, expected=REFERENCE_C))
    rows.append(_row("d value", abs(LINEAR_D - REFERENCE_D) <= CONSTANT_TOL, value=LINEAR_D, expected=REFERENCE_D))
    return rows


def g_sandwich(t: float, tol: float = 1e-9) -> dict:
    """Check ``A I <= M + S <= 2M + A I`` for the O_2+ Gaussian sum.

    ``S = sum_{s>=0} s^2 exp(-s^2 t/3)``, ``M = 3/(e t)`` is its largest
    term, ``A = (3/t)^{3/2}`` and ``I = int_0^inf u^2 exp(-u^2) du``.
    """
    integral, err = gaussian_second_moment()
    scale = (3.0 / t) ** 1.5
    low = scale * (integral + err)
    high_int = scale * (integral - err)
    m = 3.0 / (math.e * t)
    s = gaussian_moment_sum(t, tol * max(1.0, scale))
    mid_lo, mid_hi = m + s.lo, m + s.hi
    ok = low <= mid_lo and mid_hi <= 2 * m + high_int
    return _row("g_sandwich", ok, t=t, lower=low, middle_lo=mid_lo, middle_hi=mid_hi, upper=2 * m + high_int)


def sandwich_suite(t_lo: float = 1e-4, t_hi: float = 10.0, npoints: int = 20) -> list[dict]:
    return [g_sandwich(float(t)) for t in np.geomspace(t_lo, t_hi, npoints)]
