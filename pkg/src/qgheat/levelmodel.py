"""Per-level L^2 model of algebra elements.

An element ``x = h(x) 1 + sum_{s>=1} x_s`` with ``x_s`` in the level-``s``
eigenspace is represented by its mean ``h(x)`` and the norms
``||x_s||_2``.  Levels are orthogonal, and the heat semigroup acts on
level ``s`` by the scalar ``exp(lambda_s t)``, so every quantity used in the
contractivity and spectral-gap arguments is a function of this data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .contractivity import envelope_for_group
from .hypercontractivity import HypParams, tau_series
from .spectrum import GroupKind, eigenvalue_floats

REL_SLACK = 1e-10
DEFAULT_LEVELS = 32


@dataclass(frozen=True)
class LevelVector:
    mean: float
    norms: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "norms", tuple(float(v) for v in self.norms))
        if any(not v >= 0 for v in self.norms):
            raise ValueError("level norms must be nonnegative")

    @property
    def levels(self) -> int:
        return len(self.norms)

    def to_json(self) -> dict:
        return {"mean": self.mean, "norms": list(self.norms)}

    @classmethod
    def from_json(cls, data: dict) -> LevelVector:
        return cls(float(data["mean"]), tuple(data["norms"]))


@dataclass(frozen=True)
class CheckReport:
    lhs: float
    rhs: float
    holds: bool
    tested: bool = True


def _holds(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + REL_SLACK * max(abs(lhs), abs(rhs))


def random_level_vector(
    rng: np.random.Generator, levels: int = DEFAULT_LEVELS
) -> LevelVector:
    """Norms uniform on [0, 1], each zeroed with probability 1/2; mean uniform on [-1, 1]."""
    norms = rng.uniform(0.0, 1.0, size=levels)
    norms[rng.random(levels) < 0.5] = 0.0
    mean = float(rng.uniform(-1.0, 1.0))
    return LevelVector(mean, tuple(norms.tolist()))


def _lams(kind: GroupKind, v: LevelVector) -> np.ndarray:
    return np.asarray(eigenvalue_floats(kind, v.levels)[1:])


def heat_apply(kind: GroupKind, v: LevelVector, t: float) -> LevelVector:
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if not v.norms:
        return v
    scaled = np.exp(_lams(kind, v) * t) * np.asarray(v.norms)
    return LevelVector(v.mean, tuple(scaled.tolist()))


def l2_norm(v: LevelVector) -> float:
    # hypot scales internally, so tiny or huge entries do not under/overflow
    return math.hypot(v.mean, *v.norms)


def centered_norm(v: LevelVector) -> float:
    """``||x - h(x)||_2``."""
    return math.hypot(*v.norms)


def linf_upper(v: LevelVector, kind: GroupKind, constant: float) -> float:
    """Surrogate ``|h(x)| + sum_s (beta s + gamma) ||x_s||_2`` for ``||x||_inf``."""
    if constant < 1:
        raise ValueError("constant must be at least 1")
    beta, gamma = kind.envelope_coefficients(constant)
    return math.fsum(
        [abs(v.mean)] + [(beta * s + gamma) * n for s, n in enumerate(v.norms, 1)]
    )


def dirichlet_energy(kind: GroupKind, v: LevelVector) -> float:
    """``-h(x T_L x) = sum_s (-lambda_s) ||x_s||_2^2``."""
    if not v.norms:
        return 0.0
    return math.fsum((-_lams(kind, v) * np.asarray(v.norms) ** 2).tolist())


def check_spectral_gap(kind: GroupKind, v: LevelVector) -> CheckReport:
    lhs = math.fsum(n * n for n in v.norms) / kind.N
    rhs = dirichlet_energy(kind, v)
    return CheckReport(lhs, rhs, _holds(lhs, rhs))


def check_ultra(
    kind: GroupKind, v: LevelVector, t: float, constant: float
) -> CheckReport:
    """``linf_upper(T_t v) <= sqrt(f(t)) ||v||_2``."""
    if not t > 0:
        raise ValueError("t must be positive")
    lhs = linf_upper(heat_apply(kind, v, t), kind, constant)
    rhs = math.sqrt(envelope_for_group(kind, constant, t).hi) * l2_norm(v)
    return CheckReport(lhs, rhs, _holds(lhs, rhs))


def hyper_chain_sides(
    kind: GroupKind, v: LevelVector, p: float, t: float, constant: float
) -> tuple[float, float]:
    """``(h(x)^2 + (p-1) (sum_s e^{lambda_s t} w_s ||x_s||_2)^2, ||x||_2^2)``."""
    beta, gamma = kind.envelope_coefficients(constant)
    if v.norms:
        s = np.arange(1, v.levels + 1, dtype=float)
        terms = np.exp(_lams(kind, v) * t) * (beta * s + gamma) * np.asarray(v.norms)
        inner = math.fsum(terms.tolist())
    else:
        inner = 0.0
    lhs = v.mean * v.mean + (p - 1) * inner * inner
    return lhs, l2_norm(v) ** 2


def check_hyper_chain(
    kind: GroupKind,
    v: LevelVector,
    p: float,
    t: float,
    constant: float,
    tau: float | None = None,
) -> CheckReport:
    """Final comparison of the L^2 -> L^p chain at time ``t``.

    ``tau`` is the certified upper end of the series time; it is computed
    when not supplied.  Times below it are reported as untested.
    """
    if tau is None:
        tau = tau_series(kind, HypParams(p, constant)).tau.hi
    lhs, rhs = hyper_chain_sides(kind, v, p, t, constant)
    if t < tau:
        return CheckReport(lhs, rhs, holds=False, tested=False)
    return CheckReport(lhs, rhs, _holds(lhs, rhs))
