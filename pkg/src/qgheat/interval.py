"""Certified real enclosures built on double precision.

Transcendental library calls are assumed correctly rounded to within one
ulp.  Every enclosure produced from a floating-point evaluation chain is
widened relatively by ``SLACK`` per chain, which dominates accumulated
rounding for the short chains used in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SLACK = 2.0**-40
# absolute floor so that results that underflow still get a nonzero radius
TINY = 1e-300


class ToleranceError(ArithmeticError):
    """A certified computation could not reach the requested tolerance."""


@dataclass(frozen=True)
class CertifiedValue:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float, chains: int = 1) -> CertifiedValue:
        """Enclose a value computed by ``chains`` floating-point chains."""
        return widen(x, x, chains)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: CertifiedValue) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def within(self, other: CertifiedValue) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def certainly_le(self, other: CertifiedValue | float) -> bool:
        o = other.lo if isinstance(other, CertifiedValue) else other
        return self.hi <= o

    def certainly_lt(self, other: CertifiedValue | float) -> bool:
        o = other.lo if isinstance(other, CertifiedValue) else other
        return self.hi < o

    def scale(self, k: float) -> CertifiedValue:
        """Multiply by a nonnegative exact float."""
        if k < 0:
            raise ValueError("scale factor must be nonnegative")
        return widen(self.lo * k, self.hi * k)

    def to_dict(self) -> dict[str, float]:
        return {"lo": self.lo, "hi": self.hi}


def widen(lo: float, hi: float, chains: int = 1) -> CertifiedValue:
    if math.isinf(lo) and lo == hi:
        return CertifiedValue(lo, hi)
    r = SLACK * chains
    lo = lo - abs(lo) * r - TINY
    hi = hi + abs(hi) * r + TINY
    return CertifiedValue(math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf))
