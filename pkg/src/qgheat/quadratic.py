"""Exact arithmetic in Z[sqrt(N)]."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadraticValue:
    """The number ``a + b*sqrt(radicand)`` with integer ``a`` and ``b``."""

    a: int
    b: int
    radicand: int

    def __post_init__(self) -> None:
        if self.radicand < 1:
            raise ValueError(f"radicand must be positive, got {self.radicand}")

    @classmethod
    def from_int(cls, x: int, radicand: int) -> QuadraticValue:
        return cls(x, 0, radicand)

    @classmethod
    def sqrt(cls, radicand: int) -> QuadraticValue:
        return cls(0, 1, radicand)

    def _coerce(self, other: int | QuadraticValue) -> QuadraticValue:
        if isinstance(other, QuadraticValue):
            if other.radicand != self.radicand:
                raise ValueError(
                    f"mismatched radicands {self.radicand} and {other.radicand}"
                )
            return other
        if isinstance(other, int):
            return QuadraticValue(other, 0, self.radicand)
        return NotImplemented

    def __add__(self, other: int | QuadraticValue) -> QuadraticValue:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticValue(self.a + o.a, self.b + o.b, self.radicand)

    __radd__ = __add__

    def __neg__(self) -> QuadraticValue:
        return QuadraticValue(-self.a, -self.b, self.radicand)

    def __sub__(self, other: int | QuadraticValue) -> QuadraticValue:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadraticValue(self.a - o.a, self.b - o.b, self.radicand)

    def __rsub__(self, other: int) -> QuadraticValue:
        return (-self) + other

    def __mul__(self, other: int | QuadraticValue) -> QuadraticValue:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = self.radicand
        return QuadraticValue(
            self.a * o.a + self.b * o.b * n, self.a * o.b + o.a * self.b, n
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticValue:
        return QuadraticValue(self.a, -self.b, self.radicand)

    def norm(self) -> int:
        """Field norm ``a^2 - N b^2``."""
        return self.a * self.a - self.radicand * self.b * self.b

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(N)`` as -1, 0 or 1."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: the larger of a^2 and b^2 N wins
        diff = self.a * self.a - self.b * self.b * self.radicand
        if diff == 0:
            return 0
        return sa if diff > 0 else sb

    def is_rational(self) -> bool:
        if self.b == 0:
            return True
        r = isqrt(self.radicand)
        return r * r == self.radicand

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.radicand**0.5

    def __lt__(self, other: int | QuadraticValue) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: int | QuadraticValue) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: int | QuadraticValue) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: int | QuadraticValue) -> bool:
        return (self - other).sign() >= 0

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}*sqrt({self.radicand})"
