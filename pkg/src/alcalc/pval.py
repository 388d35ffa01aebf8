"""
Exact scalars with p-adic valuation: elements a + b*sqrt(p) with a, b
rational.  Rationals alone would suffice for extremal charts, but points
of a colength-one chart lying on both components of its special fiber
only exist after a ramified quadratic base change, so the half-integer
valuation lattice is built in from the start.

Valuations are Fractions with denominator 1 or 2; val(a + b sqrt(p)) =
min(v_p(a), v_p(b) + 1/2), which is unambiguous since the two candidates
never coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

INF = Fraction(10**9)  # valuation of 0


def _vp(x: Fraction, p: int) -> Fraction:
    if x == 0:
        return INF
    num, den = x.numerator, x.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return Fraction(v)


@dataclass(frozen=True)
class PVal:
    """a + b*sqrt(p), exact."""

    a: Fraction
    b: Fraction
    p: int

    @staticmethod
    def of(x, p: int) -> "PVal":
        return PVal(Fraction(x), Fraction(0), p)

    @staticmethod
    def sqrt_p(p: int, mult=1) -> "PVal":
        return PVal(Fraction(0), Fraction(mult), p)

    @staticmethod
    def zero(p: int) -> "PVal":
        return PVal(Fraction(0), Fraction(0), p)

    @staticmethod
    def one(p: int) -> "PVal":
        return PVal(Fraction(1), Fraction(0), p)

    def _chk(self, o: "PVal") -> None:
        if self.p != o.p:
            raise ValueError("mixing scalars over different primes")

    def __add__(self, o: "PVal") -> "PVal":
        self._chk(o)
        return PVal(self.a + o.a, self.b + o.b, self.p)

    def __sub__(self, o: "PVal") -> "PVal":
        self._chk(o)
        return PVal(self.a - o.a, self.b - o.b, self.p)

    def __neg__(self) -> "PVal":
        return PVal(-self.a, -self.b, self.p)

    def __mul__(self, o: "PVal") -> "PVal":
        self._chk(o)
        return PVal(self.a * o.a + self.b * o.b * self.p, self.a * o.b + self.b * o.a, self.p)

    def __truediv__(self, o: "PVal") -> "PVal":
        return self * o.inverse()

    def inverse(self) -> "PVal":
        den = self.a * self.a - self.b * self.b * self.p
        if den == 0:
            raise ZeroDivisionError("inverse of 0")
        return PVal(self.a / den, -self.b / den, self.p)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def valuation(self) -> Fraction:
        return min(_vp(self.a, self.p), _vp(self.b, self.p) + Fraction(1, 2))

    def is_unit(self) -> bool:
        return (not self.is_zero()) and self.valuation() == 0

    def is_integral(self) -> bool:
        return self.is_zero() or self.valuation() >= 0

    def residue(self) -> int:
        """Image in the residue field F_p (for integral scalars)."""
        if self.is_zero():
            return 0
        v = self.valuation()
        if v < 0:
            raise ValueError("residue of a non-integral scalar")
        if v > 0:
            return 0
        num, den = self.a.numerator, self.a.denominator
        return (num * pow(den, -1, self.p)) % self.p

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*sqrt({self.p}))"
