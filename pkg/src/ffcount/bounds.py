"""Exact comparison of bound expressions containing fractional powers of q.

Several certified brackets have endpoints of the shape

    rational  +  coefficient * q^(u/v)

with u/v a fractional exponent (halves from collision bounds, thirds from
the decomposable-degree bounds).  Such endpoints are irrational, but all
comparisons against rationals stay exact: move the rational part across and
raise both sides to the v-th power.  Nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


def _pow_cmp(coef: Fraction, num: int, den: int, q: int, target: Fraction) -> int:
    """Sign of (coef * q^(num/den) - target); coef may be any sign, q >= 2."""
    if coef == 0:
        return (0 > target) - (0 < target)
    if coef > 0:
        if target <= 0:
            return 1
        lhs = coef**den * Fraction(q) ** num
        rhs = target**den
    else:
        if target >= 0:
            return -1
        lhs = (-target) ** den
        rhs = (-coef) ** den * Fraction(q) ** num
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class BoundExpr:
    """Value rational + coef * q^(exp_num/exp_den), at a fixed integer q."""

    q: int
    rational: Fraction
    coef: Fraction = Fraction(0)
    exp_num: int = 0
    exp_den: int = 1

    @classmethod
    def exact(cls, q: int, value: Rat) -> "BoundExpr":
        return cls(q, Fraction(value))

    @classmethod
    def power(cls, q: int, coef: Rat, exp: Fraction, base: Rat = 0) -> "BoundExpr":
        e = Fraction(exp)
        return cls(q, Fraction(base), Fraction(coef), e.numerator, e.denominator)

    def is_rational(self) -> bool:
        return self.coef == 0 or self.exp_num % self.exp_den == 0

    def as_fraction(self) -> Fraction:
        if self.coef == 0:
            return self.rational
        if self.exp_num % self.exp_den != 0:
            raise ValueError("irrational bound endpoint")
        return self.rational + self.coef * Fraction(self.q) ** (self.exp_num // self.exp_den)

    # -- exact comparisons -------------------------------------------

    def cmp_rat(self, other: Rat) -> int:
        """Sign of (self - other), computed exactly."""
        t = Fraction(other) - self.rational
        return _pow_cmp(self.coef, self.exp_num, self.exp_den, self.q, t)

    def __le__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.cmp_rat(other) <= 0
        if isinstance(other, BoundExpr):
            if other.is_rational():
                return self.cmp_rat(other.as_fraction()) <= 0
            if self.is_rational():
                return other.cmp_rat(self.as_fraction()) >= 0
            if (self.exp_num * other.exp_den) == (other.exp_num * self.exp_den):
                # same irrational power: compare the difference, one power term
                merged = BoundExpr(
                    self.q,
                    self.rational - other.rational,
                    self.coef - other.coef,
                    self.exp_num,
                    self.exp_den,
                )
                return merged.cmp_rat(0) <= 0
            raise ValueError("cannot compare two different irrational powers exactly")
        return NotImplemented

    def __ge__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.cmp_rat(other) >= 0
        if isinstance(other, BoundExpr):
            return other.__le__(self)
        return NotImplemented

    def __float__(self) -> float:
        return float(self.rational) + float(self.coef) * self.q ** (
            self.exp_num / self.exp_den
        )

    def __str__(self) -> str:
        if self.coef == 0:
            return str(self.rational)
        power = f"{self.q}^({self.exp_num}/{self.exp_den})"
        if self.exp_den == 1:
            power = f"{self.q}^{self.exp_num}"
        lead = "" if self.rational == 0 else f"{self.rational}"
        sign = "+" if self.coef >= 0 else "-"
        mag = abs(self.coef)
        if not lead:
            return f"{self.coef}*{power}" if self.coef < 0 else f"{mag}*{power}"
        return f"{lead}{sign}{mag}*{power}"
