"""Truncated formal power series in z over Q(q), plus number-theory helpers.

A ``TruncSeries`` holds coefficients 0..N (zeros explicit) for a fixed
truncation order N.  Mixing orders in arithmetic is an error rather than a
silent truncation: truncation bugs are the dominant failure mode here.

The series in this package diverge everywhere except at 0, so nothing in
this module is analytic; ``log``/``exp`` are the formal operations only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .qrat import QPoly, SymRat, _coerce_symrat


# -- number-theory helpers ----------------------------------------------


def moebius(k: int) -> int:
    """Number-theoretic Moebius function: 0 unless squarefree, else (-1)^#primes."""
    if k < 1:
        raise ValueError("moebius needs k >= 1")
    count = 0
    d = 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            count += 1
        d += 1
    if k > 1:
        count += 1
    return -1 if count & 1 else 1


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError("divisors needs n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("no prime factor below 2")
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^d with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = smallest_prime_factor(q)
    d = 0
    m = q
    while m % p == 0:
        m //= p
        d += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, d


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All 2^(n-1) compositions of n, first part largest first, then recursively.

    For n=3 the order is (3), (2,1), (1,2), (1,1,1).
    """
    if n < 1:
        raise ValueError("compositions needs n >= 1")
    for first in range(n, 0, -1):
        if first == n:
            yield (n,)
        else:
            for rest in compositions(n - first):
                yield (first,) + rest


# -- truncated series ----------------------------------------------------


class TruncSeries:
    """Power series in z truncated at order N, coefficients in Q(q)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = [_coerce_symrat(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError(f"{len(cs)} coefficients exceed order {order}")
        cs.extend(SymRat(0) for _ in range(order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls(order, [1])

    def coeff(self, i: int) -> SymRat:
        return self.coeffs[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def _check_order(self, other: "TruncSeries"):
        if self.order != other.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        return TruncSeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, [-a for a in self.coeffs])

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction, SymRat, QPoly)):
            c = _coerce_symrat(other)
            return TruncSeries(self.order, [a * c for a in self.coeffs])
        self._check_order(other)
        n = self.order
        out = [SymRat(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(n, out)

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_order(other)
        if other.coeffs[0].is_zero():
            raise ZeroDivisionError("divisor has zero constant term, not invertible")
        n = self.order
        inv0 = SymRat(1) / other.coeffs[0]
        out: list[SymRat] = []
        for i in range(n + 1):
            acc = self.coeffs[i]
            for j in range(1, i + 1):
                b = other.coeffs[j]
                if not b.is_zero():
                    acc = acc - b * out[i - j]
            out.append(acc * inv0)
        return TruncSeries(n, out)

    def log(self) -> "TruncSeries":
        """Formal logarithm; requires constant term 1.

        Solved coefficientwise from (log a)' = a'/a, so everything stays in
        O(N^2) exact operations without series powering.
        """
        if self.coeffs[0] != SymRat(1):
            raise ValueError("log needs constant term 1")
        n = self.order
        # dl[i] = coefficient of z^i in (log a)', solved from a * (log a)' = a'
        dl: list[SymRat] = []
        for i in range(n):
            acc = (i + 1) * self.coeffs[i + 1]
            for j in range(1, i + 1):
                a = self.coeffs[j]
                if not a.is_zero():
                    acc = acc - a * dl[i - j]
            dl.append(acc)
        out = [SymRat(0)]
        for i in range(n):
            out.append(dl[i] * Fraction(1, i + 1))
        return TruncSeries(n, out)

    def exp(self) -> "TruncSeries":
        """Formal exponential; requires constant term 0."""
        if not self.coeffs[0].is_zero():
            raise ValueError("exp needs constant term 0")
        n = self.order
        out = [SymRat(1)]
        # e' = e * a'  =>  (i+1) e_{i+1} = sum_j e_j * (i+1-j) a_{i+1-j}
        for i in range(n):
            acc = SymRat(0)
            for j in range(i + 1):
                k = i + 1 - j
                a = self.coeffs[k]
                if not a.is_zero():
                    acc = acc + out[j] * (k * a)
            out.append(acc * Fraction(1, i + 1))
        return TruncSeries(n, out)

    def substitute_power(self, k: int) -> "TruncSeries":
        """Substitute z -> z^k, truncating at the same order."""
        if k < 1:
            raise ValueError("substitute_power needs k >= 1")
        n = self.order
        out = [SymRat(0)] * (n + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > n:
                break
            out[i * k] = c
        return TruncSeries(n, out)

    def __str__(self) -> str:
        return " + ".join(f"({c})z^{i}" for i, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"TruncSeries(order={self.order})"
