"""Counting multivariate polynomial classes over finite fields.

Everything here is exact symbolic arithmetic in the field-size variable q:
exact counts are polynomials (``QPoly``), main terms and error factors are
rational functions (``SymRat``).  Substituting a concrete prime power for q
yields the actual count over that field.

Conventions for degree 0: the polynomial 1 counts as reducible and not
irreducible, so the reducible count at n=0 is 1 and the irreducible count 0.

Classes covered: reducible/irreducible, s-powerful/s-powerfree, relatively
and absolutely irreducible, and uni-multivariate decomposable (main term and
error bound only; no exact formula exists for the latter).  The space-curve
bound constants live here too, as the only floating-point surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

from .qrat import QPoly, SymRat, qpow
from .series import TruncSeries, compositions, divisors, moebius, smallest_prime_factor

MV_CLASSES = (
    "reducible",
    "irreducible",
    "powerful",
    "powerfree",
    "rel_irreducible",
    "abs_irreducible",
    "decomposable_mv",
)


# -- the base count -------------------------------------------------------


@lru_cache(maxsize=None)
def p_count(r: int, n: int) -> QPoly:
    """Number of monic r-variate polynomials of total degree n, as a QPoly.

    One free coefficient for every monomial deg-lex below the leading one,
    summed over the possible leading monomials of degree n.
    """
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    if n == 0:
        return QPoly.one()
    below = comb(r + n, r) - 1
    top = comb(r + n - 1, r - 1)
    # sum over leading-monomial choices: q^below + q^(below-1) + ... (top terms)
    coeffs = [Fraction(0)] * (below + 1)
    for i in range(top):
        coeffs[below - i] = Fraction(1)
    return QPoly(coeffs)


def p_series(r: int, order: int) -> TruncSeries:
    """Generating series of the monic counts, truncated at the given order."""
    return TruncSeries(order, [SymRat(p_count(r, n)) for n in range(order + 1)])


# -- exact counts ---------------------------------------------------------


def _composition_signed_sum(r: int, m: int) -> SymRat:
    """sum over compositions j of m of (-1)^|j|/|j| * prod P_{r,j_i}."""
    acc = SymRat(0)
    for j in compositions(m):
        prod = SymRat(1)
        for part in j:
            prod = prod * SymRat(p_count(r, part))
        sign = -1 if len(j) & 1 else 1
        acc = acc + prod * Fraction(sign, len(j))
    return acc


@lru_cache(maxsize=None)
def irr_exact(r: int, n: int, route: str = "composition_sum") -> QPoly:
    """Exact count of irreducible monic r-variate polynomials of degree n.

    Both routes return the identical polynomial: ``composition_sum`` runs the
    Moebius-weighted sum over integer compositions, ``series_log`` extracts
    the coefficient from the formal logarithm of the generating series.
    """
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    if n == 0:
        return QPoly.zero()
    if route == "composition_sum":
        acc = SymRat(0)
        for k in divisors(n):
            mu = moebius(k)
            if mu == 0:
                continue
            acc = acc - _composition_signed_sum(r, n // k) * Fraction(mu, k)
        return acc.as_qpoly()
    if route == "series_log":
        ps = p_series(r, n)
        acc = TruncSeries.zero(n)
        for k in range(1, n + 1):
            mu = moebius(k)
            if mu == 0:
                continue
            acc = acc + ps.substitute_power(k).log() * Fraction(mu, k)
        return acc.coeff(n).as_qpoly()
    raise ValueError(f"unknown route {route!r}")


def red_exact(r: int, n: int) -> QPoly:
    """Exact count of reducible monic r-variate polynomials of degree n."""
    return p_count(r, n) - irr_exact(r, n)


@lru_cache(maxsize=None)
def relirr_exact(r: int, n: int) -> QPoly:
    """Exact count of relatively irreducible (irreducible here, reducible over
    some extension) monic r-variate polynomials of degree n.

    Counts over F_{q^s} enter as the substitution q -> q^s, which is valid
    because every exact count here is a polynomial in the field size.
    """
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    if n == 0:
        return QPoly.zero()
    acc = SymRat(0)
    for k in divisors(n):
        if k == 1:
            continue
        inner = SymRat(0)
        for s in divisors(k):
            mu = moebius(s)
            if mu == 0:
                continue
            inner = inner + SymRat(irr_exact(r, n // k).subs_power(s)) * mu
        acc = acc - inner * Fraction(1, k)
    return acc.as_qpoly()


@lru_cache(maxsize=None)
def absirr_exact(r: int, n: int) -> QPoly:
    """Exact count of absolutely irreducible monic r-variate polynomials,
    via Moebius inversion over subextension degrees (independent of
    relirr_exact, so `abs + rel = irr` is a real consistency check)."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    if n == 0:
        return QPoly.zero()
    acc = SymRat(0)
    for k in divisors(n):
        inner = SymRat(0)
        for s in divisors(k):
            mu = moebius(s)
            if mu == 0:
                continue
            inner = inner + SymRat(irr_exact(r, n // k).subs_power(s)) * mu
        acc = acc + inner * Fraction(1, k)
    return acc.as_qpoly()


@lru_cache(maxsize=None)
def powerful_exact(r: int, n: int, s: int, route: str = "composition_sum") -> QPoly:
    """Exact count of s-powerful monic r-variate polynomials of degree n.

    ``composition_sum`` runs the signed sum over compositions of the power
    part; ``series_relation`` uses the unique factorization f = g * h^s of a
    monic f into an s-powerfree g and an arbitrary monic h, i.e. divides the
    generating series by its z -> z^s substitution.
    """
    if r < 1 or n < 0 or s < 2:
        raise ValueError("need r >= 1, n >= 0, s >= 2")
    if n < s:
        return QPoly.zero()
    if route == "composition_sum":
        acc = SymRat(0)
        for i in range(1, n // s + 1):
            tail = SymRat(p_count(r, n - i * s))
            for j in compositions(i):
                prod = SymRat(1)
                for part in j:
                    prod = prod * SymRat(p_count(r, part))
                sign = -1 if len(j) & 1 else 1
                acc = acc - prod * tail * sign
        return acc.as_qpoly()
    if route == "series_relation":
        ps = p_series(r, n)
        powerfree = ps / ps.substitute_power(s)
        return (ps.coeff(n) - powerfree.coeff(n)).as_qpoly()
    raise ValueError(f"unknown route {route!r}")


def powerfree_exact(r: int, n: int, s: int) -> QPoly:
    return p_count(r, n) - powerful_exact(r, n, s)


def exact_count(cls: str, r: int, n: int, s: Optional[int] = None) -> QPoly:
    """Dispatch an exact symbolic count by class name."""
    if cls in ("powerful", "powerfree"):
        if s is None:
            raise ValueError(f"class {cls!r} needs the power exponent s")
    elif s is not None:
        raise ValueError(f"class {cls!r} takes no power exponent")
    if cls == "reducible":
        return red_exact(r, n)
    if cls == "irreducible":
        return irr_exact(r, n)
    if cls == "powerful":
        return powerful_exact(r, n, s)
    if cls == "powerfree":
        return powerfree_exact(r, n, s)
    if cls == "rel_irreducible":
        return relirr_exact(r, n)
    if cls == "abs_irreducible":
        return absirr_exact(r, n)
    if cls == "decomposable_mv":
        raise ValueError(
            "no exact formula for decomposable_mv; use the approximation or the oracle"
        )
    raise ValueError(f"unknown class {cls!r}")


# -- main terms and certified approximations -----------------------------


@dataclass
class CountReport:
    """One counting query's results, all symbolic in q.

    ``rel_bound`` is the proven relative error factor B with
    |exact - main_term| <= main_term * B.  When B involves a half-integer
    power of q it cannot be a SymRat; ``rel_bound_sq`` then carries B^2 and
    comparisons must be made on squares.  ``exact_is_main`` marks the cases
    where the main term formula is already exact (B irrelevant).
    """

    cls: str
    r: int
    n: int
    s: Optional[int]
    exact: Optional[QPoly]
    main_term: SymRat
    gap_exponent: Optional[int]
    rel_bound: Optional[SymRat] = None
    rel_bound_sq: Optional[SymRat] = None
    exact_is_main: bool = False
    case: str = ""
    oracle: Optional[int] = None

    def exact_at(self, q0: int) -> int:
        if self.exact is None:
            raise ValueError("no exact formula in this report")
        val = self.exact.evaluate(q0)
        assert val.denominator == 1
        return int(val)

    def bound_holds_at(self, q0: int) -> bool:
        """Check |exact - main| <= main * bound at a concrete prime power."""
        if self.exact is None:
            raise ValueError("no exact value to check")
        diff = self.exact.evaluate(q0) - self.main_term.evaluate(q0)
        main = self.main_term.evaluate(q0)
        if self.rel_bound is not None:
            return abs(diff) <= main * self.rel_bound.evaluate(q0)
        if self.rel_bound_sq is not None:
            return diff * diff <= main * main * self.rel_bound_sq.evaluate(q0)
        raise ValueError("report carries no error bound")


def reducible_main_term(r: int, n: int) -> SymRat:
    """Main term for the reducible count: products with a linear factor dominate."""
    if r < 2:
        raise ValueError("the symbolic theory needs r >= 2")
    e = comb(r + n - 1, r) + r - 1
    return qpow(e) * (1 - qpow(-r)) / (1 - qpow(-1)) ** 2


def reducible_gap(r: int, n: int) -> int:
    return comb(r + n - 2, r - 1) - r * (r + 1) // 2


@lru_cache(maxsize=None)
def red_approx(r: int, n: int) -> CountReport:
    """Main term, exact small-degree forms, and the explicit error bound for
    the reducible count.

    For n <= 3 the closed forms are exact.  For n >= 4 the relative error is
    bounded by q^(-gap) / ((1 - q^-1)(1 - q^-r)), and by the weaker uniform
    3 q^(-gap); gap = binom(r+n-2, r-1) - r(r+1)/2.
    """
    if r < 2:
        raise ValueError("the symbolic theory needs r >= 2")
    rho = reducible_main_term(r, n)
    exact = red_exact(r, n)
    gap = reducible_gap(r, n)
    if n == 0 or n == 1:
        return CountReport("reducible", r, n, None, exact, rho, None,
                           exact_is_main=False, case=f"exact n={n}")
    if n == 2:
        closed = rho / 2 * (1 - qpow(-r - 1))
        assert closed.as_qpoly() == exact
        return CountReport("reducible", r, n, None, exact, rho, None, case="exact n=2")
    if n == 3:
        # sign of the second correction term fixed against the exact count:
        # with "+" the form fails unique-factorization counting at every q
        inner = (
            1
            - qpow(-r * (r + 1) // 2)
            - qpow(-r * (r - 1) // 2)
            * (1 - 2 * qpow(-r) + 2 * qpow(-2 * r - 1) - qpow(-2 * r - 2))
            / (3 * (1 - qpow(-1)))
        )
        closed = rho * inner
        assert closed.as_qpoly() == exact
        return CountReport("reducible", r, n, None, exact, rho, None, case="exact n=3")
    bound = qpow(-gap) / ((1 - qpow(-1)) * (1 - qpow(-r)))
    return CountReport("reducible", r, n, None, exact, rho, gap, rel_bound=bound,
                       case="bound n>=4")


def reducible_weak_bound(r: int, n: int) -> SymRat:
    """The uniform weaker bound 3 q^(-gap) for n >= 4."""
    return 3 * qpow(-reducible_gap(r, n))


def powerful_main_term(r: int, n: int, s: int) -> SymRat:
    if r < 2 or s < 2:
        raise ValueError("need r, s >= 2")
    e = comb(r + n - s, r) + r - 1
    return (
        qpow(e)
        * (1 - qpow(-r))
        * (1 - qpow(-comb(r + n - s - 1, r - 1)))
        / (1 - qpow(-1)) ** 2
    )


def powerful_gap(r: int, n: int, s: int) -> int:
    return _comb_nn(r + n - s, r) - _comb_nn(r + n - 2 * s, r) - r * (r + 1) // 2


def _comb_nn(m: int, r: int) -> int:
    # binomials in the gap exponents vanish once the top drops below zero
    return comb(m, r) if m >= 0 else 0


@lru_cache(maxsize=None)
def powerful_approx(r: int, n: int, s: int) -> CountReport:
    """Main term eta and certified bounds for the s-powerful count.

    Exact closed forms hold for n < 3s.  For n >= 3s the relative error is
    at most 6 q^(-delta), except at (n,s) = (6,2) where the bound is
    2 q^(-delta + (r-2)(r-1)(r+3)/6); delta is the gap exponent.
    """
    if r < 2 or s < 2:
        raise ValueError("need r, s >= 2")
    exact = powerful_exact(r, n, s)
    eta = powerful_main_term(r, n, s)
    delta = powerful_gap(r, n, s)
    if n < s:
        return CountReport("powerful", r, n, s, exact, SymRat(0), None,
                           exact_is_main=True, case="zero n<s")
    if n < 2 * s:
        assert eta.as_qpoly() == exact
        return CountReport("powerful", r, n, s, exact, eta, None,
                           exact_is_main=True, case="exact s<=n<2s")
    if n < 3 * s:
        ratio_a = (1 - qpow(-comb(n + r - 2 * s - 1, r - 1))) / (
            1 - qpow(-comb(n + r - s - 1, r - 1))
        )
        ratio_b = (1 - qpow(-r * (r + 1) // 2)) / (1 - qpow(-r)) - qpow(
            -r * (r - 1) // 2
        ) * (1 - qpow(-r)) / (1 - qpow(-1))
        closed = eta * (1 + qpow(-delta) * ratio_a * ratio_b)
        assert closed.as_qpoly() == exact
        return CountReport("powerful", r, n, s, exact, eta, delta,
                           case="exact 2s<=n<3s")
    if (n, s) == (6, 2):
        shift = (r - 2) * (r - 1) * (r + 3) // 6
        bound = 2 * qpow(-delta + shift)
        return CountReport("powerful", r, n, s, exact, eta, delta,
                           rel_bound=bound, case="bound (6,2)")
    bound = 6 * qpow(-delta)
    return CountReport("powerful", r, n, s, exact, eta, delta,
                       rel_bound=bound, case="bound n>=3s")


def relirr_main_term(r: int, n: int) -> SymRat:
    """Main term for the relatively irreducible count: conjugate orbits of
    irreducibles of degree n/l over the degree-l extension, l the smallest
    prime divisor of n.  The leading power is q^(l*(binom(r+n/l, r)-1))."""
    if r < 2 or n < 2:
        raise ValueError("need r, n >= 2")
    ell = smallest_prime_factor(n)
    e = ell * (comb(r + n // ell, r) - 1)
    return qpow(e) / (ell * (1 - qpow(-ell)))


def relirr_gap(r: int, n: int) -> int:
    ell = smallest_prime_factor(n)
    return (ell - 1) * (comb(r - 1 + n // ell, r - 1) - r) + 1


@lru_cache(maxsize=None)
def relirr_approx(r: int, n: int) -> CountReport:
    """Main term and certified bound for the relatively irreducible count.

    For prime n the product form is exact.  For composite n the relative
    error is bounded by 3 q^(-kappa) with
    kappa = (l-1)(binom(r-1+n/l, r-1) - r) + 1 >= 2.
    """
    if r < 2 or n < 2:
        raise ValueError("need r, n >= 2")
    eps = relirr_main_term(r, n)
    exact = relirr_exact(r, n)
    ell = smallest_prime_factor(n)
    if ell == n:  # n prime
        closed = (
            eps
            * (1 - qpow(-n * r))
            * (
                1
                - qpow(-r * (n - 1))
                * (1 - qpow(-r))
                * (1 - qpow(-n))
                / ((1 - qpow(-1)) * (1 - qpow(-n * r)))
            )
        )
        assert closed.as_qpoly() == exact
        return CountReport("rel_irreducible", r, n, None, exact, eps, None,
                           exact_is_main=False, case="exact prime n")
    kappa = relirr_gap(r, n)
    bound = 3 * qpow(-kappa)
    return CountReport("rel_irreducible", r, n, None, exact, eps, kappa,
                       rel_bound=bound, case="bound composite n")


def mv_decomp_main_term(r: int, n: int) -> SymRat:
    """Main term for uni-multivariate decomposable f (monic, f(0)=0)."""
    if r < 2:
        raise ValueError("need r >= 2")
    ell = smallest_prime_factor(n)
    if ell == n or n < 2:
        raise ValueError("no decomposables at prime degree")
    m = _decomp_outer_degree(r, n)
    e = comb(r + n // m, r) + m - 3
    return qpow(e) * (1 - qpow(-comb(r - 1 + n // m, r - 1))) / (1 - qpow(-1))


def _decomp_outer_degree(r: int, n: int) -> int:
    # the degree split whose compositions dominate
    ell = smallest_prime_factor(n)
    quot = n // ell
    if r == 2 and smallest_prime_factor(quot) == quot and quot <= 2 * ell - 5:
        return n
    return ell


def mv_decomp_bound_sq(r: int, n: int) -> SymRat:
    """Square of the relative error bound (the bound itself carries a
    half-integer power of q, so inequality checks compare squares)."""
    ell = smallest_prime_factor(n)
    b = comb(r - 1 + n // ell, r - 1)
    # bound = 2 q^(-b/2 + 1) / (1 - q^-1); squared keeps exponents integral
    return 4 * qpow(-b + 2) / (1 - qpow(-1)) ** 2


def mv_decomp_approx(r: int, n: int) -> CountReport:
    """Main term and squared relative bound for decomposable monic r-variate
    polynomials with vanishing constant term; no exact formula exists."""
    if r < 2:
        raise ValueError("need r >= 2")
    if n < 2 or smallest_prime_factor(n) == n:
        raise ValueError("no decomposables at prime degree")
    alpha = mv_decomp_main_term(r, n)
    m = _decomp_outer_degree(r, n)
    return CountReport(
        "decomposable_mv", r, n, None, None, alpha, None,
        rel_bound_sq=mv_decomp_bound_sq(r, n), case=f"outer degree m={m}",
    )


# -- space-curve bound constants (the only floating-point surface) --------


@dataclass(frozen=True)
class CurveBounds:
    """Numeric constants for the reducible/exceptional space-curve bounds.

    The tower constants overflow any fixed-width float, so they are carried
    as natural logarithms (relative accuracy ~1e-15, well inside the 1e-12
    target: each is an exact rational exponent times log of a small number).
    """

    r: int
    n: int
    ell: int
    g: Fraction
    log_c: float
    b: int
    log_d: float

    def reducible_ratio_bracket(self, q: int) -> tuple[float, float, str]:
        """(log lower, log upper) for the reducible fraction among degree-n
        cycles in projective r-space, with the case that applied."""
        lq = math.log(q)
        if self.n >= min(4 * self.r - 7, 7):
            e = -(self.n - 2 * self.r + 3) * lq
            return (e - math.log(4) - self.log_c, e + self.log_c, "general")
        if self.n == 4 * self.r - 8:
            e = (-self.r + 2) * lq
            lo = e - math.log(2) - math.lgamma(self.n + 1) - self.log_c
            return (lo, e + self.log_c, "boundary")
        raise ValueError("no bracket applies for these (r, n)")

    def exceptional_bracket(self, q: int) -> tuple[float, float, str]:
        """(log lower, log upper) for the count of relatively irreducible
        degree-n cycles; requires n >= 4r-8."""
        if self.n < 4 * self.r - 8:
            raise ValueError("needs n >= 4r-8")
        lq = math.log(q)
        quot = self.n // self.ell
        if quot <= 4 * self.r - 7:
            e = 2 * self.n * (self.r - 1) * lq
            inner = 1 - 4 * math.exp(2 * (1 - self.n) * (self.r - 1) * lq)
            lo = e + (math.log(inner) if inner > 0 else -math.inf)
            return (lo, e + math.log(2) + self.log_d, "low quotient")
        bq = self.ell * _b_const(self.r, quot)
        e = bq * lq
        inner = 1 - 16 * math.exp((self.ell - self.n) * lq)
        lo = e + (math.log(inner) if inner > 0 else -math.inf)
        return (lo, e + math.log(3) + self.log_d, "high quotient")


def _g_const(r: int, n: int) -> Fraction:
    return Fraction(comb(r + n - 2, n) ** 2 * (r + n - 1), (r - 1) * (n + 1))


def _b_const(r: int, n: int) -> int:
    return 3 * (r - 2) + n * (n + 3) // 2


def curve_bounds(r: int, n: int) -> CurveBounds:
    """Bound constants for counting reducible and exceptional space curves."""
    if r < 3:
        raise ValueError("space-curve bounds need r >= 3")
    if n < 1:
        raise ValueError("need n >= 1")
    ell = smallest_prime_factor(n) if n >= 2 else 1
    g = _g_const(r, n)
    c_exponent = Fraction(r * (r + 1) * (n * n + 1)) + 4 * r * g
    log_c = float(c_exponent) * math.log(2 * math.e * n)
    quot = n // ell if n >= 2 else 1
    g_quot = _g_const(r, quot)
    d_exponent = Fraction(r * (r + 1)) * (Fraction(n * n, ell * ell) + 1) + 4 * r * g_quot
    # (e*n/l)^x has natural log x*(1 + log(n/l))
    log_d = float(d_exponent) * (1 + math.log(n / ell))
    return CurveBounds(r, n, ell, g, log_c, _b_const(r, n), log_d)
