import random
from fractions import Fraction

import pytest

from ffcount.qrat import QPoly, SymRat, qpow
from ffcount.series import TruncSeries, compositions, divisors, moebius

rng = random.Random(0x5E81E5)


def rand_series(order, unit=False):
    coeffs = [SymRat(QPoly([rng.randint(-3, 3) for _ in range(3)])) for _ in range(order + 1)]
    if unit:
        coeffs[0] = SymRat(1)
    return TruncSeries(order, coeffs)


def test_mul_example():
    a = TruncSeries(2, [1, 1])
    b = TruncSeries(2, [1, -1])
    assert (a * b).coeffs == TruncSeries(2, [1, 0, -1]).coeffs


def test_div_identity_and_roundtrip():
    for _ in range(20):
        a = rand_series(6, unit=True)
        one = TruncSeries.one(6)
        assert a / a == one
        b = rand_series(6, unit=True)
        assert (a * b) / b == a


def test_order_mismatch_is_an_error():
    with pytest.raises(ValueError, match="order mismatch"):
        TruncSeries.one(3) + TruncSeries.one(4)
    with pytest.raises(ValueError, match="order mismatch"):
        TruncSeries.one(3) * TruncSeries.one(4)


def test_div_needs_unit():
    a = TruncSeries(3, [0, 1])
    with pytest.raises(ZeroDivisionError):
        TruncSeries.one(3) / a


def test_log_geometric():
    geo = TruncSeries(4, [1, 1, 1, 1, 1])  # 1/(1-z)
    lg = geo.log()
    assert [c for c in lg.coeffs] == [
        SymRat(0),
        SymRat(1),
        SymRat(Fraction(1, 2)),
        SymRat(Fraction(1, 3)),
        SymRat(Fraction(1, 4)),
    ]


def test_log_one_plus_z():
    lg = TruncSeries(2, [1, 1]).log()
    assert lg.coeffs == (SymRat(0), SymRat(1), SymRat(Fraction(-1, 2)))


def test_log_requires_unit_constant_term():
    with pytest.raises(ValueError, match="constant term 1"):
        TruncSeries(2, [0, 1]).log()


def test_exp_log_roundtrip_randomized():
    for _ in range(15):
        a = rand_series(5, unit=True)
        assert a.log().exp() == a


def test_substitute_power():
    a = TruncSeries(3, [1, 1])
    assert a.substitute_power(2).coeffs == TruncSeries(3, [1, 0, 1]).coeffs
    assert a.substitute_power(1) == a
    # composing substitutions multiplies the stride
    b = rand_series(8)
    assert b.substitute_power(2).substitute_power(3) == b.substitute_power(6)


def test_substitute_power_geometric_series():
    # the degree-n univariate counts q^n, restricted to multiples of 3
    p1 = TruncSeries(3, [qpow(n) for n in range(4)])
    got = p1.substitute_power(3)
    assert got.coeff(0) == SymRat(1)
    assert got.coeff(3) == qpow(1)
    assert got.coeff(1).is_zero() and got.coeff(2).is_zero()


def test_gauss_degree_two_from_moebius_log():
    # [z^2] of sum_k mu(k)/k log P(z^k) for the univariate count series
    n = 2
    p1 = TruncSeries(n, [qpow(i) for i in range(n + 1)])
    acc = TruncSeries.zero(n)
    for k in range(1, n + 1):
        if moebius(k):
            acc = acc + p1.substitute_power(k).log() * Fraction(moebius(k), k)
    assert acc.coeff(2) == (qpow(2) - qpow(1)) / 2


@pytest.mark.parametrize(
    "k,expected",
    [(1, 1), (2, -1), (3, -1), (4, 0), (6, 1), (8, 0), (9, 0), (30, -1), (210, 1)],
)
def test_moebius_values(k, expected):
    assert moebius(k) == expected


def test_moebius_divisor_sum():
    for n in range(1, 10001):
        total = sum(moebius(d) for d in divisors(n))
        assert total == (1 if n == 1 else 0)


def test_compositions_order_and_count():
    assert list(compositions(1)) == [(1,)]
    assert list(compositions(3)) == [(3,), (2, 1), (1, 2), (1, 1, 1)]
    for n in range(1, 17):
        comps = list(compositions(n))
        assert len(comps) == 2 ** (n - 1)
        assert len(set(comps)) == len(comps)
        assert all(sum(c) == n and all(p >= 1 for p in c) for c in comps)
