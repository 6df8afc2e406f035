import itertools
import random

import pytest

from ffcount.ff import (
    BudgetExceeded,
    MvPoly,
    UniPoly,
    count_monic,
    enumerate_monic_mv,
    enumerate_monic_uni,
    field_embed,
    field_make,
)
from ffcount.mv_counts import p_count

rng = random.Random(0xF1E1D)

F2 = field_make(2, 1)
F3 = field_make(3, 1)
F4 = field_make(2, 2)


def test_field_make_moduli():
    assert field_make(2, 1).modulus is None
    assert field_make(2, 2).modulus == (1, 1, 1)  # x^2+x+1
    assert field_make(3, 2).modulus == (1, 0, 1)  # x^2+1
    assert field_make(2, 3).modulus == (1, 1, 0, 1)  # x^3+x+1


def test_field_make_rejects_composite_characteristic():
    with pytest.raises(ValueError, match="not prime"):
        field_make(6, 1)


def test_field_make_rejects_reducible_modulus():
    with pytest.raises(ValueError, match="reducible"):
        field_make(2, 2, modulus=(1, 0, 1))  # x^2+1 = (x+1)^2 over F2


@pytest.mark.parametrize("p,d", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 4)])
def test_field_axioms_and_frobenius(p, d):
    ctx = field_make(p, d)
    els = list(ctx.elements())
    for a in els:
        assert a + ctx.zero == a
        assert a * ctx.one == a
        if not a.is_zero():
            assert a * a.inv() == ctx.one
    sample = els if ctx.q <= 9 else [ctx.from_code(rng.randrange(ctx.q)) for _ in range(8)]
    for a, b in itertools.product(sample, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) ** p == a**p + b**p  # Frobenius additivity
    for a, b, c in itertools.product(sample[:5], repeat=3):
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c


def test_embed_prime_subfield_is_identity_on_bits():
    F4_, emb = field_embed(F2, 2)
    assert emb(F2.zero).code == 0
    assert emb(F2.one).code == 1


def test_embed_f4_into_f16_respects_modulus():
    F16, emb = field_embed(F4, 2)
    g = emb(F4.from_code(2))
    assert (g * g + g + F16.one).is_zero()


def test_embed_k1_is_identity():
    same, emb = field_embed(F4, 1)
    assert same is F4
    for a in F4.elements():
        assert emb(a) == a


@pytest.mark.parametrize("p,d,k", [(2, 1, 2), (2, 2, 2), (3, 1, 2), (2, 3, 2), (5, 1, 2)])
def test_embed_is_a_homomorphism(p, d, k):
    base = field_make(p, d)
    ext, emb = field_embed(base, k)
    for _ in range(40):
        a = base.from_code(rng.randrange(base.q))
        b = base.from_code(rng.randrange(base.q))
        assert emb(a + b) == emb(a) + emb(b)
        assert emb(a * b) == emb(a) * emb(b)
    # injectivity
    assert len({emb(a).code for a in base.elements()}) == base.q


def test_upoly_compose():
    assert UniPoly(F2, [0, 0, 1])(UniPoly(F2, [0, 0, 1])) == UniPoly(F2, [0, 0, 0, 0, 1])
    h = UniPoly(F2, [0, 1, 1])
    assert h(h) == UniPoly(F2, [0, 1, 0, 0, 1])  # x^4+x in characteristic 2


def test_upoly_derivative_mod_p():
    f = UniPoly(F3, [0, 1, 0, 1])  # x^3+x
    assert f.derivative() == UniPoly(F3, [1])


def test_upoly_divrem_gcd():
    a = UniPoly(F3, [2, 0, 1]) * UniPoly(F3, [1, 1]) + UniPoly(F3, [1])
    q, r = a.divmod(UniPoly(F3, [2, 0, 1]))
    assert q == UniPoly(F3, [1, 1]) and r == UniPoly(F3, [1])
    g = UniPoly(F3, [1, 1])
    assert (g * UniPoly(F3, [2, 1])).gcd(g * UniPoly(F3, [1, 0, 1])) == g
    with pytest.raises(ZeroDivisionError):
        a.divmod(UniPoly(F3, []))


def test_upoly_field_mismatch():
    with pytest.raises(ValueError, match="field mismatch"):
        UniPoly(F2, [1, 1]) + UniPoly(F3, [1, 1])


def test_mvpoly_leading_monomial_deglex():
    x = MvPoly.variable(F2, 2, 0)
    y = MvPoly.variable(F2, 2, 1)
    f = x * x + x * y + y
    assert f.leading_monomial() == (2, 0)
    assert f.is_monic()
    assert (x * y + y * y).leading_monomial() == (1, 1)


def test_mvpoly_char2_square():
    x = MvPoly.variable(F2, 2, 0)
    y = MvPoly.variable(F2, 2, 1)
    assert (x + y) * (x + y) == x * x + y * y


def test_mvpoly_monic_flag():
    x = MvPoly.variable(F3, 2, 0)
    y = MvPoly.variable(F3, 2, 1)
    assert not (x * x * 2 + y).is_monic()
    assert (x * x + 2 * y).is_monic()


def test_mvpoly_divides():
    x = MvPoly.variable(F3, 2, 0)
    y = MvPoly.variable(F3, 2, 1)
    f = (x + y) * (x * x + y * 2)
    assert (x + y).divides(f)
    assert (x * x + y * 2).divides(f)
    assert not (x + y * 2).divides(f)


def test_mvpoly_product_of_leading_terms():
    for _ in range(40):
        f = _rand_mv(F3, 2, rng.randint(1, 3))
        g = _rand_mv(F3, 2, rng.randint(1, 3))
        lead = tuple(a + b for a, b in zip(f.leading_monomial(), g.leading_monomial()))
        assert (f * g).leading_monomial() == lead
        if f.is_monic() and g.is_monic():
            assert (f * g).is_monic()


def _rand_mv(ctx, r, n):
    while True:
        terms = {}
        for exp in itertools.product(range(n + 1), repeat=r):
            if sum(exp) <= n and rng.random() < 0.5:
                terms[exp] = rng.randrange(ctx.q)
        poly = MvPoly.from_code_terms(ctx, r, {e: c for e, c in terms.items() if c})
        if poly.total_degree() == n:
            return poly


def test_enumerate_uni_counts():
    assert sum(1 for _ in enumerate_monic_uni(F2, 3)) == 8
    assert sum(1 for _ in enumerate_monic_uni(F2, 3, original=True)) == 4
    assert sum(1 for _ in enumerate_monic_uni(F3, 0)) == 1
    assert sum(1 for _ in enumerate_monic_uni(F3, 0, original=True)) == 0


@pytest.mark.parametrize(
    "r,n,q",
    [(1, 3, 2), (1, 4, 3), (2, 1, 2), (2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 2, 2), (2, 2, 4), (3, 2, 3), (2, 3, 3)],
)
def test_enumerate_mv_matches_closed_form(r, n, q):
    ctx = field_make(*_pq(q))
    polys = list(enumerate_monic_mv(ctx, r, n))
    assert len(polys) == p_count(r, n).evaluate(q)
    assert len(polys) == count_monic(q, r, n)
    assert len({f.key() for f in polys}) == len(polys)
    assert all(f.is_monic() and f.total_degree() == n for f in polys)


def _pq(q):
    from ffcount.series import factor_prime_power

    return factor_prime_power(q)


def test_enumerate_mv_original():
    got = sum(1 for _ in enumerate_monic_mv(F2, 2, 2, original=True))
    assert got == count_monic(2, 2, 2, original=True)
    assert got == 28  # half of the 56 monic ones have zero constant term


def test_enumeration_budget_error_names_required_count():
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_monic_mv(F3, 3, 4, budget=1000))
    assert exc.value.required > 1000
    assert "budget" in str(exc.value)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("FFCOUNT_BUDGET", "3")
    with pytest.raises(BudgetExceeded):
        list(enumerate_monic_uni(F2, 3))
