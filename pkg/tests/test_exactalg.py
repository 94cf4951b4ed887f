import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2zeta.exactalg import (
    Poly,
    RatFun,
    TruncSeries,
    poly_divexact,
    poly_gcd,
    pochhammer,
    ratfun_reduce,
    series_pow,
)

s = Poly.var("s")
w = Poly.var("w")
u = Poly.var("u")
v = Poly.var("v")


def rand_poly(rng, vars=("s", "z"), max_deg=3, max_terms=5):
    p = Poly.zero()
    for _ in range(rng.randint(1, max_terms)):
        term = Poly.const(F(rng.randint(-9, 9), rng.randint(1, 4)))
        for name in vars:
            term = term * Poly.var(name) ** rng.randint(0, max_deg)
        p = p + term
    return p


# -- pochhammer --------------------------------------------------------------


def test_pochhammer_empty_product():
    assert pochhammer(Poly.affine("s", F(-1, 2), F(1, 2)), 0) == Poly.const(1)


def test_pochhammer_direct_expansion():
    assert pochhammer(w, 2) == w * w + w


def test_pochhammer_half_shift():
    got = pochhammer(Poly.affine("s", F(1, 2), F(1, 2)), 2)
    assert got == (s * s + 4 * s + 3) * F(1, 4)


@given(st.integers(0, 8), st.integers(0, 8))
def test_pochhammer_addition_rule(j, k):
    b = Poly.affine("s", F(1, 3), F(-2))
    assert pochhammer(b, j + k) == pochhammer(b, j) * pochhammer(b + j, k)


# -- ratfun ------------------------------------------------------------------


def test_reduce_common_factor():
    r = ratfun_reduce(s * s - 1, s - 1)
    assert r == RatFun.from_poly(s + 1)


def test_reduce_zero_numerator():
    r = ratfun_reduce(Poly.zero(), s)
    assert r.num == Poly.zero() and r.den == Poly.const(1)


def test_reduce_already_reduced():
    num = (s - 3) * (s - 4) ** 2 * (s - 5)
    den = s * (s - 1) ** 2 * (s - 2)
    r = ratfun_reduce(num, den)
    assert r.num == num and r.den == den


def test_reduce_zero_denominator_raises():
    with pytest.raises(ZeroDivisionError):
        ratfun_reduce(s, Poly.zero())


def test_ratfun_field_ops():
    a = ratfun_reduce(s + 1, s - 1)
    b = ratfun_reduce(s - 1, s + 1)
    assert a * b == RatFun.const(1)
    assert (a - a).is_zero()
    assert (a / a) == RatFun.const(1)
    x = F(7, 2)
    assert (a + b).eval({"s": x}) == (x + 1) / (x - 1) + (x - 1) / (x + 1)


def test_gcd_multivariate():
    z = Poly.var("z")
    g = s * z + 1
    a = g * (s + 2)
    b = g * (z - 3)
    got = poly_gcd(a, b)
    # gcd determined up to scalar; normalize comparison via exact division
    assert poly_divexact(a, got) * got == a
    assert poly_divexact(b, got) * got == b
    assert got.total_degree() == g.total_degree()


# -- ring axioms (seeded randomized) ------------------------------------------


def test_ring_axioms_seeded():
    rng = random.Random(20240811)
    for _ in range(250):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_subs_and_eval():
    p = (s + 1) ** 2 * (s - 2)
    assert p.eval({"s": F(3)}) == 16
    q = p.subs({"s": Poly.const(5) - s})
    assert q.eval({"s": F(2)}) == p.eval({"s": F(3)})


# -- truncated series ---------------------------------------------------------


def test_series_pow_univariate_binomial():
    ts = series_pow(u, "w", 2)
    assert ts.coefficient(2, 0) == (w * w + w) * F(1, 2)
    assert ts.coefficient(0, 0) == Poly.const(1)


def test_series_pow_cross_term():
    base = 2 * u + 2 * v - (u - v) ** 2
    ts = series_pow(base, "w", 4)
    assert ts.coefficient(1, 1) == 4 * w * w + 6 * w


def test_series_pow_rejects_constant_term():
    with pytest.raises(ValueError):
        series_pow(u + 1, "w", 3)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_series_pow_negative_integer_specialization(m):
    # at w = -m the series is the exact polynomial (1-base)^m, truncated
    base = 2 * u + 2 * v - (u - v) ** 2
    cutoff = 6
    ts = series_pow(base, "w", cutoff)
    expect = (Poly.const(1) - base) ** m
    for j in range(cutoff + 1):
        for k in range(cutoff + 1 - j):
            coeff = ts.coefficient(j, k).eval({"w": F(-m)})
            target = F(0)
            for e, cc in expect.terms.items():
                if dict(zip(expect.vars, e)).get("u", 0) == j and dict(
                    zip(expect.vars, e)
                ).get("v", 0) == k:
                    target = cc
            assert coeff == target, (j, k, m)
