import random

import pytest

from extquot.errors import ExactDivisionError, InputError
from extquot.ring import Ring, RingAutomorphism, format_poly, parse_poly

from conftest import random_poly


def test_ring_construction_validates():
    with pytest.raises(InputError):
        Ring(4, 2)
    with pytest.raises(InputError):
        Ring(5, 0)
    with pytest.raises(InputError):
        Ring(5, 7)
    with pytest.raises(InputError):
        Ring(5, 2, order="weird")


def test_parse_print_round_trip():
    R = Ring(7, 3)
    rng = random.Random(1)
    for _ in range(200):
        f = random_poly(rng, R)
        assert parse_poly(R, format_poly(f)) == f
    assert format_poly(R.zero()) == "0"
    assert parse_poly(R, "0") == R.zero()
    assert parse_poly(R, "x1^2*x3") == R.monomial((2, 0, 1))
    assert parse_poly(R, "2*x1 - 3") == R.poly({(1, 0, 0): 2, (0, 0, 0): 4})


def test_parse_errors():
    R = Ring(5, 2)
    for bad in ("", "x3", "x1^", "x1**2", "1 + + 2", "y"):
        with pytest.raises(InputError):
            parse_poly(R, bad)


def test_grevlex_order():
    R = Ring(5, 2)
    k = R.key
    assert k((1, 0)) > k((0, 1))            # x > y
    assert k((2, 0)) > k((1, 1)) > k((0, 2))
    assert k((0, 2)) > k((1, 0))            # degree first
    R3 = Ring(5, 3)
    # grevlex tie-break: smallest exponent in the last variable wins
    assert R3.key((1, 1, 0)) > R3.key((1, 0, 1))


def test_lex_order_and_permutation():
    R = Ring(5, 2, order="lex")
    assert R.key((1, 0)) > R.key((0, 5))
    Rp = Ring(5, 2, order="lex", perm=[1, 0])
    assert Rp.key((0, 1)) > Rp.key((5, 0))


def test_arithmetic_laws():
    R = Ring(11, 2)
    rng = random.Random(2)
    for _ in range(100):
        f, g, h = (random_poly(rng, R) for _ in range(3))
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f - f == R.zero()
        assert f * R.one() == f


def test_leading_term_multiplicative():
    R = Ring(5, 2)
    rng = random.Random(3)
    for _ in range(100):
        f, g = random_poly(rng, R), random_poly(rng, R)
        if f.is_zero() or g.is_zero():
            continue
        ef, cf = f.lead()
        eg, cg = g.lead()
        e, c = (f * g).lead()
        assert e == tuple(a + b for a, b in zip(ef, eg))
        assert c == cf * cg % 5


def test_exact_division():
    R = Ring(5, 2)
    rng = random.Random(4)
    for _ in range(60):
        f, g = random_poly(rng, R), random_poly(rng, R)
        if g.is_zero():
            continue
        prod = f * g
        if prod.is_zero():
            continue
        assert prod.exact_div(g) == f
    x, y = R.var(0), R.var(1)
    with pytest.raises(ExactDivisionError):
        (x * x + y).exact_div(x)


def test_automorphism_laws():
    R = Ring(5, 2)
    sigma = RingAutomorphism.affine(R, [2, 1], [1, 0])
    x = R.var(0)
    assert format_poly(sigma.apply(x)) == "2*x1+1"
    ident = RingAutomorphism.identity(R)
    rng = random.Random(5)
    for _ in range(100):
        f, g = random_poly(rng, R), random_poly(rng, R)
        assert sigma.apply(f + g) == sigma.apply(f) + sigma.apply(g)
        assert sigma.apply(f * g) == sigma.apply(f) * sigma.apply(g)
        assert sigma.apply_inverse(sigma.apply(f)) == f
        assert ident.apply(f) == f
    assert sigma.apply(R.one()) == R.one()


def test_automorphism_rejects_non_inverse():
    R = Ring(5, 2)
    x, y = R.var(0), R.var(1)
    with pytest.raises(InputError):
        RingAutomorphism(R, [x + R.one(), y], [x + R.one(), y])
