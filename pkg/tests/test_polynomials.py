import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckelab.polynomials import IntPoly, from_fraction_coeffs, rescaled_charpoly

coeff_lists = st.lists(st.integers(-50, 50), min_size=0, max_size=8)


def _poly(coeffs):
    return IntPoly.make(coeffs)


def test_basic_forms():
    assert IntPoly.zero().is_zero()
    assert IntPoly.one().degree == 0
    assert IntPoly.x().degree == 1
    assert IntPoly.x_power(5)[5] == 1
    assert IntPoly.make([1, 2, 0, 0]) == IntPoly((1, 2))
    assert IntPoly.constant(7)(3) == 7


def test_degree_lc_monic():
    f = _poly([3, 0, 2])
    assert f.degree == 2 and f.lc == 2 and not f.is_monic()
    assert (_poly([1, 1])).is_monic()
    assert IntPoly.zero().degree == -1


@given(coeff_lists, coeff_lists)
def test_ring_commutative(a, b):
    f, g = _poly(a), _poly(b)
    assert f + g == g + f
    assert f * g == g * f
    assert f - g == -(g - f)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_distributive(a, b, c):
    f, g, h = _poly(a), _poly(b), _poly(c)
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)


@given(coeff_lists, st.integers(0, 5))
def test_pow(a, e):
    f = _poly(a)
    expected = IntPoly.one()
    for _ in range(e):
        expected = expected * f
    assert f ** e == expected


@given(coeff_lists, coeff_lists)
def test_eval_is_hom(a, b):
    f, g = _poly(a), _poly(b)
    for x in (-2, 0, 1, 3):
        assert (f * g)(x) == f(x) * g(x)
        assert (f + g)(x) == f(x) + g(x)


@given(coeff_lists, coeff_lists)
def test_divmod_exact(a, b):
    f, g = _poly(a), _poly(b)
    if g.is_zero():
        return
    try:
        q, r = f.divmod_exact(g)
    except ValueError:
        return  # division not exact over Z for this pair
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@given(coeff_lists, coeff_lists)
def test_product_divides(a, b):
    f, g = _poly(a), _poly(b)
    if f.is_zero() or g.is_zero():
        return
    assert f.divides(f * g)
    q, r = (f * g).divmod_exact(f)
    assert r.is_zero() and q == g


@given(coeff_lists, coeff_lists)
def test_derivative_leibniz(a, b):
    f, g = _poly(a), _poly(b)
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


def test_content_primitive():
    f = _poly([6, 12, 18])
    assert f.content() == 6
    assert f.primitive_part() == _poly([1, 2, 3])
    assert IntPoly.zero().content() == 0


@given(coeff_lists, coeff_lists)
def test_gcd_divides_both(a, b):
    f, g = _poly(a), _poly(b)
    d = f.gcd(g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    assert d.divides(f) and d.divides(g)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_gcd_common_factor(a, b, c):
    f, g, h = _poly(a), _poly(b), _poly(c)
    if f.is_zero() or (g.is_zero() and h.is_zero()):
        return
    d = (f * g).gcd(f * h)
    assert f.primitive_part().divides(d)


@given(coeff_lists)
def test_compose_neg(a):
    f = _poly(a)
    g = f.compose_neg()
    for x in (-3, -1, 0, 2):
        assert g(x) == f(-x)


def test_eval_fraction():
    f = _poly([1, 0, 1])  # 1 + x^2
    assert f.eval_fraction(Fraction(1, 2)) == Fraction(5, 4)


def test_from_fraction_coeffs():
    f = from_fraction_coeffs([Fraction(2), Fraction(-3), Fraction(1)])
    assert f == _poly([2, -3, 1])
    with pytest.raises(ValueError):
        from_fraction_coeffs([Fraction(1, 2), Fraction(1)])


def test_rescaled_charpoly():
    # charpoly of 2A is (X-2)^3 when A has charpoly (X-1)^3
    coeffs = [Fraction(-8), Fraction(12), Fraction(-6), Fraction(1)]
    assert rescaled_charpoly(coeffs, 2) == _poly([-1, 3, -3, 1])
