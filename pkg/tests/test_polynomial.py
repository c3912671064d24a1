from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from zetalab.polynomial import IntPolynomial, TruncatedSeries, bareiss_det, interpolate, squarefree_decomposition

ints = st.integers(-20, 20)
polys = st.lists(ints, max_size=7).map(IntPolynomial)

T = sympy.symbols("T")


def to_sympy(p: IntPolynomial):
    return sum(sympy.Rational(c) * T**k for k, c in enumerate(p.coeffs))


def test_basic_arithmetic():
    p = IntPolynomial([1, -1])
    assert (p**2).coeffs == (1, -2, 1)
    assert (p * p - IntPolynomial([1, -2, 1])).is_zero()
    assert p(3) == -2
    assert IntPolynomial([1, 0, 0]).degree == 0
    assert IntPolynomial().degree == -1


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        IntPolynomial([0.5])


@settings(max_examples=80, deadline=None)
@given(a=polys, b=polys)
def test_ring_ops_match_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0


@settings(max_examples=80, deadline=None)
@given(a=polys, b=polys)
def test_divmod(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=60, deadline=None)
@given(factors=st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 3)), min_size=1, max_size=4))
def test_squarefree_against_sympy(factors):
    f = IntPolynomial([1])
    for root, mult in factors:
        f = f * IntPolynomial([-root, 1]) ** mult
    ours = {}
    for a, i in squarefree_decomposition(f):
        ours[i] = a
    ref = sympy.sqf_list(to_sympy(f), T)[1]
    assert len(ours) == len(ref)
    for g, i in ref:
        assert sympy.simplify(to_sympy(ours[i]) / g).is_number


def test_series_inverse_and_division():
    one_minus = TruncatedSeries([1, -1], 6)
    geo = one_minus.inverse()
    assert geo.coeffs == (1,) * 7
    assert (geo * one_minus).coeffs == (1, 0, 0, 0, 0, 0, 0)
    assert TruncatedSeries.one(4).mul_one_minus_monomial(2).coeffs == (1, 0, -1, 0, 0)
    d = TruncatedSeries([0, 1, 1, 1], 3).derivative()
    assert d.order == 2 and d.coeffs == (1, 2, 3)


def test_first_mismatch():
    a = TruncatedSeries([1, 2, 3], 2)
    assert a.first_mismatch(TruncatedSeries([1, 2, 3], 2)) is None
    assert a.first_mismatch(TruncatedSeries([1, 2, 4], 2)) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_bareiss_integer(rows):
    assert bareiss_det(rows) == sympy.Matrix(rows).det()


def test_bareiss_polynomial_entries():
    x = IntPolynomial([0, 1])
    M = [[1 - x, x], [x * x, IntPolynomial([1])]]
    assert bareiss_det(M) == (1 - x) - x**3


def test_interpolate_roundtrip():
    p = IntPolynomial([3, -1, 0, 2])
    xs = list(range(-2, 3))
    assert interpolate(xs, [p(x) for x in xs]) == p
    assert interpolate([0, 1], [Fraction(1, 2), 1]) == IntPolynomial([Fraction(1, 2), Fraction(1, 2)])
