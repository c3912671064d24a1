import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from zetalab.special import bernoulli_number, bernoulli_poly, hurwitz_zeta, log_gamma


def test_bernoulli_numbers_match_sympy():
    sympy = pytest.importorskip("sympy")
    for n in range(0, 30):
        expected = Fraction(str(sympy.bernoulli(n))) if n != 1 else Fraction(-1, 2)
        assert bernoulli_number(n) == expected


def test_bernoulli_poly_known_values():
    assert bernoulli_poly(1, Fraction(1, 2)) == 0
    assert bernoulli_poly(2, 0) == Fraction(1, 6)
    x = Fraction(1, 3)
    assert bernoulli_poly(3, x) == x**3 - Fraction(3, 2) * x**2 + Fraction(1, 2) * x
    # B_n(1 - x) = (-1)^n B_n(x)
    x = Fraction(2, 7)
    for n in range(12):
        assert bernoulli_poly(n, 1 - x) == (-1) ** n * bernoulli_poly(n, x)


def test_hurwitz_at_two_is_basel():
    assert abs(hurwitz_zeta(2, 1) - math.pi**2 / 6) < 1e-13


def test_hurwitz_at_zero():
    for kappa in (0.3, 0.5, 1.0, 2.7, 5.0):
        assert abs(hurwitz_zeta(0, kappa) - (0.5 - kappa)) < 1e-13


def test_hurwitz_pole_and_domain():
    with pytest.raises(ZeroDivisionError):
        hurwitz_zeta(1, 1.0)
    with pytest.raises(ValueError):
        hurwitz_zeta(2, 0.0)


@settings(max_examples=60, deadline=None)
@given(
    re=st.floats(-2.0, 6.0),
    im=st.floats(-20.0, 20.0),
    kappa=st.floats(0.3, 5.0),
)
def test_hurwitz_against_mpmath(re, im, kappa):
    s = complex(re, im)
    if abs(s - 1) < 1e-3:
        return
    ref = complex(mpmath.zeta(mpmath.mpc(re, im), kappa))
    assert abs(hurwitz_zeta(s, kappa) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_log_gamma():
    assert log_gamma(1) == 0
    assert abs(log_gamma(0.5) - 0.5 * math.log(math.pi)) < 1e-15
    with pytest.raises(ValueError):
        log_gamma(0)
