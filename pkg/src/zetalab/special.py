"""Bernoulli numbers and an Euler-Maclaurin Hurwitz zeta.

These are deliberately self-contained: they serve as the independent oracle
for the Mellin-transform determinant code in :mod:`zetalab.regprod`.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["bernoulli_number", "bernoulli_poly", "hurwitz_zeta", "log_gamma"]

HURWITZ_SHIFT = 20
HURWITZ_ORDER = 8


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # B_1 = -1/2 convention
    B = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum(math.comb(m + 1, k) * B[k] for k in range(m))
        B.append(-acc / (m + 1))
    return tuple(B)


def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _bernoulli_table(n)[n]


def bernoulli_poly(n: int, x) -> Fraction:
    """``B_n(x)``; exact when ``x`` is an int or Fraction (floats are converted exactly)."""
    x = Fraction(x)
    B = _bernoulli_table(n)
    return sum(math.comb(n, k) * B[k] * x ** (n - k) for k in range(n + 1))


def hurwitz_zeta(s, kappa: float, N: int = HURWITZ_SHIFT, K: int = HURWITZ_ORDER) -> complex:
    """Hurwitz zeta ``sum_{n>=0} (n + kappa)^(-s)`` by Euler-Maclaurin summation.

    The first ``N`` terms are summed directly; the rest is replaced by the
    integral, the boundary half-term and ``K`` Bernoulli corrections.
    """
    s = complex(s)
    if s == 1:
        raise ZeroDivisionError("hurwitz_zeta has a pole at s = 1")
    if not kappa > 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    head = sum(cmath.exp(-s * math.log(n + kappa)) for n in range(N))
    a = N + kappa
    log_a = math.log(a)
    a_s = cmath.exp(-s * log_a)
    total = head + a * a_s / (s - 1) + a_s / 2
    # rising factorial s (s+1) ... (s+2j-2), updated two factors at a time
    rising = s
    power = a_s / a
    for j in range(1, K + 1):
        total += float(bernoulli_number(2 * j)) / math.factorial(2 * j) * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= a * a
    return total


def log_gamma(x: float) -> float:
    if not x > 0:
        raise ValueError("log_gamma is defined here for positive reals only")
    return math.lgamma(x)
