"""Exact polynomials and truncated power series in one variable ``T``.

Coefficients are Python ints or Fractions, stored ascending.  Nothing here
touches floating point except :meth:`IntPolynomial.to_float`.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "IntPolynomial",
    "TruncatedSeries",
    "bareiss_det",
    "interpolate",
    "squarefree_decomposition",
]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class IntPolynomial:
    """Polynomial with exact (integer or rational) coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm(c) for c in coeffs]
        for c in cs:
            if not isinstance(c, Rational):
                raise TypeError(f"coefficients must be exact rationals, got {c!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "IntPolynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "IntPolynomial":
        return cls([0] * degree + [c])

    # -- basics
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def to_list(self) -> list:
        return list(self.coeffs) if self.coeffs else [0]

    def to_float(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    # -- arithmetic
    @staticmethod
    def _lift(x) -> "IntPolynomial":
        return x if isinstance(x, IntPolynomial) else IntPolynomial([x])

    def __add__(self, other):
        other = self._lift(other)
        return IntPolynomial(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, IntPolynomial):
            return IntPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = IntPolynomial([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def divmod(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division with remainder over the rationals."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        """Exact division; raises ArithmeticError when the remainder is nonzero."""
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def monic(self) -> "IntPolynomial":
        if self.is_zero():
            return self
        lead = Fraction(self.coeffs[-1])
        return IntPolynomial(Fraction(c) / lead for c in self.coeffs)

    def primitive(self) -> "IntPolynomial":
        """Integer polynomial with coprime coefficients and positive leading coefficient."""
        from math import gcd, lcm

        if self.is_zero():
            return self
        den = lcm(*(Fraction(c).denominator for c in self.coeffs))
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = gcd(*ints)
        sign = 1 if ints[-1] > 0 else -1
        return IntPolynomial(sign * c // g for c in ints)

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        """Monic greatest common divisor over the rationals."""
        a, b = self.monic(), self._lift(other).monic()
        while b:
            _, r = a.divmod(b)
            a, b = b, r.monic()
        return a.monic()

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[: order + 1], order)


def squarefree_decomposition(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: ``f = c * prod a_i^i`` with the ``a_i`` squarefree and coprime.

    Returns ``[(a_i, i)]`` for the nonconstant factors, each ``a_i`` primitive over Z.
    """
    if f.degree < 1:
        return []
    df = f.derivative()
    a0 = f.gcd(df)
    b = f // a0
    c = df // a0
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.primitive(), i))
        i += 1
    return out


class TruncatedSeries:
    """Power series known exactly up to and including ``T^order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence = (), order: int = 0):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [_norm(c) for c in list(coeffs)[: order + 1]]
        cs += [0] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)}, order={self.order})"

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __getitem__(self, k):
        return self.coeffs[k]

    def to_list(self) -> list:
        return list(self.coeffs)

    def _match(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        n = self._match(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], n)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        n = self._match(other)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def mul_one_minus_monomial(self, degree: int) -> "TruncatedSeries":
        """``self * (1 - T^degree)`` without building the second factor."""
        out = list(self.coeffs)
        for k in range(self.order, degree - 1, -1):
            out[k] -= self.coeffs[k - degree]
        return TruncatedSeries(out, self.order)

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = Fraction(1, 1) / c0
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = sum(self.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out.append(-acc * inv0)
        return TruncatedSeries(out, self.order)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def derivative(self) -> "TruncatedSeries":
        """Derivative, known to order ``order - 1``."""
        if self.order == 0:
            raise ValueError("derivative of an order-0 series carries no information")
        return TruncatedSeries([k * c for k, c in enumerate(self.coeffs) if k], self.order - 1)

    def first_mismatch(self, other: "TruncatedSeries") -> int | None:
        n = self._match(other)
        for k in range(n + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None


def bareiss_det(matrix: Sequence[Sequence]):
    """Fraction-free Gaussian elimination determinant.

    Entries may be ints or :class:`IntPolynomial`; every division is exact
    (Sylvester's identity), so the result is exact in the entries' ring.
    """
    M = [list(row) for row in matrix]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0 * M[0][0]
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - mik * row_k[j] if mik else pivot * row_i[j]
                row_i[j] = num // prev
            row_i[k] = 0 * pivot
        prev = pivot
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def interpolate(xs: Sequence[int], ys: Sequence) -> IntPolynomial:
    """Exact polynomial through the points ``(xs[i], ys[i])`` (Newton divided differences)."""
    if len(xs) != len(ys) or len(set(xs)) != len(xs):
        raise ValueError("need distinct abscissae, one value each")
    n = len(xs)
    table = [Fraction(y) for y in ys]
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)]
        newton.append(table[0])
    poly = IntPolynomial([newton[-1]])
    for k in range(n - 2, -1, -1):
        poly = poly * IntPolynomial([-xs[k], 1]) + newton[k]
    return poly
