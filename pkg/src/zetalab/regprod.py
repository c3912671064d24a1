"""Zeta-regularized determinants and products of positive sequences.

For an eigenvalue sequence ``a_n`` the heat trace ``theta(t) = sum exp(-t a_n)``
has a small-time expansion ``sum_k c_k t^alpha_k``.  The Mellin transform

    M(z, lam) = int_0^inf t^(z-1) exp(-lam t) theta(t) dt = Gamma(z) zeta_{A+lam}(z)

is continued to the left by splitting at ``t = 1``: on ``[0, 1]`` the first
``K`` expansion terms are subtracted and integrated in closed form, the
remainder is integrated numerically down to an inner cut ``t0`` and by further
expansion terms below it; ``[1, inf)`` is integrated numerically after the
substitution ``t = e^u``.  The determinant is ``exp(-zeta'_{A+lam}(0))`` with

    zeta(0) = Res_{z=0} M,    zeta'(0) = euler_gamma * Res_{z=0} M + FP_{z=0} M.

Three sequence models are supported: finite lists, ``a_n = n + kappa`` and
``a_n = p(n)`` for a polynomial ``p`` of positive leading coefficient.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence, Union

import numpy as np
from scipy import integrate, special as sps

from .special import bernoulli_poly

__all__ = [
    "FiniteSequence",
    "ShiftedLinear",
    "PolynomialSequence",
    "EigenSequence",
    "HeatTraceExpansion",
    "MellinConfig",
    "DetResult",
    "Bounded",
    "PoleError",
    "InsufficientConfigError",
    "theta",
    "heat_expansion",
    "mellin_laurent",
    "mellin_transform",
    "mellin_residue",
    "spectral_zeta",
    "zeta_at_zero",
    "regularized_det",
    "regularized_product",
    "det_prime",
    "read_eigenvalues",
]

EULER_GAMMA = float(np.euler_gamma)


class PoleError(ArithmeticError):
    """Evaluation point is a pole of the continued function."""

    def __init__(self, where, residue):
        self.where = where
        self.residue = residue
        super().__init__(f"pole at {where} with residue {residue}")


class InsufficientConfigError(RuntimeError):
    """The quadrature / truncation settings cannot reach the requested tolerance."""


class Bounded(NamedTuple):
    value: float
    bound: float


# -- sequences -----------------------------------------------------------------

@dataclass(frozen=True)
class FiniteSequence:
    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(sorted(float(v) for v in self.values))
        if any(not (math.isfinite(v) and v > 0) for v in vals):
            raise ValueError("finite eigenvalues must be positive reals (use det_prime for zeros)")
        object.__setattr__(self, "values", vals)

    @property
    def a_min(self) -> float:
        return self.values[0] if self.values else math.inf


@dataclass(frozen=True)
class ShiftedLinear:
    """``a_n = n + kappa`` for ``n >= 0``."""

    kappa: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"kappa must be positive, got {self.kappa}")

    @property
    def a_min(self) -> float:
        return self.kappa

    degree = 1


@dataclass(frozen=True)
class PolynomialSequence:
    """``a_n = p(n)`` for ``n >= n0``; ``coeffs`` ascending, ``p(n) = sum coeffs[k] n^k``."""

    coeffs: tuple[float, ...]
    n0: int = 0
    _fracs: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fr = [Fraction(c) for c in self.coeffs]
        while fr and fr[-1] == 0:
            fr.pop()
        if len(fr) < 2:
            raise ValueError("polynomial must be nonconstant")
        if fr[-1] < 0:
            raise ValueError("leading coefficient must be positive")
        if self.n0 < 0:
            raise ValueError("n0 must be >= 0")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in fr))
        object.__setattr__(self, "_fracs", tuple(fr))
        # p(n) > 0 on the whole range: check up to where p is increasing
        for n in range(self.n0, self._monotone_from() + 1):
            if self(n) <= 0:
                raise ValueError(f"p({n}) = {self(n)} is not positive")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n):
        return np.polynomial.polynomial.polyval(n, self.coeffs)

    def _monotone_from(self) -> int:
        """First integer >= n0 beyond which p' > 0 and p'' >= 0."""
        P = np.polynomial.Polynomial(self.coeffs)
        edge = self.n0
        for Q in (P.deriv(1), P.deriv(2)):
            if Q.degree() >= 1:
                roots = Q.roots()
                real = [r.real for r in roots if abs(r.imag) < 1e-9]
                if real:
                    edge = max(edge, math.floor(max(real)) + 1)
        return edge

    @property
    def a_min(self) -> float:
        top = self._monotone_from()
        return float(min(self(n) for n in range(self.n0, top + 1)))


EigenSequence = Union[FiniteSequence, ShiftedLinear, PolynomialSequence]


def read_eigenvalues(path) -> FiniteSequence:
    """One number per line; blank lines and ``#`` comments ignored."""
    vals = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                vals.append(float(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from exc
    return FiniteSequence(tuple(vals))


# -- heat trace ------------------------------------------------------------

_CHUNK = 4096


def theta(seq: EigenSequence, t: float, tol: float = 1e-16, lam: float = 0.0) -> Bounded:
    """``exp(-lam t) * sum_n exp(-t a_n)`` with a certified bound on the truncated tail."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    damp = math.exp(-lam * t)
    if isinstance(seq, FiniteSequence):
        return Bounded(damp * float(np.exp(-t * np.asarray(seq.values)).sum()), 0.0)
    if isinstance(seq, ShiftedLinear):
        # tail after N terms: exp(-t (N + kappa)) / (1 - exp(-t))
        geo = -math.expm1(-t)
        N = max(1, math.ceil((-math.log(tol * geo) - t * seq.kappa) / t))
        n = np.arange(N, dtype=float)
        total = float(np.exp(-t * (n + seq.kappa)).sum())
        bound = math.exp(-t * (N + seq.kappa)) / geo
        return Bounded(damp * total, damp * bound)
    # polynomial: integral comparison beyond the convex, increasing region
    P = np.polynomial.Polynomial(seq.coeffs)
    dP = P.deriv()
    start = seq.n0
    edge = seq._monotone_from()
    total = 0.0
    while True:
        n = np.arange(start, start + _CHUNK, dtype=float)
        total += float(np.exp(-t * P(n)).sum())
        last = start + _CHUNK - 1
        start += _CHUNK
        if last >= edge:
            slope = float(dP(last))
            bound = math.exp(-t * float(P(last))) / (t * slope) if slope > 0 else math.inf
            if bound <= tol:
                return Bounded(damp * total, damp * bound)


# -- small-time expansion ----------------------------------------------------

@dataclass(frozen=True)
class HeatTraceExpansion:
    """``theta(t) ~ sum_k coeff_k t^exponent_k`` as ``t -> 0``; exponents strictly increasing."""

    terms: tuple[tuple[float, Fraction], ...]

    def __post_init__(self):
        terms = tuple((float(c), Fraction(a)) for c, a in self.terms)
        exps = [a for _, a in terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("expansion exponents must be strictly increasing (no duplicates)")
        object.__setattr__(self, "terms", terms)

    @property
    def coefficients(self) -> list[float]:
        return [c for c, _ in self.terms]

    @property
    def exponents(self) -> list[Fraction]:
        return [a for _, a in self.terms]

    def __call__(self, t: float) -> float:
        return sum(c * t ** float(a) for c, a in self.terms)

    def times_exp(self, lam) -> "HeatTraceExpansion":
        """Expansion of ``exp(-lam t) theta(t)``, merging coinciding exponents (residues add)."""
        if lam == 0:
            return self
        lam = Fraction(lam)
        top = self.terms[-1][1]
        acc: dict[Fraction, float] = {}
        for c, a in self.terms:
            n = 0
            while a + n <= top:
                w = float((-lam) ** n / math.factorial(n))
                acc[a + n] = acc.get(a + n, 0.0) + c * w
                n += 1
        return HeatTraceExpansion(tuple((acc[a], a) for a in sorted(acc)))


def _binom_frac(x: Fraction, i: int) -> Fraction:
    out = Fraction(1)
    for j in range(i):
        out *= x - j
    return out / math.factorial(i)


def _zeta_neg(n: int) -> Fraction:
    """Riemann zeta at a nonpositive integer ``-n``."""
    return -bernoulli_poly(n + 1, 1) / (n + 1)


@lru_cache(maxsize=64)
def _linear_expansion(kappa: Fraction, n_terms: int) -> HeatTraceExpansion:
    # exp(-kappa t)/(1 - exp(-t)) = sum_k (-1)^k B_k(kappa) t^(k-1) / k!
    return HeatTraceExpansion(tuple(
        (float((-1) ** k * bernoulli_poly(k, kappa) / math.factorial(k)), Fraction(k - 1))
        for k in range(n_terms)
    ))


@lru_cache(maxsize=64)
def _polynomial_expansion(coeffs: tuple[Fraction, ...], n0: int, n_terms: int) -> HeatTraceExpansion:
    """Small-time expansion of ``sum_{n >= n0} exp(-t p(n))``.

    With ``q(m) = p(m + n0 - 1) = a m^d (1 + u(m))`` the Dirichlet series
    ``Z(s) = sum_m q(m)^-s`` expands as
    ``a^-s sum_i binom(-s, i) sum_r e_{i,r} zeta(d s + r)``, where ``u^i = sum_r e_{i,r} m^-r``.
    Coefficient of ``t^((r-1)/d)``: ``Gamma(s0) Res_{s0} Z`` at ``s0 = (1-r)/d``, or
    ``(-1)^k Z(-k) / k!`` when the exponent is an integer ``k >= 0``.
    """
    d = len(coeffs) - 1
    a = coeffs[-1]
    shift = n0 - 1
    q = [Fraction(0)] * (d + 1)
    for k, ck in enumerate(coeffs):
        for j in range(k + 1):
            q[j] += ck * math.comb(k, j) * Fraction(shift) ** (k - j)
    b = [q[d - i] / a for i in range(1, d + 1)]
    upow = [[Fraction(1)]]
    for _ in range(n_terms + 1):
        prev = upow[-1]
        nxt = [Fraction(0)] * (len(prev) + d)
        for r, v in enumerate(prev):
            if v:
                for i, bi in enumerate(b, start=1):
                    nxt[r + i] += v * bi
        upow.append(nxt)

    def e(i, r):
        row = upow[i] if i < len(upow) else ()
        return row[r] if r < len(row) else Fraction(0)

    terms = []
    for r in range(n_terms):
        alpha = Fraction(r - 1, d)
        if alpha.denominator == 1 and alpha >= 0:
            k = int(alpha)
            z = Fraction(0)
            for i in range(k + 1):
                z += math.comb(k, i) * sum(e(i, rr) * _zeta_neg(d * k - rr)
                                           for rr in range(i, d * i + 1))
            # binom(-s, i) vanishes at s = -k for i > k but meets the pole of zeta(ds + r) at r = 1 + dk
            for i in range(k + 1, d * k + 2):
                D = Fraction(-1)
                for j in range(i):
                    if j != k:
                        D *= k - j
                z += D / math.factorial(i) * e(i, d * k + 1) / d
            z *= a ** k
            terms.append((float((-1) ** k * z / math.factorial(k)), alpha))
        else:
            s0 = Fraction(1 - r, d)
            res = sum(_binom_frac(-s0, i) * e(i, r) for i in range(r + 1)) / d
            c = math.gamma(float(s0)) * float(res) * float(a) ** (-float(s0))
            terms.append((c, alpha))
    return HeatTraceExpansion(tuple(terms))


def heat_expansion(seq: EigenSequence, n_terms: int = 8, lam: float = 0.0) -> HeatTraceExpansion:
    """First ``n_terms`` small-time terms of ``exp(-lam t) theta(t)`` for infinite sequences."""
    if isinstance(seq, ShiftedLinear):
        base = _linear_expansion(Fraction(seq.kappa), n_terms)
    elif isinstance(seq, PolynomialSequence):
        # with lam the exponents of the product reach beyond the base list; pad
        base = _polynomial_expansion(seq._fracs, seq.n0, n_terms)
    else:
        raise TypeError("finite sequences have an exact (entire) zeta function; no expansion needed")
    return base.times_exp(lam)


# -- Mellin transform ----------------------------------------------------------

@dataclass(frozen=True)
class MellinConfig:
    """Truncation and quadrature settings.

    ``k_terms`` expansion terms are subtracted on ``[0, 1]``; below ``inner_cut``
    (default ``10**-degree``) the integrand is replaced by up to ``max_terms``
    expansion terms.  ``tol`` is the absolute accuracy requested of ``M``.
    """

    k_terms: int = 8
    max_terms: int = 60
    inner_cut: float | None = None
    tol: float = 1e-10
    quad_epsabs: float = 1e-14
    quad_epsrel: float = 1e-13
    quad_limit: int = 200
    tail_cut: float = 1e-18

    def __post_init__(self):
        if self.k_terms < 1 or self.max_terms < self.k_terms:
            raise ValueError("need 1 <= k_terms <= max_terms")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


class Laurent(NamedTuple):
    residue: float
    finite: complex
    error: float


def _real_quad(fn, a, b, cfg: MellinConfig) -> tuple[float, float]:
    # rounding noise in the subtracted remainder can stall subdivision; quad's own
    # error estimate still enters the error budget, so the warning adds nothing
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(fn, a, b, epsabs=cfg.quad_epsabs, epsrel=cfg.quad_epsrel,
                                  limit=cfg.quad_limit)
    return val, err


def _complex_quad(fn, a, b, cfg, imag: bool) -> tuple[complex, float]:
    re, e1 = _real_quad(lambda x: fn(x).real, a, b, cfg)
    if not imag:
        return complex(re), e1
    im, e2 = _real_quad(lambda x: fn(x).imag, a, b, cfg)
    return complex(re, im), e1 + e2


def _outer_limit(seq, z_re: float, lam: float, cut: float) -> float:
    """``u`` beyond which ``e^(u Re z) exp(-lam e^u) theta(e^u)`` stays below ``cut``."""
    a = seq.a_min + lam
    u = 1.0
    while True:
        t = math.exp(u)
        # theta(t) <= exp(-t a) * theta(1) * exp(a) for t >= 1
        bound = math.exp(z_re * u - t * a + a) * max(1.0, theta(seq, 1.0).value)
        if bound < cut and t * a > z_re + 1:
            return u
        u += 0.5


def _inner_cut(seq, cfg: MellinConfig) -> float:
    if cfg.inner_cut is not None:
        return cfg.inner_cut
    return 10.0 ** (-seq.degree)


def mellin_laurent(seq: EigenSequence, z0, lam: float = 0.0,
                   cfg: MellinConfig | None = None) -> Laurent:
    """Residue and finite part of ``M(z, lam)`` at ``z0`` (residue 0 away from poles)."""
    cfg = cfg or MellinConfig()
    if isinstance(seq, FiniteSequence):
        raise TypeError("Mellin continuation is only needed for infinite sequences")
    if lam < 0:
        raise ValueError("lam must be >= 0 for infinite sequences")
    z0 = complex(z0)
    t0 = _inner_cut(seq, cfg)

    # enough expansion terms that every pole right of Re z0 is captured and the rest is small
    n_terms = cfg.k_terms
    exp_full = heat_expansion(seq, n_terms, lam)
    while True:
        terms = exp_full.terms
        last_a = terms[-1][1]
        if float(last_a) > -z0.real + 1 and len(terms) >= cfg.k_terms:
            est = max(abs(c) * t0 ** (z0.real + float(a)) / abs(z0 + float(a)) for c, a in terms[-2:])
            if est < cfg.tol * 1e-3:
                break
        if n_terms >= cfg.max_terms:
            break
        n_terms = min(cfg.max_terms, n_terms + 4)
        exp_full = heat_expansion(seq, n_terms, lam)
    terms = exp_full.terms
    # the last term only serves as a truncation estimate
    used, probe = terms[:-1], terms[-1]
    if float(probe[1]) <= -z0.real:
        raise InsufficientConfigError(
            f"expansion with {cfg.max_terms} terms does not reach Re z = {z0.real}")
    trunc = max(abs(c) * t0 ** (z0.real + float(a)) / abs(z0 + float(a)) for c, a in terms[-2:])

    K = min(cfg.k_terms, len(used))
    residue = 0.0
    finite = 0j
    for j, (c, a) in enumerate(used):
        pole = z0 + float(a)
        if abs(pole) == 0.0:
            residue += c
            if j >= K:
                finite += c * math.log(t0)
        elif j < K:
            finite += c / pole
        else:
            finite += c * t0 ** pole / pole

    head = used[:K]
    imag = z0.imag != 0.0

    def middle(t):
        th = theta(seq, t, lam=lam).value
        rem = th - sum(c * t ** float(a) for c, a in head)
        return t ** (z0 - 1) * rem

    def outer(u):
        t = math.exp(u)
        return math.exp(u * z0.real) * complex(math.cos(u * z0.imag), math.sin(u * z0.imag)) \
            * theta(seq, t, lam=lam).value

    mid, e_mid = _complex_quad(middle, t0, 1.0, cfg, imag)
    U = _outer_limit(seq, z0.real, lam, cfg.tail_cut)
    out, e_out = _complex_quad(outer, 0.0, U, cfg, imag)
    finite += mid + out
    error = trunc + e_mid + e_out + cfg.tail_cut
    if error > cfg.tol:
        raise InsufficientConfigError(
            f"estimated error {error:.3g} exceeds tol {cfg.tol:.3g} at z = {z0}")
    return Laurent(residue, finite, error)


def mellin_transform(seq: EigenSequence, z, lam: float = 0.0, cfg: MellinConfig | None = None) -> complex:
    """``M(z, lam) = Gamma(z) zeta_{A+lam}(z)``; raises PoleError at a pole."""
    L = mellin_laurent(seq, z, lam, cfg)
    if L.residue != 0.0:
        raise PoleError(complex(z), L.residue)
    return L.finite


def mellin_residue(seq: EigenSequence, z, lam: float = 0.0, cfg: MellinConfig | None = None) -> float:
    return mellin_laurent(seq, z, lam, cfg).residue


def _nonpositive_int(z: complex) -> int | None:
    if z.imag == 0 and z.real <= 0 and z.real == round(z.real):
        return int(-z.real)
    return None


def spectral_zeta(seq: EigenSequence, s, lam: float = 0.0, cfg: MellinConfig | None = None) -> complex:
    """``zeta_{A+lam}(s)``, continued by the Mellin split for infinite sequences."""
    s = complex(s)
    if isinstance(seq, FiniteSequence):
        shifted = np.asarray(seq.values) + lam
        if np.any(shifted <= 0):
            raise ValueError("lam must exceed -min(a_j) for the spectral zeta of a finite sequence")
        return complex(np.exp(-s * np.log(shifted)).sum())
    L = mellin_laurent(seq, s, lam, cfg)
    n = _nonpositive_int(s)
    if n is not None:
        # 1/Gamma has a simple zero at -n with derivative (-1)^n n!
        return complex(L.residue * (-1) ** n * math.factorial(n))
    if L.residue != 0.0:
        raise PoleError(s, L.residue / math.gamma(s.real) if s.imag == 0 else L.residue)
    return complex(L.finite * sps.rgamma(s))


def zeta_at_zero(seq: EigenSequence, lam: float = 0.0, cfg: MellinConfig | None = None) -> tuple[float, float]:
    """``(zeta_{A+lam}(0), zeta'_{A+lam}(0))``."""
    if isinstance(seq, FiniteSequence):
        shifted = np.asarray(seq.values) + lam
        if np.any(shifted <= 0):
            raise ValueError("lam must exceed -min(a_j)")
        return float(len(shifted)), float(-np.log(shifted).sum())
    L = mellin_laurent(seq, 0.0, lam, cfg)
    return L.residue, EULER_GAMMA * L.residue + L.finite.real


# -- determinants ---------------------------------------------------------------

@dataclass(frozen=True)
class DetResult:
    """A regularized determinant.  ``flag`` is ``"zero"`` when ``lam`` hits ``-a_j``
    exactly and ``"empty"`` for the empty product."""

    value: float
    zeta0: float | None = None
    dzeta0: float | None = None
    flag: str | None = None

    def __float__(self):
        return float(self.value)


def regularized_det(seq: EigenSequence, lam: float = 0.0, cfg: MellinConfig | None = None) -> DetResult:
    """``det(A + lam) = exp(-zeta'_{A+lam}(0))``.

    For finite sequences this is the polynomial ``prod (a_j + lam)`` in ``lam``,
    valid on the whole real line and exactly zero at ``lam = -a_j``.
    """
    if isinstance(seq, FiniteSequence):
        if not seq.values:
            return DetResult(1.0, 0.0, 0.0, "empty")
        shifted = [a + lam for a in seq.values]
        if any(x == 0 for x in shifted):
            return DetResult(0.0, None, None, "zero")
        value = math.prod(shifted)
        if all(x > 0 for x in shifted):
            return DetResult(value, float(len(shifted)), -math.fsum(math.log(x) for x in shifted))
        return DetResult(value)
    z0, dz0 = zeta_at_zero(seq, lam, cfg)
    return DetResult(math.exp(-dz0), z0, dz0)


def regularized_product(values: EigenSequence, lam: float = 0.0, cfg: MellinConfig | None = None) -> DetResult:
    """Regularized product ``prod^ (a_j + lam)``; identical to :func:`regularized_det`."""
    return regularized_det(values, lam, cfg)


def det_prime(values: Sequence[float]) -> DetResult:
    """Determinant with the zero eigenvalues removed; the empty product is 1."""
    nonzero = [float(v) for v in values if v != 0]
    if not nonzero:
        return DetResult(1.0, 0.0, 0.0, "empty")
    return regularized_det(FiniteSequence(tuple(nonzero)))
