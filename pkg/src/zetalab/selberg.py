"""Generalized Selberg and Ruelle zeta functions evaluated from a length spectrum.

For a primitive class with length ``l``, weight ``w``, twisting eigenvalues
``u_j`` and contraction eigenvalues ``v_k`` the log of the Euler product is

    log Z_{q,p}(s) = - sum_gamma w sum_{m>=1} (1/m) e^{-s m l} tr omega(m)
                     e_q(phases1^m) e_p(phases2^m) / prod_k (1 - v_k^m)

where ``e_r`` is the elementary symmetric function (trace on an exterior
power) and the last factor sums the symmetric powers of ``n`` in closed form.
Every returned value comes with a certified bound on the truncated tails.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import NamedTuple, Sequence

import numpy as np

from .spectra import LengthSpectrum, PrimitiveClass

__all__ = [
    "EvalConfig",
    "Certified",
    "BelowAbscissaError",
    "CapExhaustedError",
    "elementary_symmetric",
    "complete_homogeneous",
    "convergence_abscissa",
    "log_selberg_series",
    "log_selberg",
    "selberg_zeta",
    "log_ruelle",
    "ruelle_zeta",
    "ruelle_decomposition_residual",
    "exterior_det_residual",
    "selberg_euler_product",
]

DEFAULT_GUARD = 0.1
_EPS = np.finfo(float).eps


class BelowAbscissaError(ValueError):
    def __init__(self, s, abscissa):
        self.s = s
        self.abscissa = abscissa
        super().__init__(f"Re(s) = {complex(s).real} is below the convergence abscissa {abscissa}")


class CapExhaustedError(RuntimeError):
    pass


@dataclass(frozen=True)
class EvalConfig:
    tol: float = 1e-12
    m_cap: int | None = None
    n_cap: int | None = None
    guard: float = DEFAULT_GUARD

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not self.guard > 0:
            raise ValueError("guard must be positive")
        for cap in (self.m_cap, self.n_cap):
            if cap is not None and cap < 0:
                raise ValueError("caps must be nonnegative")


class Certified(NamedTuple):
    value: complex
    tail_bound: float
    terms: int


def elementary_symmetric(values, r_max: int | None = None) -> np.ndarray:
    """``[e_0, ..., e_r_max]`` of the last axis of ``values`` (batched over leading axes)."""
    x = np.asarray(values, dtype=complex)
    K = x.shape[-1]
    r_max = K if r_max is None else r_max
    e = np.zeros(x.shape[:-1] + (r_max + 1,), dtype=complex)
    e[..., 0] = 1
    for k in range(K):
        e[..., 1:] = e[..., 1:] + x[..., k:k + 1] * e[..., :-1]
    return e


def complete_homogeneous(values, n_max: int) -> np.ndarray:
    """``[h_0, ..., h_n_max]`` of the last axis of ``values``, via the product of
    geometric series ``prod_k 1/(1 - x_k T)`` truncated at degree ``n_max``."""
    x = np.asarray(values, dtype=complex)
    h = np.zeros(x.shape[:-1] + (n_max + 1,), dtype=complex)
    h[..., 0] = 1
    for k in range(x.shape[-1]):
        xk = x[..., k:k + 1]
        for n in range(1, n_max + 1):
            h[..., n] = h[..., n] + xk[..., 0] * h[..., n - 1]
    return h


def convergence_abscissa(spec: LengthSpectrum, guard: float = DEFAULT_GUARD) -> float:
    """``guard / min(1, l_min)``, or 0 for the empty spectrum.

    For ``Re s`` at or above this value every ``e^{-Re(s) l}`` is at most
    ``e^{-guard}``, which keeps the geometric tail constants finite.
    """
    if not spec.classes:
        return 0.0
    return guard / min(1.0, spec.min_length)


def _check_s(spec, s, guard):
    sigma0 = convergence_abscissa(spec, guard)
    if spec.classes and complex(s).real < sigma0:
        raise BelowAbscissaError(s, sigma0)


def _class_constant(c: PrimitiveClass, spec: LengthSpectrum, q: int, p: int) -> float:
    """Majorant of |w tr omega e_q e_p| / prod |1 - v^m| uniform in m."""
    a = spec.alpha_norm * c.length
    return (abs(c.weight) * len(c.omega_eigs) * math.comb(spec.d1, q) * math.comb(spec.d2, p)
            / (-math.expm1(-a)) ** spec.d1 / (-math.expm1(-2 * a)) ** spec.d2)


def _m_tail(const: float, sigma: float, length: float, M: int) -> float:
    """Bound on sum_{m > M} const e^{-sigma m l} / m."""
    x = sigma * length
    return const * math.exp(-x * (M + 1)) / ((M + 1) * -math.expm1(-x))


def _choose_m(const: float, sigma: float, length: float, target: float, m_cap: int | None) -> int:
    """Smallest M whose m-tail is below ``target``, clipped to ``m_cap``."""
    M = 1
    while _m_tail(const, sigma, length, M) > target:
        M *= 2
        if m_cap is not None and M >= m_cap:
            return max(m_cap, 1)
    lo, hi = M // 2, M
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _m_tail(const, sigma, length, mid) > target:
            lo = mid
        else:
            hi = mid
    return max(hi, 1)


def _class_terms(c: PrimitiveClass, spec: LengthSpectrum, q: int, p: int, s: complex,
                 M: int, n_terms: int | None):
    """Per-m terms (without the leading minus sign) and the symmetric-power tail bound."""
    m = np.arange(1, M + 1)
    l = c.length
    em = np.exp(-s * l * m)
    tr_omega = (np.asarray(c.omega_eigs)[None, :] ** m[:, None]).sum(axis=1) if c.omega_eigs else 0
    ph1 = np.asarray(c.phases_grade1, dtype=complex).reshape(1, -1) ** m[:, None]
    ph2 = np.asarray(c.phases_grade2, dtype=complex).reshape(1, -1) ** m[:, None]
    eq = elementary_symmetric(ph1, spec.d1)[:, q]
    ep = elementary_symmetric(ph2, spec.d2)[:, p]
    r1 = np.exp(-spec.alpha_norm * l * m)[:, None]
    r2 = np.exp(-2 * spec.alpha_norm * l * m)[:, None]
    v = np.concatenate([ph1 * r1, ph2 * r2], axis=1)
    radii = np.concatenate([np.broadcast_to(r1, ph1.shape), np.broadcast_to(r2, ph2.shape)], axis=1)
    full_major = np.prod(1.0 / (1.0 - radii), axis=1)
    if n_terms is None:
        sym = np.prod(1.0 / (1.0 - v), axis=1)
        n_tail = np.zeros(M)
    else:
        sym = complete_homogeneous(v, n_terms).sum(axis=1)
        partial_major = complete_homogeneous(radii, n_terms).real.sum(axis=1)
        n_tail = np.maximum(full_major - partial_major, 0.0)
    terms = c.weight * em * tr_omega * eq * ep * sym / m
    scale = abs(c.weight) * len(c.omega_eigs) * math.comb(spec.d1, q) * math.comb(spec.d2, p)
    n_bound = float((scale * np.exp(-s.real * l * m) / m * n_tail).sum())
    return terms, n_bound


def log_selberg_series(spec: LengthSpectrum, q: int, p: int, s, m_terms: int,
                       n_terms: int | None = None, guard: float = DEFAULT_GUARD) -> Certified:
    """Log-series truncated at ``m <= m_terms`` (every class) and, if given,
    symmetric degree ``N <= n_terms``; the bound covers both tails and rounding."""
    _check_qp(spec, q, p)
    s = complex(s)
    _check_s(spec, s, guard)
    total = 0j
    bound = 0.0
    for c in spec.classes:
        terms, n_bound = _class_terms(c, spec, q, p, s, m_terms, n_terms)
        total -= terms.sum()
        bound += n_bound + _m_tail(_class_constant(c, spec, q, p), s.real, c.length, m_terms)
        bound += 8 * _EPS * float(np.abs(terms).sum())
    return Certified(complex(total), float(bound), m_terms)


def _check_qp(spec, q, p):
    if not (0 <= q <= spec.d1 and 0 <= p <= spec.d2):
        raise ValueError(f"need 0 <= q <= {spec.d1} and 0 <= p <= {spec.d2}, got q={q}, p={p}")


def log_selberg(spec: LengthSpectrum, q: int, p: int, s, cfg: EvalConfig | None = None) -> Certified:
    """``log Z_{q,p}(s)`` with absolute error at most ``cfg.tol``.

    The twist is ``wedge^q n_alpha (x) wedge^p n_2alpha``; ``q = p = 0`` is the
    untwisted zeta function.  Refuses ``s`` left of :func:`convergence_abscissa`.
    """
    cfg = cfg or EvalConfig()
    _check_qp(spec, q, p)
    s = complex(s)
    _check_s(spec, s, cfg.guard)
    if not spec.classes:
        return Certified(0j, 0.0, 0)
    share = cfg.tol / len(spec.classes)
    total = 0j
    bound = 0.0
    m_used = 0
    for c in spec.classes:
        const = _class_constant(c, spec, q, p)
        if const == 0:
            continue
        M = _choose_m(const, s.real, c.length, share / 2, cfg.m_cap)
        terms, n_bound = _class_terms(c, spec, q, p, s, M, cfg.n_cap)
        class_bound = n_bound + _m_tail(const, s.real, c.length, M) \
            + 8 * _EPS * float(np.abs(terms).sum())
        if class_bound > share:
            raise CapExhaustedError(
                f"class {c.id!r}: caps m={cfg.m_cap}, n={cfg.n_cap} leave tail {class_bound:.3g} > {share:.3g}")
        total -= complex(terms.sum())
        bound += class_bound
        m_used = max(m_used, M)
    return Certified(complex(total), float(bound), m_used)


def selberg_zeta(spec: LengthSpectrum, q: int, p: int, s, cfg: EvalConfig | None = None) -> complex:
    return cmath.exp(log_selberg(spec, q, p, s, cfg).value)


def log_ruelle(spec: LengthSpectrum, s, cfg: EvalConfig | None = None) -> Certified:
    """``log Z^R(s) = - sum_gamma w sum_m e^{-s m l} tr omega(gamma^m) / m``."""
    cfg = cfg or EvalConfig()
    s = complex(s)
    _check_s(spec, s, cfg.guard)
    if not spec.classes:
        return Certified(0j, 0.0, 0)
    share = cfg.tol / len(spec.classes)
    total = 0j
    bound = 0.0
    m_used = 0
    for c in spec.classes:
        const = abs(c.weight) * len(c.omega_eigs)
        if const == 0:
            continue
        M = _choose_m(const, s.real, c.length, share / 2, cfg.m_cap)
        m = np.arange(1, M + 1)
        tr_omega = (np.asarray(c.omega_eigs)[None, :] ** m[:, None]).sum(axis=1)
        terms = c.weight * np.exp(-s * c.length * m) * tr_omega / m
        class_bound = _m_tail(const, s.real, c.length, M) + 8 * _EPS * float(np.abs(terms).sum())
        if class_bound > share:
            raise CapExhaustedError(f"class {c.id!r}: m cap {cfg.m_cap} leaves tail {class_bound:.3g}")
        total -= complex(terms.sum())
        bound += class_bound
        m_used = max(m_used, M)
    return Certified(complex(total), float(bound), m_used)


def ruelle_zeta(spec: LengthSpectrum, s, cfg: EvalConfig | None = None) -> complex:
    return cmath.exp(log_ruelle(spec, s, cfg).value)


def ruelle_decomposition_residual(spec: LengthSpectrum, s, cfg: EvalConfig | None = None) -> float:
    """``|log Z^R(s) - sum_{q,p} (-1)^{q+p} log Z_{q,p}(s + (q + 2p)|alpha|)|``."""
    cfg = cfg or EvalConfig()
    s = complex(s)
    rhs = 0j
    for q in range(spec.d1 + 1):
        for p in range(spec.d2 + 1):
            shifted = s + (q + 2 * p) * spec.alpha_norm
            rhs += (-1) ** (q + p) * log_selberg(spec, q, p, shifted, cfg).value
    return float(abs(log_ruelle(spec, s, cfg).value - rhs))


def exterior_det_residual(eigs: Sequence[complex]) -> float:
    """``|prod (1 - lambda_k) - sum_r (-1)^r e_r(lambda)|``."""
    eigs = [complex(z) for z in eigs]
    lhs = complex(np.prod([1 - z for z in eigs])) if eigs else 1 + 0j
    e = elementary_symmetric(np.asarray(eigs, dtype=complex).reshape(-1)) if eigs else np.ones(1)
    rhs = sum((-1) ** r * e[r] for r in range(len(e)))
    return float(abs(lhs - rhs))


def selberg_euler_product(spec: LengthSpectrum, q: int, p: int, s, n_cap: int) -> complex:
    """Log of the Euler product itself: a sum of ``w log(1 - e^{-s l} u t v^N)`` over
    classes, twist eigenvalues ``u``, exterior-power eigenvalues ``t`` and every
    multi-index ``N`` with ``|N| <= n_cap``.  Slow; used as an independent check."""
    _check_qp(spec, q, p)
    s = complex(s)
    total = 0j
    for c in spec.classes:
        e_sl = cmath.exp(-s * c.length)
        wedge = []
        for I in _subsets(len(c.phases_grade1), q):
            for J in _subsets(len(c.phases_grade2), p):
                wedge.append(math.prod((c.phases_grade1[i] for i in I), start=1 + 0j)
                             * math.prod((c.phases_grade2[j] for j in J), start=1 + 0j))
        v = [z * math.exp(-spec.alpha_norm * c.length) for z in c.phases_grade1] + \
            [z * math.exp(-2 * spec.alpha_norm * c.length) for z in c.phases_grade2]
        sym = []
        for N in product(range(n_cap + 1), repeat=len(v)):
            if sum(N) <= n_cap:
                sym.append(math.prod((vk**nk for vk, nk in zip(v, N)), start=1 + 0j))
        for u in c.omega_eigs:
            for t in wedge:
                for x in sym:
                    total += c.weight * cmath.log(1 - e_sl * u * t * x)
    return total


def _subsets(n, k):
    return combinations(range(n), k)
