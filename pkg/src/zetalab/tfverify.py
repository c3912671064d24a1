"""Both sides of the trace formula on a finite group, where every integral is a sum.

Haar measure is counting measure.  Each side is a linear functional of the test
function ``f``, so it is assembled once as a weight vector over ``G`` and then
applied to as many test functions as needed.  With integer traces and rational
``f`` both sides come out exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .groups import FiniteGroupModel, SubgroupEmbedding, UnitaryRepOmega

__all__ = [
    "kernel_weights",
    "geometric_weights",
    "kernel_trace",
    "geometric_side",
    "verify_trace_formula",
    "batch_residuals",
    "random_test_functions",
    "conjugate_test_function",
]


def _check(G: FiniteGroupModel, sub: SubgroupEmbedding, omega: UnitaryRepOmega, f=None):
    if sub.group is not G:
        raise ValueError("subgroup is embedded in a different group model")
    if omega.sub is not sub:
        raise ValueError("representation is defined on a different subgroup")
    if f is not None and len(f) != G.order:
        raise ValueError(f"test function needs {G.order} values, got {len(f)}")


def kernel_weights(G: FiniteGroupModel, sub: SubgroupEmbedding, omega: UnitaryRepOmega) -> list:
    """``w[g] = sum of tr omega(gamma)`` over pairs ``(x, gamma)`` with ``x^-1 gamma x = g``."""
    _check(G, sub, omega)
    w = [0] * G.order
    for x in sub.coset_reps:
        for gamma in sub.elements:
            w[G.conj(x, gamma)] += omega.trace(gamma)
    return w


def geometric_weights(G: FiniteGroupModel, sub: SubgroupEmbedding, omega: UnitaryRepOmega) -> list:
    """Orbital-integral weights: one term per class of the subgroup, scaled by ``|G_g| / |Gamma_g|``."""
    _check(G, sub, omega)
    w = [0] * G.order
    for cls in sub.conjugacy_classes():
        gamma = cls[0]
        G_cent = G.centralizer(gamma)
        vol = Fraction(len(G_cent), len(G.centralizer(gamma, within=sub.elements)))
        coeff = omega.trace(gamma) * _exact(vol)
        for x in G.right_coset_reps(G_cent):
            w[G.conj(x, gamma)] += coeff
    return w


def _exact(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def _apply(weights: list, f: Sequence):
    return sum((w * v for w, v in zip(weights, f) if w), 0)


def kernel_trace(G, sub, omega, f):
    _check(G, sub, omega, f)
    return _apply(kernel_weights(G, sub, omega), f)


def geometric_side(G, sub, omega, f):
    _check(G, sub, omega, f)
    return _apply(geometric_weights(G, sub, omega), f)


def verify_trace_formula(G, sub, omega, f):
    """``|kernel_trace - geometric_side|``; an exact rational when the inputs are exact."""
    diff = kernel_trace(G, sub, omega, f) - geometric_side(G, sub, omega, f)
    if isinstance(diff, (int, Fraction)):
        return abs(diff)
    return float(abs(diff))


def batch_residuals(G, sub, omega, F: np.ndarray) -> np.ndarray:
    """Residuals for each row of ``F`` (shape ``(trials, |G|)``), in floating point."""
    F = np.atleast_2d(np.asarray(F, dtype=complex))
    _check(G, sub, omega, F[0])
    kw = np.array([complex(w) for w in kernel_weights(G, sub, omega)])
    gw = np.array([complex(w) for w in geometric_weights(G, sub, omega)])
    return np.abs(F @ kw - F @ gw)


def random_test_functions(order: int, trials: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((trials, order)) + 1j * rng.standard_normal((trials, order))


def conjugate_test_function(G: FiniteGroupModel, f: Sequence, y: int) -> list:
    """``f^y(x) = f(y x y^-1)``."""
    yinv = int(G.inverse[y])
    return [f[G.conj(yinv, x)] for x in range(G.order)]
