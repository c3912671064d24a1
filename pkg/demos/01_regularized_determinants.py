#!/usr/bin/env python3
# Regularized determinants of n + kappa and of n^2, next to their closed forms.

import math

from zetalab.regprod import (
    FiniteSequence,
    PolynomialSequence,
    ShiftedLinear,
    heat_expansion,
    regularized_det,
    spectral_zeta,
)

# %% small-time expansion of sum exp(-t (n + 1/2)): Bernoulli coefficients
exp = heat_expansion(ShiftedLinear(0.5), n_terms=6)
for c, a in exp.terms:
    print(f"t^{str(a):>3s}  {c:+.6f}")

# %% det(n + kappa) against sqrt(2 pi) / Gamma(kappa)
print("\nkappa   det            sqrt(2pi)/Gamma   diff")
for kappa in (0.5, 1.0, 1.5, 2.0, 3.0):
    d = regularized_det(ShiftedLinear(kappa))
    ref = math.sqrt(2 * math.pi) / math.gamma(kappa)
    print(f"{kappa:4.1f}  {d.value:.12f}  {ref:.12f}  {d.value - ref:+.1e}")

# %% shifting lambda is the same as shifting kappa
a = regularized_det(ShiftedLinear(1.0), 0.5).value
b = regularized_det(ShiftedLinear(1.5)).value
print(f"\ndet(n + 1 + 0.5) = {a:.12f}, det(n + 1.5) = {b:.12f}, 2 sqrt 2 = {2 * math.sqrt(2):.12f}")

# %% a quadratic sequence: prod n^2 -> 2 pi, and zeta(2) of n^2 is zeta_R(4)
sq = PolynomialSequence((0, 0, 1), n0=1)
print(f"det(n^2) = {regularized_det(sq).value:.12f}   2 pi = {2 * math.pi:.12f}")
print(f"zeta(2)  = {spectral_zeta(sq, 2).real:.12f}   pi^4/90 = {math.pi**4 / 90:.12f}")

# %% finite lists: an honest polynomial in lambda, zero at each -a_j
seq = FiniteSequence((1.0, 2.0, 2.0, 5.0))
for lam in (0.0, -1.0, -2.0, -1.5):
    d = regularized_det(seq, lam)
    print(f"lambda={lam:5.1f}  det={d.value:+.4f}  {d.flag or ''}")
