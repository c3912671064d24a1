#!/usr/bin/env python3
# The trace formula on S4: kernel trace against orbital integrals.

from fractions import Fraction

import numpy as np

from zetalab import groups as grp
from zetalab.tfverify import geometric_side, kernel_trace, verify_trace_formula

G = grp.symmetric_group(4)
H = grp.parse_subgroup(G, "perm:(1 2 3 4)")
print(f"|G| = {G.order}, |Gamma| = {H.order}, {H.index} cosets")
print("classes of Gamma:", [[G.labels[g] for g in cls] for cls in H.conjugacy_classes()])

# %% exact arithmetic: rational test function, integer-valued characters
rng = np.random.default_rng(0)
f = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-5, 6, 24), rng.integers(1, 7, 24))]
for omega in (grp.trivial_rep(H), grp.sign_rep(H), grp.induced_two_dim_rep(H), grp.regular_rep(H)):
    k = kernel_trace(G, H, omega, f)
    print(f"{omega.name:9s} dim {omega.dim}: kernel {k}, geometric {geometric_side(G, H, omega, f)}, "
          f"residual {verify_trace_formula(G, H, omega, f)}")

# %% every subgroup of S4, complex test functions
worst = 0.0
for sub in grp.all_subgroups(G):
    for omega in filter(None, (grp.trivial_rep(sub), grp.sign_rep(sub), grp.induced_two_dim_rep(sub))):
        f = rng.standard_normal(24) + 1j * rng.standard_normal(24)
        worst = max(worst, verify_trace_formula(G, sub, omega, f))
print(f"\n{len(grp.all_subgroups(G))} subgroups, worst residual {worst:.1e}")
