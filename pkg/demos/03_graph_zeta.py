#!/usr/bin/env python3
# Zeta functions of small graphs: cycles, two determinant formulas, and zeros.

from zetalab import graphzeta as gz

g = gz.petersen_graph()
print(f"Petersen: {g.n_vertices} vertices, {g.n_edges} edges")

# %% primitive cycle census (both orientations counted)
cycles = gz.enumerate_primitive_cycles(g, 10)
census = {}
for c in cycles:
    census[c.length] = census.get(c.length, 0) + 1
print("cycles by length:", census)

# %% det(I - T B) two ways, exact integers
Z = gz.zeta_polynomial(g)
print("det(I - TB) == Bass formula:", Z == gz.bass_polynomial(g))
print("coefficients:", Z.to_list())

# %% Euler product truncated at T^16 agrees coefficientwise
print("rationality:", gz.rationality_report(g, 16))
print("log derivative:", gz.log_derivative_check(g, 13))
for m in (5, 6, 9, 10):
    print(f"sum_{{d|{m}}} d P_d, tr B^{m} =", gz.cycle_count_identity(g, m))

# %% zeros with multiplicities
print("\n|root|    root                  mult")
for r in gz.divisor(g):
    print(f"{abs(r.value):.6f}  {r.value.real:+.6f}{r.value.imag:+.6f}j  {r.multiplicity}")
