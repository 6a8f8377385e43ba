"""Characteristic polynomial coefficients of the evolution operator.

U(k) = S e^{ikL} is unitary for every real k, so the coefficients of
det(U - zeta I) obey the self-inversive symmetry a_n = a_B conj(a_{B-n}).
Averaging |a_n|^2 over k is the quantity the exact combinatorics below
(demos 03-05) reproduce without any sampling.
"""

import numpy as np

import qgspectra as q
from qgspectra.spectral import char_poly_coefficients, mc_variance, riemann_siegel_residual

graph = q.build_binary_graph(1, 3)
S = q.build_bond_scattering(graph)
lengths = q.sample_bond_lengths(graph, seed=5)
B = graph.num_bonds

# one k slice
k = 13.7
U = q.evolution_operator(S, lengths, k)
coeffs = char_poly_coefficients(U, k)
print(f"a_0 = {coeffs.values[0]:+.3f} (exactly (-1)^B)")
print(f"|a_B| = {abs(coeffs.values[B]):.12f}")
print(f"symmetry residual at k={k}: {riemann_siegel_residual(coeffs):.2e}")

# |a_n| wanders with k but its square averages to the exact variance
print("\nn   |a_n|^2 at three k values")
for n in (2, 5, 8):
    row = []
    for kk in (5.0, 50.0, 500.0):
        c = char_poly_coefficients(q.evolution_operator(S, lengths, kk))
        row.append(abs(c.values[n]) ** 2)
    print(f"{n}  " + "  ".join(f"{x:8.4f}" for x in row))

# a short k average already lands near the exact values 1/2, 3/4, 9/16
estimates = mc_variance(S, lengths, [2, 5, 8], samples=20_000, seed=1)
print("\nn   <|a_n|^2>            exact")
for est, exact in zip(estimates, ("1/2", "3/4", "9/16")):
    print(f"{est.n}  {est.mean:.4f} +- {est.std_error:.4f}   {exact}")
