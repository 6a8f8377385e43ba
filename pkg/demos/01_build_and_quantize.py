"""Build the two reference graphs and inspect their quantization.

Every graph here is 4-regular in the directed sense: two bonds in, two
bonds out at every vertex.  The bond scattering matrix S glues a 2x2 DFT
block onto each vertex, so S is unitary by construction and every entry
has magnitude 1/sqrt(2) on an allowed transition.
"""

import numpy as np

import qgspectra as q

# the binary family: vertex i feeds 2i and 2i+1 (mod V), V = p * 2^r
debruijn8 = q.build_binary_graph(1, 3)   # p=1 is the de Bruijn graph, V=8
binary6 = q.build_binary_graph(3, 1)     # V=6, the small comparison graph

for graph in (debruijn8, binary6):
    report = q.validate_graph(graph)
    print(f"V={graph.vertex_count}, B={graph.num_bonds}, ok={report.passed}")
    for b in range(4):
        print(f"  bond {b}: {graph.origin(b)} -> {graph.terminus(b)}")

# quantize: one DFT block per vertex
S = q.build_bond_scattering(debruijn8)
print("\nvertex block:")
print(q.dft_vertex_matrix())
print(f"unitarity defect: {S.unitarity_defect():.2e}")

# allowed transitions carry +-1/sqrt(2); everything else is zero
mags = np.unique(np.round(np.abs(S.matrix), 12))
print(f"entry magnitudes: {mags}")
print(f"nonzero entries: {np.count_nonzero(S.matrix)} (= 2B)")

# an arbitrary connected 4-regular multigraph can be oriented into the
# same form: Euler-circuit orientation splits each vertex 2-in / 2-out
edges = [(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]
oriented = q.orient_four_regular(edges)
print(f"\noriented multigraph: ok={q.validate_graph(oriented).passed}")
