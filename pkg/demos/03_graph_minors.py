"""Simple vertex-labeled minors of a graph match the minors of its lattice of flats.

The graph is a triangle 1-2-3 with a pendant edge 3-4. Its lattice of flats
consists of the 10 partitions whose blocks are connected. Both sides are
enumerated independently and matched one to one.
"""

from polylat.genlattice import gl_contract
from polylat.graphs import complete_graph, triangle_with_pendant, graph_flats, verify_graph_minor_bijection

g = triangle_with_pendant()
L = graph_flats(g)
print("L(G) =", ", ".join(L.lattice.labels))

c = gl_contract(L, [L.lattice.index("12/3/4")])
print("L(G) / (12/3/4) =", ", ".join(c.lattice.labels))

for name, graph in (("K3", complete_graph(3)), ("triangle with pendant edge", g)):
    rep = verify_graph_minor_bijection(graph)
    print(f"{name}: {rep.lhs} graph minors, {rep.rhs} lattice minors, {rep.status}")
