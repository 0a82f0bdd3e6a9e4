"""
Trapped states of a small graph
===============================

Build the basis of -1 common eigenstates for a 4-cycle with a pendant sink
and compare it against the brute-force null space.
"""

from grovertrap import StructureGraph, WalkInstance, sr_trapped_basis
from grovertrap.trapped import instance_oracle, reduce_by_sink, same_subspace

# a square 0-1-2-3 with the sink hanging off vertex 2
g = StructureGraph(5, ((0, 1), (1, 2), (2, 3), (0, 3), (2, 4)))
inst = WalkInstance(g, frozenset({4}), (0, 2))

for comp in reduce_by_sink(inst).components:
    print("component vertices", comp.vertex_map, "edges", comp.graph.edges)

basis = sr_trapped_basis(inst)
for s in basis:
    print(s.kind, {e: str(a) for e, a in sorted(s.amplitudes.items())})

# the constructed states span exactly the null space of the eigen-conditions
print("matches oracle:", same_subspace(basis, instance_oracle(inst), inst.dim))
