"""
Attractor space on small graphs
===============================

Compute the attractor space of the sink-free walk numerically and compare
its size with the count built from common eigenstates plus the identity.
Even cycle graphs carry one extra -1 attractor.
"""

import numpy as np

from grovertrap import StructureGraph, WalkInstance
from grovertrap.attractors import alternating_edge_attractor, attractor_space_dimension
from grovertrap.simulator import configurations, walk_operator

graphs = {
    "triangle": StructureGraph(3, ((0, 1), (1, 2), (0, 2))),
    "square": StructureGraph(4, ((0, 1), (1, 2), (2, 3), (0, 3))),
    "star with loop": StructureGraph(4, ((0, 1), (0, 2), (0, 3)), {1: 1}),
    "K4": StructureGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
}

for name, g in graphs.items():
    rep = attractor_space_dimension(WalkInstance(g, frozenset(), (0,)))
    print(f"{name:15s} numerical {rep.dims}  from eigenstates {rep.expected}")

# the square's extra attractor: +-1 alternating along the edges, on the diagonal
square = WalkInstance(graphs["square"], frozenset(), (0,))
X = alternating_edge_attractor(square)
print(np.diag(X))
worst = max(
    np.abs(walk_operator(square.state_graph, K) @ X @ walk_operator(square.state_graph, K).T + X).max()
    for K, _ in configurations(4, 0.5)
)
print("U X U^T = -X for every configuration, residual", worst)
