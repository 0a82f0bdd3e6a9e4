"""Spanning trees and fundamental cycles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import StructureGraph


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: dict[int, tuple[int, int]]  # child -> (parent vertex, edge index)
    depth: dict[int, int]
    tree_edges: frozenset[int]

    def path(self, a: int, b: int) -> tuple[list[int], list[int]]:
        """Vertices and edge indices of the unique tree path from ``a`` to ``b``."""
        up_a, up_b = [a], [b]
        ea: list[int] = []
        eb: list[int] = []
        x, y = a, b
        while self.depth[x] > self.depth[y]:
            p, e = self.parent[x]
            ea.append(e)
            up_a.append(p)
            x = p
        while self.depth[y] > self.depth[x]:
            p, e = self.parent[y]
            eb.append(e)
            up_b.append(p)
            y = p
        while x != y:
            px, ex = self.parent[x]
            py, ey = self.parent[y]
            ea.append(ex)
            eb.append(ey)
            up_a.append(px)
            up_b.append(py)
            x, y = px, py
        vertices = up_a + up_b[-2::-1]
        return vertices, ea + eb[::-1]

    def lca(self, a: int, b: int) -> int:
        vertices, _ = self.path(a, b)
        return min(vertices, key=lambda v: (self.depth[v], v))


def spanning_tree(g: StructureGraph, root: int = 0, order: str = "bfs") -> SpanningTree:
    """Deterministic spanning tree, neighbors visited in ascending id order.

    ``order="dfs"`` gives a depth-first tree instead; it is only used to
    obtain a second, genuinely different tree for comparisons.
    """
    adj = g.adjacency()
    parent: dict[int, tuple[int, int]] = {}
    depth = {root: 0}
    if order == "bfs":
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, e in adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = (u, e)
                    queue.append(w)
    elif order == "dfs":
        stack = [(root, iter(adj[root]))]
        while stack:
            u, it = stack[-1]
            for w, e in it:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = (u, e)
                    stack.append((w, iter(adj[w])))
                    break
            else:
                stack.pop()
    else:
        raise ValueError(f"unknown traversal order {order!r}")
    if len(depth) != g.n_vertices:
        raise DisconnectedGraphError(f"only {len(depth)} of {g.n_vertices} vertices reachable from {root}")
    return SpanningTree(root, parent, depth, frozenset(e for _, e in parent.values()))


@dataclass(frozen=True)
class FundamentalCycle:
    recovered_edge: int
    edges: tuple[int, ...]  # starts with the recovered edge
    vertices: tuple[int, ...]  # closed walk, vertices[0] == vertices[-1]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def parity(self) -> str:
        return "even" if self.length % 2 == 0 else "odd"

    @property
    def is_odd(self) -> bool:
        return self.length % 2 == 1


def fundamental_cycles(g: StructureGraph, tree: SpanningTree) -> list[FundamentalCycle]:
    """One cycle per non-tree edge, in edge-index order.

    The walk crosses the recovered edge ``(u, v)``, ``u < v``, from ``v``
    into ``u`` and returns to ``v`` along the tree.
    """
    cycles = []
    for i, (u, v) in enumerate(g.edges):
        if i in tree.tree_edges:
            continue
        path_vertices, path_edges = tree.path(u, v)
        cycles.append(FundamentalCycle(i, (i, *path_edges), (v, *path_vertices)))
    return cycles


def is_bipartite(g: StructureGraph, tree: SpanningTree | None = None) -> bool:
    if tree is None:
        tree = spanning_tree(g)
    return not any(c.is_odd for c in fundamental_cycles(g, tree))


def two_coloring(g: StructureGraph) -> dict[int, int] | None:
    """Proper 2-coloring by BFS parity, or ``None`` when an odd cycle exists."""
    adj = g.adjacency()
    color: dict[int, int] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w, _ in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color
