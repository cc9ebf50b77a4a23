"""Homomorphism counts by backtracking."""

from __future__ import annotations

from ..graph import Graph
from .walks import CapExceeded

DEFAULT_HOM_CAP = 10_000_000


def _order(f: Graph) -> list[int]:
    """Vertices of ``f`` so that each one after the first of its component
    has an earlier neighbor where possible (BFS from the highest degree)."""
    seen, order = set(), []
    for root in sorted(f.vertices, key=lambda v: (-f.degree(v), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(f.neighbors(v)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def hom_count(f: Graph, g: Graph, cap: int = DEFAULT_HOM_CAP) -> int:
    """Number of maps ``V(f) -> V(g)`` sending edges to edges.

    ``cap`` bounds the number of search nodes visited.
    """
    order = _order(f)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[w] for w in f.neighbors(v) if pos[w] < i] for i, v in enumerate(order)]
    image = [0] * f.n
    visited = 0

    def rec(i: int) -> int:
        nonlocal visited
        if i == f.n:
            return 1
        if back[i]:
            cands = g.neighbors(image[back[i][0]])
            rest = back[i][1:]
        else:
            cands = g.vertices
            rest = ()
        total = 0
        for x in cands:
            visited += 1
            if visited > cap:
                raise CapExceeded("homomorphism search", cap)
            if all(g.adjacent(image[j], x) for j in rest):
                image[i] = x
                total += rec(i + 1)
        return total

    return rec(0)
