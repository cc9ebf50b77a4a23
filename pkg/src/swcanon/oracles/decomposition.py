"""Decomposing simplicial walks and nice path decompositions.

A walk is decomposing for F when every vertex of F comes in exactly once
(D1) and every edge of F lies inside some simplex of the walk (D2). The
simplex sequence of such a walk is a nice path decomposition and vice versa,
so searching for one decides pathwidth <= k.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from ..graph import Graph
from .walks import CapExceeded, SimplicialWalk

DEFAULT_SEARCH_CAP = 1_000_000


class DecompositionError(ValueError):
    """``condition`` is one of T1, T2, N1, N2, D1, D2, W (not a walk)."""

    def __init__(self, condition: str, detail: str):
        self.condition = condition
        super().__init__(f"{condition}: {detail}")


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple

    @classmethod
    def of(cls, bags) -> "PathDecomposition":
        return cls(tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self):
        return len(self.bags)


def validate_path_decomposition(f: Graph, pd: PathDecomposition, nice: bool = True) -> None:
    bags = pd.bags
    for b in bags:
        for v in b:
            f.check_vertex(v)
    for u, v in f.edge_list():
        if not any(u in b and v in b for b in bags):
            raise DecompositionError("T1", f"edge {u}-{v} lies in no bag")
    for v in f.vertices:
        idx = [i for i, b in enumerate(bags) if v in b]
        if not idx:
            raise DecompositionError("T2", f"vertex {v} lies in no bag")
        if idx[-1] - idx[0] + 1 != len(idx):
            raise DecompositionError("T2", f"bags holding vertex {v} are not contiguous")
    if not nice:
        return
    for i in range(1, len(bags)):
        if len(bags[i] ^ bags[i - 1]) != 1:
            raise DecompositionError("N1", f"bags {i} and {i + 1} do not differ by exactly one vertex")
    if not bags or (len(bags[0]) != 1 and len(bags[-1]) != 1):
        raise DecompositionError("N2", "neither end bag has exactly one vertex")


def validate_decomposing_walk(f: Graph, walk: SimplicialWalk, k: int | None = None) -> None:
    try:
        SimplicialWalk.from_simplices(walk.simplices)
    except ValueError as exc:
        raise DecompositionError("W", str(exc)) from None
    if k is not None and walk.width > k:
        raise DecompositionError("W", f"simplex with {walk.width + 1} vertices in a {k}-simplicial walk")
    incoming = [next(iter(walk.simplices[0]))]
    for prev, cur in zip(walk.simplices, walk.simplices[1:]):
        incoming += list(cur - prev)
    for v in incoming:
        f.check_vertex(v)
    for v in f.vertices:
        c = incoming.count(v)
        if c != 1:
            raise DecompositionError("D1", f"vertex {v} is incoming {c} times")
    for u, v in f.edge_list():
        if not any(u in s and v in s for s in walk.simplices):
            raise DecompositionError("D2", f"edge {u}-{v} lies in no simplex")


def walk_to_path_decomposition(f: Graph, walk: SimplicialWalk) -> PathDecomposition:
    validate_decomposing_walk(f, walk)
    pd = PathDecomposition(walk.simplices)
    validate_path_decomposition(f, pd)
    return pd


def path_decomposition_to_walk(f: Graph, pd: PathDecomposition) -> SimplicialWalk:
    """Read a nice decomposition as a walk, reversed if only its last bag is a single vertex."""
    validate_path_decomposition(f, pd)
    bags = pd.bags if len(pd.bags[0]) == 1 else pd.bags[::-1]
    walk = SimplicialWalk.from_simplices(bags)
    validate_decomposing_walk(f, walk)
    return walk


def decomposing_walk_search(f: Graph, k: int, cap: int = DEFAULT_SEARCH_CAP) -> SimplicialWalk | None:
    """Shortest decomposing k-simplicial walk of ``f``, or None if there is none.

    Breadth-first over (current simplex, vertices already brought in). A vertex
    may leave only once all its neighbors have come in: it never returns, so
    an edge to a later vertex would stay uncovered. That rule is also
    sufficient, so reaching a state where every vertex has come in finishes.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if f.n == 0:
        raise ValueError("the graph has no vertices, so no walk can start")
    full = frozenset(f.vertices)
    nbrs = [f.neighbors(v) for v in f.vertices]
    parent: dict = {}
    queue: deque = deque()
    for v in f.vertices:
        s = (frozenset([v]), frozenset([v]))
        parent[s] = None
        queue.append(s)
    while queue:
        state = queue.popleft()
        bag, seen = state
        if seen == full:
            chain = []
            while state is not None:
                chain.append(state[0])
                state = parent[state]
            return SimplicialWalk.from_simplices(chain[::-1])
        moves = []
        if len(bag) <= k:
            moves += [(bag | {x}, seen | {x}) for x in sorted(full - seen)]
        if len(bag) >= 2:
            moves += [(bag - {u}, seen) for u in sorted(bag) if nbrs[u] <= seen]
        for nxt in moves:
            if nxt not in parent:
                parent[nxt] = state
                if len(parent) > cap:
                    raise CapExceeded("decomposing walk search", cap)
                queue.append(nxt)
    return None


def pathwidth_by_vertex_separation(f: Graph) -> int:
    """Pathwidth as the vertex separation number, minimized over all orderings."""
    if f.n == 0:
        return -1
    best = f.n
    for order in itertools.permutations(range(f.n)):
        placed, worst = set(), 0
        for v in order:
            placed.add(v)
            worst = max(worst, sum(1 for u in placed if f.neighbors(u) - placed))
            if worst >= best:
                break
        best = min(best, worst)
    return best
