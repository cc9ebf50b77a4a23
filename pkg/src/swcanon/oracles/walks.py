"""Brute-force simplicial walk counts.

A k-simplicial walk is a walk in the Hasse graph of the simplices of size at
most k+1 that starts at a single vertex. Every simplex along the walk is kept
as a tuple ordered by when its vertices came in: an incoming vertex is
appended, an outgoing vertex loses its slot and the rest keep their order.
"""

from __future__ import annotations

import hashlib
import itertools
from collections import Counter
from dataclasses import dataclass

from ..graph import Graph
from ..wl import ChiColor, chi_kh, color_digest, rounds_needed, wl_colors

DEFAULT_CAP = 2_000_000


class CapExceeded(RuntimeError):
    """An enumeration would exceed its resource cap. Results are never truncated."""

    def __init__(self, what: str, cap: int):
        self.cap = cap
        super().__init__(f"{what} exceeds the cap of {cap}")


@dataclass(frozen=True)
class SimplicialWalk:
    """Simplices as frozensets plus their incoming-order tuples."""

    simplices: tuple
    tuples: tuple

    def __post_init__(self):
        if len(self.simplices) != len(self.tuples):
            raise ValueError("simplices and tuples differ in length")

    def __len__(self):
        return len(self.simplices)

    @property
    def width(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    @classmethod
    def from_simplices(cls, simplices) -> "SimplicialWalk":
        """Derive the ordered tuples; raises ``ValueError`` if this is not a walk."""
        simplices = tuple(frozenset(s) for s in simplices)
        if not simplices:
            raise ValueError("a walk has at least one simplex")
        if len(simplices[0]) != 1:
            raise ValueError("a simplicial walk starts at a single vertex")
        tuples = [tuple(simplices[0])]
        for i in range(1, len(simplices)):
            prev, cur = simplices[i - 1], simplices[i]
            if len(cur) == len(prev) + 1 and prev < cur:
                (x,) = cur - prev
                tuples.append(tuples[-1] + (x,))
            elif len(cur) == len(prev) - 1 and cur < prev:
                (x,) = prev - cur
                tuples.append(tuple(v for v in tuples[-1] if v != x))
            else:
                raise ValueError(f"simplices {i} and {i + 1} do not differ by exactly one vertex")
        return cls(simplices, tuple(tuples))


def _steps(u: tuple, n: int, k: int):
    """Successor tuples of ``u``: insertions first, then removals by slot."""
    if len(u) <= k:
        present = set(u)
        for x in range(n):
            if x not in present:
                yield u + (x,)
    if len(u) >= 2:
        for i in range(len(u)):
            yield u[:i] + u[i + 1:]


def iter_walks(g: Graph, k: int, t: int):
    """All k-simplicial walks with ``t`` simplices, as tuple sequences."""
    if t < 1:
        return

    def rec(seq):
        if len(seq) == t:
            yield tuple(seq)
            return
        for nxt in _steps(seq[-1], g.n, k):
            seq.append(nxt)
            yield from rec(seq)
            seq.pop()

    for v in range(g.n):
        yield from rec([(v,)])


# ---------------------------------------------------------------- colors

class _ColorIds:
    """Interns ChiColors as small ints so that words are cheap to hash."""

    def __init__(self):
        self.ids: dict = {}
        self.colors: list = []

    def __call__(self, c: ChiColor) -> int:
        i = self.ids.get(c)
        if i is None:
            i = len(self.colors)
            self.ids[c] = i
            self.colors.append(c)
        return i


_IDS = _ColorIds()


def decode_word(word: tuple) -> tuple:
    """Internal int word to its tuple of ChiColors."""
    return tuple(_IDS.colors[i] for i in word)


def word_digest(word: tuple) -> str:
    """Graph-independent name of an internal word."""
    src = ".".join(color_digest(c) for c in decode_word(word))
    return hashlib.sha256(src.encode()).hexdigest()


def _chi_lookup(g: Graph, k: int, h: int, with_repeats: bool) -> dict:
    table = wl_colors(g, k, rounds_needed(k, h))
    out = {}
    for ell in range(1, k + 2):
        if with_repeats:
            tuples = itertools.product(range(g.n), repeat=ell)
        else:
            tuples = itertools.permutations(range(g.n), ell)
        for u in tuples:
            out[u] = _IDS(chi_kh(g, u, k, h, table))
    return out


# ---------------------------------------------------------------- census

@dataclass(frozen=True)
class WalkCensus:
    """``by_length[t]`` counts the h-colors of walks with ``t`` simplices (t >= 1)."""

    k: int
    h: int
    by_length: dict

    def __getitem__(self, t: int) -> Counter:
        return self.by_length[t]

    def total(self, t: int) -> int:
        return sum(self.by_length[t].values())

    def digest_lines(self, t: int) -> list[str]:
        rows = sorted((word_digest(w), c) for w, c in self.by_length[t].items())
        return [f"{d} {c}" for d, c in rows]


def walk_census(g: Graph, k: int, h: int, t_max: int, cap: int = DEFAULT_CAP) -> WalkCensus:
    """Colored walk counts for every length 1..t_max by a layered count over
    (current tuple, color word so far)."""
    if k < 1 or h < 1:
        raise ValueError("k and h must be at least 1")
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    chi = _chi_lookup(g, k, h, with_repeats=False)
    layer: dict = {}
    for v in range(g.n):
        key = ((v,), (chi[(v,)],))
        layer[key] = layer.get(key, 0) + 1
    out = {}
    for t in range(1, t_max + 1):
        cen: Counter = Counter()
        for (_, w), c in layer.items():
            cen[w] += c
        out[t] = cen
        if t == t_max:
            break
        nxt: dict = {}
        for (u, w), c in layer.items():
            for v in _steps(u, g.n, k):
                key = (v, w + (chi[v],))
                nxt[key] = nxt.get(key, 0) + c
            if len(nxt) > cap:
                raise CapExceeded(f"census layer {t + 1}", cap)
        layer = nxt
    return WalkCensus(k, h, out)


def hasse_walk_counts(g: Graph, k: int, t_max: int) -> list[int]:
    """Number of k-simplicial walks with t simplices, t = 1..t_max, from powers
    of the adjacency matrix of the explicit Hasse graph."""
    simplices = [frozenset(s) for d in range(1, k + 2) for s in itertools.combinations(range(g.n), d)]
    index = {s: i for i, s in enumerate(simplices)}
    adj = [[] for _ in simplices]
    for s, i in index.items():
        if len(s) > 1:
            for x in s:
                j = index[s - {x}]
                adj[i].append(j)
                adj[j].append(i)
    vec = [1 if len(s) == 1 else 0 for s in simplices]
    out = []
    for _ in range(t_max):
        out.append(sum(vec))
        new = [0] * len(vec)
        for i, c in enumerate(vec):
            if c:
                for j in adj[i]:
                    new[j] += c
        vec = new
    return out


# ---------------------------------------------------------------- SW refinement

@dataclass(frozen=True)
class SWMultiset:
    """Words of the refinement after ``t`` steps, summed over tuples of length <= k."""

    k: int
    h: int
    t: int
    words: Counter

    def digest_lines(self) -> list[str]:
        rows = sorted((word_digest(w), c) for w, c in self.words.items())
        return [f"{d} {c}" for d, c in rows]


def sw_refinement(g: Graph, k: int, h: int, t_max: int, cap: int = DEFAULT_CAP) -> list[SWMultiset]:
    """The refinement multisets for t = 0..t_max, computed over every tuple of
    length 1..k+1 with repeated entries allowed."""
    if k < 1 or h < 1:
        raise ValueError("k and h must be at least 1")
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    chi = _chi_lookup(g, k, h, with_repeats=True)
    tuples = list(chi)
    state = {u: (Counter({(chi[u],): 1}) if len(u) == 1 else Counter()) for u in tuples}

    def aggregate(t):
        total: Counter = Counter()
        for u, m in state.items():
            if len(u) <= k:
                total.update(m)
        return SWMultiset(k, h, t, total)

    out = [aggregate(0)]
    for t in range(1, t_max + 1):
        new = {}
        size = 0
        for u in tuples:
            ell = len(u)
            c = chi[u]
            acc: Counter = Counter()
            if ell > 1:
                for w, m in state[u[:-1]].items():
                    acc[w + (c,)] += m
            if ell <= k:
                for p in range(ell + 1):
                    for x in range(g.n):
                        for w, m in state[u[:p] + (x,) + u[p:]].items():
                            acc[w + (c,)] += m
            new[u] = acc
            size += len(acc)
            if size > cap:
                raise CapExceeded(f"refinement step {t}", cap)
        state = new
        out.append(aggregate(t))
    return out
