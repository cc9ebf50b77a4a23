"""k-dimensional Weisfeiler-Leman refinement with graph-independent color names.

Colors are hash-consed recursive values (``ColorNode``): a round-0 color wraps an
atomic type, a round-(r+1) color pairs the round-r color with the sorted
multiset signature of the refinement step. Structurally equal nodes built from
different graphs are the same Python object, so equality is identity, and the
recursive ordering below is a total order shared by all graphs.
"""

from __future__ import annotations

import hashlib
import itertools
import threading
from collections import Counter
from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence, Union

from .graph import AtomicType, Graph, atomic_type

_BASE, _REFINED = 0, 1

_intern: dict = {}
_intern_lock = threading.Lock()
_lt_cache: dict = {}


@total_ordering
class ColorNode:
    """Interned WL color. Do not construct directly; use ``base`` / ``refined``."""

    __slots__ = ("key", "digest", "depth")

    def __init__(self, key, digest: str, depth: int):
        self.key = key
        self.digest = digest
        self.depth = depth

    @property
    def is_base(self) -> bool:
        return self.key[0] == _BASE

    @property
    def atp(self) -> AtomicType:
        """Atomic type recorded at the bottom of the recursion."""
        node = self
        while node.key[0] == _REFINED:
            node = node.key[1]
        return node.key[1]

    @property
    def prev(self) -> "ColorNode | None":
        return self.key[1] if self.key[0] == _REFINED else None

    @property
    def signature(self) -> tuple:
        return self.key[2] if self.key[0] == _REFINED else ()

    def __lt__(self, other):
        if not isinstance(other, ColorNode):
            return NotImplemented
        if self is other:
            return False
        ck = (id(self), id(other))
        res = _lt_cache.get(ck)
        if res is None:
            res = self.key < other.key
            _lt_cache[ck] = res
        return res

    def __repr__(self):
        return f"ColorNode(r{self.depth}:{self.digest[:12]})"


def _intern_node(key, digest_src: str, depth: int) -> ColorNode:
    node = _intern.get(key)
    if node is not None:
        return node
    with _intern_lock:
        node = _intern.get(key)
        if node is None:
            digest = hashlib.sha256(digest_src.encode()).hexdigest()
            node = ColorNode(key, digest, depth)
            _intern[key] = node
    return node


def base(atp: AtomicType) -> ColorNode:
    return _intern_node((_BASE, atp), "B" + atp.encode(), 0)


def refined(prev: ColorNode, signature: Sequence[tuple[AtomicType, tuple]]) -> ColorNode:
    sig = tuple(sorted(signature))
    src = "R" + prev.digest + "[" + ";".join(
        a.encode() + ":" + ",".join(c.digest for c in cols) for a, cols in sig
    ) + "]"
    return _intern_node((_REFINED, prev, sig), src, prev.depth + 1)


def deep_equal(a: ColorNode, b: ColorNode, _memo=None) -> bool:
    """Structural equality by full unfolding, never trusting object identity."""
    memo = {} if _memo is None else _memo
    ck = (id(a), id(b))
    if ck in memo:
        return memo[ck]
    if a.key[0] != b.key[0]:
        res = False
    elif a.key[0] == _BASE:
        res = a.key[1] == b.key[1]
    else:
        sa, sb = a.key[2], b.key[2]
        res = (
            deep_equal(a.key[1], b.key[1], memo)
            and len(sa) == len(sb)
            and all(
                x[0] == y[0] and len(x[1]) == len(y[1])
                and all(deep_equal(c, d, memo) for c, d in zip(x[1], y[1]))
                for x, y in zip(sa, sb)
            )
        )
    memo[ck] = res
    return res


# A color of a tuple for simplicial walks: a WL color for tuples of length <= k,
# the atomic type itself for (k+1)-tuples.
ChiColor = Union[ColorNode, AtomicType]


def color_key(c: ChiColor):
    """Sort key realising the cross-graph total order on ChiColors."""
    if isinstance(c, AtomicType):
        return (0, c)
    if isinstance(c, ColorNode):
        return (1, c)
    raise TypeError(f"not a color: {c!r}")


def color_order(c1: ChiColor, c2: ChiColor) -> int:
    """-1, 0 or 1 as ``c1`` sorts before, equal to, or after ``c2``."""
    k1, k2 = color_key(c1), color_key(c2)
    if k1 == k2:
        return 0
    return -1 if k1 < k2 else 1


def color_digest(c: ChiColor) -> str:
    if isinstance(c, ColorNode):
        return c.digest
    return hashlib.sha256(("A" + c.encode()).encode()).hexdigest()


# ---------------------------------------------------------------- refinement


@dataclass
class ColorTable:
    """``rounds[r]`` maps every k-tuple (repeats allowed) to its round-r color."""

    k: int
    n: int
    rounds: list

    @property
    def depth(self) -> int:
        return len(self.rounds) - 1

    def color(self, t: tuple, r: int) -> ColorNode:
        return self.rounds[r][tuple(t)]

    def histogram(self, r: int) -> Counter:
        return Counter(self.rounds[r].values())


def initial_round(g: Graph, k: int) -> dict:
    return {t: base(atomic_type(g, t)) for t in itertools.product(range(g.n), repeat=k)}


def wl_round(g: Graph, k: int, current: dict) -> dict:
    """One refinement step: pair each k-tuple's color with the multiset of
    (atomic type of the extended tuple, colors of the k substituted tuples)."""
    n = g.n
    out = {}
    atp_cache = {}
    for t in current:
        sig = []
        for v in range(n):
            ext = t + (v,)
            a = atp_cache.get(ext)
            if a is None:
                a = atomic_type(g, ext)
                atp_cache[ext] = a
            cols = tuple(current[t[:p] + (v,) + t[p + 1:]] for p in range(k))
            sig.append((a, cols))
        out[t] = refined(current[t], sig)
    return out


def wl_colors(g: Graph, k: int, rounds: int) -> ColorTable:
    if k < 1:
        raise ValueError("k must be at least 1")
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    table = [initial_round(g, k)]
    for _ in range(rounds):
        table.append(wl_round(g, k, table[-1]))
    return ColorTable(k, g.n, table)


def rounds_needed(k: int, h: int) -> int:
    """Deepest round read by ``chi_kh``: a 1-tuple reads round ``k + h - 1``."""
    return k + h - 1


def chi_kh(g: Graph, t: Sequence[int], k: int, h: int, table: ColorTable) -> ChiColor:
    """Color of a tuple of length 1..k+1 used along simplicial walks.

    A tuple of length l <= k is padded by repeating its last entry and colored
    by WL round ``k + h - l``; a (k+1)-tuple is colored by its atomic type.
    """
    t = tuple(t)
    ell = len(t)
    if not 1 <= ell <= k + 1:
        raise ValueError(f"tuple length {ell} outside 1..{k + 1}")
    if table.k != k:
        raise ValueError(f"table was built for k = {table.k}, not {k}")
    if ell == k + 1:
        return atomic_type(g, t)
    r = k + h - ell
    if r > table.depth:
        raise ValueError(f"color table has {table.depth} rounds, round {r} needed")
    return table.color(t + (t[-1],) * (k - ell), r)


def chi_table(g: Graph, k: int, h: int, table: ColorTable | None = None, max_len: int | None = None) -> dict:
    """``chi_kh`` of every tuple of length 1..max_len (default k+1), repeats allowed."""
    if table is None:
        table = wl_colors(g, k, rounds_needed(k, h))
    max_len = k + 1 if max_len is None else max_len
    out = {}
    for ell in range(1, max_len + 1):
        for t in itertools.product(range(g.n), repeat=ell):
            out[t] = chi_kh(g, t, k, h, table)
    return out
