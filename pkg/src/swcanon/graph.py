"""Simple undirected graphs, text formats, and atomic types of vertex tuples."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Malformed graph input. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``; ``edges`` holds pairs ``(u, v)`` with ``u < v``."""

    n: int
    edges: frozenset
    _adj: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [set() for _ in range(self.n)]
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {e} is not a normalized pair of vertices below {self.n}")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise ValueError(f"vertex {v!r} out of range for a graph on {self.n} vertices")

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines += [f"{u} {v}" for u, v in self.edge_list()]
        return "\n".join(lines) + "\n"

    def to_graph6(self) -> str:
        return encode_graph6(self)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.n
    return Graph.from_edges(offset, edges)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n, frozenset())


# ---------------------------------------------------------------- parsing


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty input", 1)
    head = lines[0].split()
    if len(head) != 2 or not all(tok.isdigit() for tok in head):
        raise ParseError(f"expected header 'n m', got {lines[0]!r}", 1)
    n, m = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges but {len(body)} edge lines follow", len(lines))
    edges = set()
    for lineno, line in enumerate(body, start=2):
        toks = line.split()
        if len(toks) != 2 or not all(t.isdigit() for t in toks):
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        u, v = int(toks[0]), int(toks[1])
        if u >= n or v >= n:
            raise ParseError(f"vertex out of range in {line!r} (n = {n})", lineno)
        if u == v:
            raise ParseError(f"self-loop {line!r}", lineno)
        edges.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(edges))


_G6_HEADER = ">>graph6<<"


def _g6_size(data: str) -> tuple[int, int]:
    """Decode the vertex count; return ``(n, number of bytes consumed)``."""
    if not data:
        raise ParseError("missing graph6 size byte")
    if data[0] != "~":
        return ord(data[0]) - 63, 1
    if len(data) >= 2 and data[1] == "~":
        width, start = 6, 2
    else:
        width, start = 3, 1
    chunk = data[start:start + width]
    if len(chunk) != width:
        raise ParseError("truncated graph6 size field")
    n = 0
    for ch in chunk:
        n = (n << 6) | (ord(ch) - 63)
    return n, start + width


def decode_graph6(line: str) -> Graph:
    data = line.strip()
    if data.startswith(_G6_HEADER):
        data = data[len(_G6_HEADER):]
    if not data:
        raise ParseError("empty graph6 string")
    for ch in data:
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 byte {ch!r}")
    n, used = _g6_size(data)
    nbits = n * (n - 1) // 2
    body = data[used:]
    if len(body) != (nbits + 5) // 6:
        raise ParseError(f"graph6 bit stream has {len(body)} bytes, expected {(nbits + 5) // 6} for n = {n}")
    bits = []
    for ch in body:
        x = ord(ch) - 63
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph(n, frozenset(edges))


def parse_graph6(text: str) -> Graph:
    """Parse a single graph6 line (a trailing newline is allowed)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty graph6 input", 1)
    if len(lines) > 1:
        raise ParseError("expected exactly one graph6 line; use iter_graph6 for several", 2)
    try:
        return decode_graph6(lines[0])
    except ParseError as exc:
        raise ParseError(str(exc), 1) from None


def iter_graph6(text: str) -> Iterator[Graph]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            yield decode_graph6(line)
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    elif n <= 258047:
        out = ["~"] + [chr(((n >> s) & 63) + 63) for s in (12, 6, 0)]
    else:
        out = ["~~"] + [chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if g.adjacent(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)


def sniff_format(text: str) -> str:
    """``edgelist`` when the first non-blank byte is a digit, else ``graph6``."""
    stripped = text.lstrip()
    if stripped[:1].isdigit():
        return "edgelist"
    return "graph6"


def parse_graph(text: str, fmt: str | None = None) -> Graph:
    fmt = fmt or sniff_format(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------- relabeling


def permute(g: Graph, pi: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``pi[v]``."""
    if sorted(pi) != list(range(g.n)):
        raise ValueError("permutation must be a bijection on 0..n-1")
    return Graph(g.n, frozenset((min(pi[u], pi[v]), max(pi[u], pi[v])) for u, v in g.edges))


# ---------------------------------------------------------------- atomic types


class Atp2Class(enum.IntEnum):
    EQUAL = 0
    ADJACENT = 1
    DISTINCT_NON_ADJACENT = 2

    @property
    def code(self) -> str:
        return "EAN"[self.value]


@dataclass(frozen=True, order=True)
class AtomicType:
    """Equality blocks and adjacent index pairs of a tuple, 1-based and sorted."""

    eq_pattern: tuple
    adj_pattern: tuple

    @property
    def length(self) -> int:
        return sum(len(b) for b in self.eq_pattern)

    def encode(self) -> str:
        eq = "|".join(",".join(map(str, b)) for b in self.eq_pattern)
        adj = "|".join(f"{i}-{j}" for i, j in self.adj_pattern)
        return f"atp[{eq};{adj}]"

    def __str__(self) -> str:
        return self.encode()


def atomic_type(g: Graph, t: Sequence[int]) -> AtomicType:
    for v in t:
        g.check_vertex(v)
    blocks: dict[int, list[int]] = {}
    for i, v in enumerate(t, start=1):
        blocks.setdefault(v, []).append(i)
    eq = tuple(sorted(tuple(b) for b in blocks.values()))
    adj = tuple(
        (i + 1, j + 1)
        for i, j in itertools.combinations(range(len(t)), 2)
        if g.adjacent(t[i], t[j])
    )
    return AtomicType(eq, adj)


def atp2(g: Graph, u: int, v: int) -> Atp2Class:
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return Atp2Class.EQUAL
    if g.adjacent(u, v):
        return Atp2Class.ADJACENT
    return Atp2Class.DISTINCT_NON_ADJACENT
