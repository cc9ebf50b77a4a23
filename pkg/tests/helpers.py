"""Shared fixtures data: graph catalogs, the graph-pair pool, random automata."""

from __future__ import annotations

import functools
import random
from fractions import Fraction

import networkx as nx

from swcanon.graph import Graph, complete, cycle, disjoint_union, empty, path, permute
from swcanon.linalg import SparseMatrix
from swcanon.mia import MIA

# ---------------------------------------------------------------- graphs


def from_nx(g) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph.from_edges(len(mapping), [(mapping[u], mapping[v]) for u, v in g.edges()])


@functools.lru_cache(maxsize=None)
def atlas(max_n: int, min_n: int = 0) -> tuple:
    """Every graph on min_n..max_n vertices up to isomorphism (max_n <= 7)."""
    return tuple(from_nx(g) for g in nx.graph_atlas_g() if min_n <= g.number_of_nodes() <= max_n)


def connected_atlas(max_n: int) -> tuple:
    return tuple(g for g in atlas(max_n, 1) if nx.is_connected(to_nx(g)))


def to_nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def random_perm(n: int, rng: random.Random) -> list[int]:
    pi = list(range(n))
    rng.shuffle(pi)
    return pi


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


K1, K2 = complete(1), complete(2)
K33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
PRISM = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
STAR3 = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
C6, TWO_C3 = cycle(6), disjoint_union(cycle(3), cycle(3))


def _degree_matched_pairs(count: int) -> list:
    """Non-isomorphic atlas pairs on 5-6 vertices with equal degree sequences,
    chosen so that some differences only show up in longer walks."""
    groups: dict = {}
    for g in atlas(6, 5):
        groups.setdefault(tuple(sorted(g.degree(v) for v in g.vertices)), []).append(g)
    pairs = [grp[:2] for _, grp in sorted(groups.items()) if len(grp) >= 2]
    rng = random.Random(3)
    rng.shuffle(pairs)
    return [(f"degseq{i}", a, b) for i, (a, b) in enumerate(pairs[:count])]


@functools.lru_cache(maxsize=None)
def pair_pool() -> tuple:
    """(name, G, H) pairs: 1-WL-equivalent regular pairs, irregular pairs,
    disconnected cases, different vertex counts and relabeled copies."""
    rng = random.Random(11)
    pairs = [
        ("C6|2C3", C6, TWO_C3),
        ("K33|prism", K33, PRISM),
        ("C6+K1|2C3+K1", disjoint_union(C6, K1), disjoint_union(TWO_C3, K1)),
        ("C7|C3+C4", cycle(7), disjoint_union(cycle(3), cycle(4))),
        ("P4|star", path(4), STAR3),
        ("C4|2K2", cycle(4), disjoint_union(K2, K2)),
        ("P4|2K2", path(4), disjoint_union(K2, K2)),
        ("C5|C5'", cycle(5), permute(cycle(5), random_perm(5, rng))),
        ("K4|C4", complete(4), cycle(4)),
        ("K3|K4", complete(3), complete(4)),
        ("P3|P4", path(3), path(4)),
        ("E3|K2+K1", empty(3), disjoint_union(K2, K1)),
        ("K1|K1", K1, K1),
        ("K2+K1|P3", disjoint_union(K2, K1), path(3)),
        ("C6|P6", C6, path(6)),
        ("K4|K4'", complete(4), permute(complete(4), random_perm(4, rng))),
        ("prism|prism'", PRISM, permute(PRISM, random_perm(6, rng))),
        ("star+K1|P3+K2", disjoint_union(STAR3, K1), disjoint_union(path(3), K2)),
        ("2P3|P6", disjoint_union(path(3), path(3)), path(6)),
        ("E4|E4", empty(4), empty(4)),
        ("C4+K2|C6", disjoint_union(cycle(4), K2), C6),
    ]
    return tuple(pairs + _degree_matched_pairs(6))


# ---------------------------------------------------------------- automata

_LAYOUTS = (
    (("a", "a"),),
    (("a", "b"),),
    (("a", "a"), ("b", "b")),
    (("a", "a"), ("b", "c")),
    (("a", "b"), ("c", "c")),
    (("a", "a"), ("b", "b"), ("c", "c")),
)
_VALUES = (-2, -1, 1, 2, Fraction(1, 2), Fraction(-1, 3))


def _entry(rng: random.Random, density: float):
    return rng.choice(_VALUES) if rng.random() < density else 0


def layout_of(A: MIA) -> tuple:
    return tuple(sorted({tuple(sorted((a, A.star(a)))) for a in A.alphabet}))


def random_mia(rng: random.Random, max_dim: int = 4, layout=None) -> MIA:
    """A random MIA satisfying I1-I2 with at most ``max_dim`` states and 3 letters."""
    d = rng.randint(1, max_dim)
    layout = layout or rng.choice(_LAYOUTS)
    density = rng.choice((0.3, 0.5, 0.8))
    inv, trans = {}, {}
    for x, y in layout:
        inv[x], inv[y] = y, x
        if x == y:
            m = [[0] * d for _ in range(d)]
            for i in range(d):
                for j in range(i, d):
                    m[i][j] = m[j][i] = _entry(rng, density)
            trans[x] = SparseMatrix.from_dense(m)
        else:
            m = SparseMatrix.from_dense([[_entry(rng, density) for _ in range(d)] for _ in range(d)])
            trans[x], trans[y] = m, m.T
    alpha = [_entry(rng, 0.8) for _ in range(d)]
    if not any(alpha):
        alpha[rng.randrange(d)] = 1
    return MIA(d, list(inv), inv, trans, alpha, alpha)


def rational_rotation(d: int, rng: random.Random) -> list:
    """A random rational orthogonal matrix: three Givens rotations by Pythagorean
    angles (a sign flip in dimension 1)."""
    q = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    if d < 2:
        return [[Fraction(rng.choice((1, -1)))]]
    for _ in range(3):
        i, j = rng.sample(range(d), 2)
        c, s = rng.choice(((Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)),
                           (Fraction(8, 17), Fraction(15, 17))))
        for row in q:
            a, b = row[i], row[j]
            row[i], row[j] = c * a - s * b, s * a + c * b
    return q


def transform(A: MIA, q: list) -> MIA:
    """``Q A Q^T``: same series, I1-I2 preserved for orthogonal ``Q``."""
    d = A.dim
    qm = SparseMatrix.from_dense(q)
    qt = qm.T
    trans = {a: qm @ m @ qt for a, m in A.transitions.items()}
    init = tuple(sum((A.initial[i] * q[j][i] for i in range(d)), Fraction(0)) for j in range(d))
    return MIA(d, A.alphabet, A.involution, trans, init, init)


def pad(A: MIA, extra: int, rng: random.Random) -> MIA:
    """Append unreachable states carrying their own (adjoint-consistent) dynamics."""
    d = A.dim + extra
    trans = {}
    done = set()
    for a in A.alphabet:
        if a in done:
            continue
        b = A.star(a)
        blk = [[_entry(rng, 0.5) for _ in range(extra)] for _ in range(extra)]
        if a == b:
            blk = [[blk[min(i, j)][max(i, j)] for j in range(extra)] for i in range(extra)]
        entries = list(A.matrix(a).triples())
        entries += [(A.dim + i, A.dim + j, v) for i, row in enumerate(blk) for j, v in enumerate(row) if v]
        m = SparseMatrix((d, d), entries)
        trans[a] = m
        trans[b] = m.T if a != b else m
        done |= {a, b}
    init = A.initial + (Fraction(0),) * extra
    return MIA(d, A.alphabet, A.involution, trans, init, init)


def perturb(A: MIA, rng: random.Random) -> MIA:
    """Change one entry of one letter (and its adjoint partner)."""
    a = rng.choice(A.alphabet)
    b = A.star(a)
    i, j = rng.randrange(A.dim), rng.randrange(A.dim)
    dense = A.matrix(a).to_dense()
    dense[i][j] += rng.choice((1, -1, 2))
    if a == b:
        dense[j][i] = dense[i][j]
    m = SparseMatrix.from_dense(dense)
    trans = dict(A.transitions)
    trans[a] = m
    trans[b] = m.T if a != b else m
    return MIA(A.dim, A.alphabet, A.involution, trans, A.initial, A.final)


def all_words(alphabet, max_len: int):
    words = [()]
    frontier = [()]
    for _ in range(max_len):
        frontier = [w + (a,) for w in frontier for a in alphabet]
        words += frontier
    return words


# ---------------------------------------------------------------- walks


def prefix_agreement(flags) -> list[bool]:
    """``out[i]`` is True iff ``flags[0..i]`` are all True."""
    out, ok = [], True
    for f in flags:
        ok = ok and f
        out.append(ok)
    return out
