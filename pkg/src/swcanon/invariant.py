"""Canonical invariant of the simplicial walk automaton.

The forward basis is computed with the single-letter queue start, so every
basis word is nonempty and its row is supported on the states of one color
(the target color of its last letter). That makes three shortcuts exact:
successors whose source color differs from that color are never enqueued,
``row @ X`` is cached per uncolored matrix ``X`` and only masked per target
color, and rank queries run inside one color block at a time.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .automaton import MINUS, PLUS, Move, SWAutomaton, Swap, build_automaton
from .graph import Atp2Class, Graph
from .linalg import EchelonBasis, SparseMatrix, frac_str, gram_inverse, vec_matmul, vec_restrict
from .mia import CanonicalMIA, ForwardBasis, forward_reduce, reduce_final, reduce_initial, reduce_matrix

FORMAT_VERSION = "sw-invariant v1"


def sw_forward_reduce(aut: SWAutomaton) -> ForwardBasis:
    """Forward basis (single-letter start) using the color structure of ``aut``."""
    by_source: dict = {}
    for c in aut.alphabet:
        by_source.setdefault(c.a, []).append(c)
    kinds = {c: aut.kind_of(c) for c in aut.alphabet}
    blocks = aut.blocks
    echelons: dict = {}
    cache: dict = {}  # (parent id, kind) -> parent_row @ X
    words, rows = [], []
    root_rows = {c: {i: Fraction(1) for i in sorted(blocks[c])} for c in blocks}

    def product(pid, parent, kind):
        key = (pid, kind)
        y = cache.get(key)
        if y is None:
            y = vec_matmul(parent, aut.kind_matrix(kind))
            cache[key] = y
        return y

    queue: deque = deque()
    for c in aut.alphabet:
        queue.append(((c,), ("root", c.a), root_rows[c.a], c))
    while queue:
        word, pid, parent, letter = queue.popleft()
        gamma = vec_restrict(product(pid, parent, kinds[letter]), blocks[letter.b])
        if not gamma:
            continue
        ech = echelons.setdefault(letter.b, EchelonBasis())
        if not ech.add(gamma):
            continue
        idx = len(words)
        words.append(word)
        rows.append(gamma)
        for c in by_source.get(letter.b, ()):
            queue.append((word + (c,), idx, gamma, c))
    F = SparseMatrix.from_rows((len(rows), aut.dim), dict(enumerate(rows)))
    return ForwardBasis(tuple(words), F)


def final_color(word: tuple):
    if not word:
        raise ValueError("the empty word has no final color")
    return word[-1].b


# ---------------------------------------------------------------- invariant


@dataclass(frozen=True)
class CanonicalInvariant:
    n: int
    k: int
    h: int
    n_states: int
    words: tuple
    alpha: tuple
    eta: tuple
    d_plus: SparseMatrix
    d_minus: SparseMatrix
    t: tuple  # ((tau, p), SparseMatrix) sorted by (p, tau)

    @property
    def size(self) -> int:
        return len(self.words)

    def t_matrix(self, tau: Atp2Class, p: int) -> SparseMatrix:
        for key, m in self.t:
            if key == (tau, p):
                return m
        raise KeyError((tau, p))

    def serialize(self) -> str:
        return serialize_invariant(self)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()


def sw_invariant(g: Graph, k: int, h: int, variant: str = "3b", generic: bool = False,
                 automaton: SWAutomaton | None = None) -> CanonicalInvariant:
    """Canonical invariant; equal for two graphs iff their numbers of
    h-colored k-simplicial walks agree. The fast path requires variant 3b."""
    if k < 1 or h < 1:
        raise ValueError("k and h must be at least 1")
    aut = automaton if automaton is not None else build_automaton(g, k, h)
    if generic or variant == "3a":
        basis = forward_reduce(aut, variant)
    else:
        basis = sw_forward_reduce(aut)
    return invariant_from_basis(aut, basis)


def invariant_from_basis(aut: SWAutomaton, basis: ForwardBasis) -> CanonicalInvariant:
    s = basis.rank
    if s:
        gi = gram_inverse(basis.F)
        alpha = reduce_initial(basis, aut.initial, gi)
        eta = reduce_final(basis, aut.final)
        dp = reduce_matrix(basis, aut.D[PLUS], gi)
        dm = reduce_matrix(basis, aut.D[MINUS], gi)
        ts = tuple(
            ((tau, p), reduce_matrix(basis, aut.T[(tau, p)], gi))
            for p in range(1, aut.k + 1) for tau in Atp2Class
        )
    else:
        alpha = eta = ()
        dp = dm = SparseMatrix((0, 0))
        ts = tuple(((tau, p), SparseMatrix((0, 0))) for p in range(1, aut.k + 1) for tau in Atp2Class)
    return CanonicalInvariant(aut.graph.n, aut.k, aut.h, aut.dim, basis.words, alpha, eta, dp, dm, ts)


# ---------------------------------------------------------------- serialization


def _color_legend(words) -> list:
    cols = set()
    for w in words:
        for c in w:
            cols.add(c.a)
            cols.add(c.b)
    return sorted(cols)


def _vector_lines(tag: str, vec) -> list[str]:
    entries = [(i, v) for i, v in enumerate(vec) if v != 0]
    return [f"{tag} {len(entries)}"] + [f"{i} {frac_str(v)}" for i, v in entries]


def _matrix_lines(tag: str, m: SparseMatrix) -> list[str]:
    trip = m.triples()
    return [f"{tag} {len(trip)}"] + [f"{i} {j} {frac_str(v)}" for i, j, v in trip]


def serialize_invariant(inv: CanonicalInvariant) -> str:
    """Deterministic text form; two graphs are indistinguishable iff these bytes agree."""
    legend = _color_legend(inv.words)
    name = {c: str(i) for i, c in enumerate(legend)}
    lines = [
        FORMAT_VERSION,
        f"n {inv.n} k {inv.k} h {inv.h} states {inv.n_states} basis {inv.size}",
        f"colors {len(legend)}",
    ]
    lines += [f"c{i} {c.digest}" for i, c in enumerate(legend)]
    lines.append(f"words {inv.size}")
    for w in inv.words:
        lines.append(" ".join(c.render(lambda x: "c" + name[x]) for c in w) or "<eps>")
    lines += _vector_lines("alpha", inv.alpha)
    lines += _vector_lines("eta", inv.eta)
    lines += _matrix_lines("D+", inv.d_plus)
    lines += _matrix_lines("D-", inv.d_minus)
    for (tau, p), m in inv.t:
        lines += _matrix_lines(f"T{tau.code}{p}", m)
    body = "\n".join(lines) + "\n"
    return body + "digest " + hashlib.sha256(body.encode()).hexdigest() + "\n"


# ---------------------------------------------------------------- reconstruction


class MalformedInvariant(ValueError):
    pass


def reconstruct_canonical(inv: CanonicalInvariant) -> CanonicalMIA:
    """Per-letter canonical matrices recovered from the summed ones by masking
    rows and columns with the final colors of the basis words."""
    s = inv.size
    for m in [inv.d_plus, inv.d_minus] + [m for _, m in inv.t]:
        if m.shape != (s, s):
            raise MalformedInvariant(f"matrix of shape {m.shape} for a basis of size {s}")
    if len(inv.alpha) != s or len(inv.eta) != s:
        raise MalformedInvariant("vector length differs from basis size")
    if any(not w for w in inv.words):
        raise MalformedInvariant("basis contains the empty word; reconstruction needs variant 3b")
    by_color: dict = {}
    for i, w in enumerate(inv.words):
        by_color.setdefault(final_color(w), set()).add(i)
    colors = sorted(by_color)
    trans = {}
    for a in colors:
        for b in colors:
            ra, cb = by_color[a], by_color[b]
            for sign, m in ((PLUS, inv.d_plus), (MINUS, inv.d_minus)):
                part = m.mask(ra, cb)
                if not part.is_zero():
                    trans[Move(a, sign, b)] = part
            for (tau, p), m in inv.t:
                part = m.mask(ra, cb)
                if not part.is_zero():
                    trans[Swap(a, tau, p, b)] = part
    letters = sorted(trans)
    return CanonicalMIA(
        words=inv.words,
        alphabet=tuple(letters),
        involution=tuple(sorted((c, c.star()) for c in letters)),
        transitions=tuple((c, trans[c].triples()) for c in letters),
        initial=inv.alpha,
        final=inv.eta,
    )
