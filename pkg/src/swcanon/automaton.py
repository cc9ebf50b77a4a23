"""The simplicial walk automaton of a graph.

States are the duplicate-free vertex tuples of length 1..k. Letters are
``Move(a, sign, b)`` (drop or insert a vertex) and ``Swap(a, tau, p, b)``
(replace the vertex at position ``p`` by one of atp2-class ``tau``), where
``a``/``b`` are the colors of the source and target state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Atp2Class, Graph, atp2
from .linalg import SparseMatrix, frac_str
from .mia import MIA
from .wl import ColorNode, ColorTable, chi_kh, rounds_needed, wl_colors

MINUS, PLUS = -1, 1
SIGNS = (MINUS, PLUS)


def sign_str(s: int) -> str:
    return "+" if s == PLUS else "-"


# ---------------------------------------------------------------- states


@dataclass(frozen=True)
class StateIndex:
    """Duplicate-free tuples ordered by (length, lexicographic entries)."""

    tuples: tuple
    index: dict = field(compare=False, repr=False)

    def __len__(self):
        return len(self.tuples)

    def __getitem__(self, i: int) -> tuple:
        return self.tuples[i]

    def of(self, t: tuple) -> int:
        return self.index[t]


def build_states(g: Graph, k: int) -> StateIndex:
    if k < 1:
        raise ValueError("k must be at least 1")
    tuples = tuple(t for ell in range(1, k + 1) for t in itertools.permutations(range(g.n), ell))
    return StateIndex(tuples, {t: i for i, t in enumerate(tuples)})


# ---------------------------------------------------------------- letters


class Letter:
    __slots__ = ()

    def sort_key(self):
        raise NotImplementedError

    def __lt__(self, other):
        if not isinstance(other, Letter):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        if not isinstance(other, Letter):
            return NotImplemented
        return other < self

    def __ge__(self, other):
        return self == other or other < self


@dataclass(frozen=True, eq=True)
class Move(Letter):
    a: ColorNode
    sign: int
    b: ColorNode

    def sort_key(self):
        return (0, self.a, self.b, self.sign)

    def star(self) -> "Move":
        return Move(self.b, -self.sign, self.a)

    @property
    def source(self) -> ColorNode:
        return self.a

    @property
    def target(self) -> ColorNode:
        return self.b

    def render(self, name) -> str:
        return f"M{name(self.a)}{sign_str(self.sign)}{name(self.b)}"

    def __str__(self):
        return self.render(lambda c: c.digest[:8])


@dataclass(frozen=True, eq=True)
class Swap(Letter):
    a: ColorNode
    tau: Atp2Class
    p: int
    b: ColorNode

    def sort_key(self):
        return (1, self.a, self.b, int(self.tau), self.p)

    def star(self) -> "Swap":
        return Swap(self.b, self.tau, self.p, self.a)

    @property
    def source(self) -> ColorNode:
        return self.a

    @property
    def target(self) -> ColorNode:
        return self.b

    def render(self, name) -> str:
        return f"S{name(self.a)}{self.tau.code}{self.p}:{name(self.b)}"

    def __str__(self):
        return self.render(lambda c: c.digest[:8])


# ---------------------------------------------------------------- matrices


def _states(g, k, states):
    return build_states(g, k) if states is None else states


def matrix_D(g: Graph, k: int, s: int, p: int, states: StateIndex | None = None) -> SparseMatrix:
    """Outgoing (``s = -1``): ``u -> u`` with position ``p`` dropped.
    Incoming (``s = +1``): the transpose, inserting a vertex at ``p``."""
    if not 1 <= p <= k:
        raise ValueError(f"position {p} outside 1..{k}")
    st = _states(g, k, states)
    entries = []
    for i, u in enumerate(st.tuples):
        if len(u) >= 2 and p <= len(u):
            j = st.of(u[:p - 1] + u[p:])
            entries.append((i, j, 1) if s == MINUS else (j, i, 1))
    return SparseMatrix((len(st), len(st)), entries)


def matrix_T(g: Graph, k: int, tau: Atp2Class, p: int, states: StateIndex | None = None) -> SparseMatrix:
    """``u -> v`` for same-length states agreeing off position ``p`` whose
    entries at ``p`` have atp2-class ``tau``."""
    if not 1 <= p <= k:
        raise ValueError(f"position {p} outside 1..{k}")
    st = _states(g, k, states)
    entries = []
    for i, u in enumerate(st.tuples):
        if p > len(u):
            continue
        rest = set(u[:p - 1] + u[p:])
        x = u[p - 1]
        for y in range(g.n):
            if y in rest or atp2(g, x, y) != tau:
                continue
            entries.append((i, st.of(u[:p - 1] + (y,) + u[p:]), 1))
    return SparseMatrix((len(st), len(st)), entries)


def state_colors(g: Graph, k: int, h: int, table: ColorTable, states: StateIndex) -> tuple:
    return tuple(chi_kh(g, u, k, h, table) for u in states.tuples)


def matrix_P(g: Graph, k: int, h: int, a: ColorNode, table: ColorTable, states: StateIndex | None = None) -> SparseMatrix:
    st = _states(g, k, states)
    cols = state_colors(g, k, h, table, st)
    return SparseMatrix.diagonal(len(st), (i for i, c in enumerate(cols) if c is a))


def _grouped(M: SparseMatrix, colors) -> dict:
    """Split ``M`` into blocks ``P_a M P_b`` keyed by ``(a, b)``."""
    blocks: dict = {}
    for i, j, v in M.triples():
        blocks.setdefault((colors[i], colors[j]), []).append((i, j, v))
    return blocks


# ---------------------------------------------------------------- automaton


class SWAutomaton(MIA):
    """Rational MIA with all-ones initial and final vectors over the states."""

    def __init__(self, graph: Graph, k: int, h: int, table: ColorTable, states: StateIndex,
                 colors: tuple, D: dict, T: dict, transitions: dict):
        q = len(states)
        letters = list(transitions)
        super().__init__(
            q,
            letters,
            {c: c.star() for c in letters},
            transitions,
            [1] * q,
            [1] * q,
        )
        self.graph = graph
        self.k = k
        self.h = h
        self.table = table
        self.states = states
        self.colors = colors
        self.D = D  # sign -> sum over p of D^sign_p
        self.T = T  # (tau, p) -> T^tau_p
        blocks: dict = {}
        for i, c in enumerate(colors):
            blocks.setdefault(c, []).append(i)
        self.blocks = {c: frozenset(v) for c, v in blocks.items()}

    @property
    def kinds(self) -> list:
        """Keys of the uncolored transition matrices, in a fixed order."""
        return [("D", s) for s in SIGNS] + [("T", tau, p) for p in range(1, self.k + 1) for tau in Atp2Class]

    def kind_matrix(self, kind) -> SparseMatrix:
        return self.D[kind[1]] if kind[0] == "D" else self.T[(kind[1], kind[2])]

    @staticmethod
    def kind_of(letter: Letter):
        if isinstance(letter, Move):
            return ("D", letter.sign)
        return ("T", letter.tau, letter.p)

    def letter_matrix(self, letter: Letter) -> SparseMatrix:
        return self.matrix(letter)

    def dump(self) -> str:
        """Debug listing: states, alphabet in order, matrices as sorted triples."""
        name = {c: c.digest[:12] for c in set(self.colors)}
        lines = [f"sw-automaton n {self.graph.n} k {self.k} h {self.h}", f"states {len(self.states)}"]
        for i, (u, c) in enumerate(zip(self.states.tuples, self.colors)):
            lines.append(f"q {i} {' '.join(map(str, u))} {name[c]}")
        lines.append(f"alphabet {len(self.alphabet)}")
        for a in self.alphabet:
            lines.append(f"letter {a.render(name.__getitem__)} star {a.star().render(name.__getitem__)}")
            lines += [f"  {i} {j} {frac_str(v)}" for i, j, v in self.matrix(a).triples()]
        return "\n".join(lines) + "\n"


def build_alphabet(g: Graph, k: int, h: int, table: ColorTable, states: StateIndex | None = None) -> tuple:
    return build_automaton(g, k, h, table=table, states=states).alphabet


def build_automaton(g: Graph, k: int, h: int, table: ColorTable | None = None,
                    states: StateIndex | None = None) -> SWAutomaton:
    if k < 1 or h < 1:
        raise ValueError("k and h must be at least 1")
    if table is None:
        table = wl_colors(g, k, rounds_needed(k, h))
    st = _states(g, k, states)
    colors = state_colors(g, k, h, table, st)
    q = len(st)
    D = {}
    for s in SIGNS:
        acc = SparseMatrix((q, q))
        for p in range(1, k + 1):
            acc = acc + matrix_D(g, k, s, p, st)
        D[s] = acc
    T = {(tau, p): matrix_T(g, k, tau, p, st) for p in range(1, k + 1) for tau in Atp2Class}
    transitions = {}
    for s in SIGNS:
        for (a, b), entries in _grouped(D[s], colors).items():
            transitions[Move(a, s, b)] = SparseMatrix((q, q), entries)
    for (tau, p), M in T.items():
        for (a, b), entries in _grouped(M, colors).items():
            transitions[Swap(a, tau, p, b)] = SparseMatrix((q, q), entries)
    return SWAutomaton(g, k, h, table, st, colors, D, T, transitions)


def letter_matrix_product(aut: SWAutomaton, letter: Letter) -> SparseMatrix:
    """The letter's matrix recomputed as ``sum_p P_a D^s_p P_b`` or ``P_a T^tau_p P_b``."""
    g, k, st = aut.graph, aut.k, aut.states
    Pa = SparseMatrix.diagonal(len(st), aut.blocks.get(letter.a, ()))
    Pb = SparseMatrix.diagonal(len(st), aut.blocks.get(letter.b, ()))
    if isinstance(letter, Move):
        acc = SparseMatrix((len(st), len(st)))
        for p in range(1, k + 1):
            acc = acc + Pa @ matrix_D(g, k, letter.sign, p, st) @ Pb
        return acc
    return Pa @ matrix_T(g, k, letter.tau, letter.p, st) @ Pb
