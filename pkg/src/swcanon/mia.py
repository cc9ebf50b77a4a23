"""Multiplicity automata with involution over the rationals: evaluation,
forward reduction, canonical form and equivalence.

Letters can be any hashable, mutually comparable values; the alphabet is kept
sorted and that order drives the reduction queue. Words are tuples of letters
and are read left to right: ``M(c1 c2 ... ct) = M(c1) M(c2) ... M(ct)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .linalg import (
    EchelonBasis,
    SparseMatrix,
    dense_to_vec,
    frac_str,
    gram_inverse,
    vec_dot,
    vec_matmul,
    vec_to_dense,
)

VARIANTS = ("3a", "3b")


class MIAViolation(ValueError):
    def __init__(self, condition: str, letter=None, detail: str = ""):
        self.condition = condition
        self.letter = letter
        msg = f"{condition} violated"
        if letter is not None:
            msg += f" at letter {letter!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class AlphabetMismatch(ValueError):
    pass


class UnknownLetter(KeyError):
    pass


class MIA:
    """Multiplicity automaton on states ``0..dim-1`` with a letter involution.

    ``transitions`` may omit letters; a missing letter has the zero matrix.
    """

    def __init__(
        self,
        dim: int,
        alphabet: Iterable[Hashable],
        involution: Mapping,
        transitions: Mapping,
        initial: Sequence,
        final: Sequence,
    ):
        self.dim = dim
        self.alphabet = tuple(sorted(set(alphabet)))
        self.involution = dict(involution)
        self.transitions = dict(transitions)
        self.initial = tuple(Fraction(x) for x in initial)
        self.final = tuple(Fraction(x) for x in final)
        if len(self.initial) != dim or len(self.final) != dim:
            raise ValueError("initial/final vectors must have length dim")
        for a, m in self.transitions.items():
            if m.shape != (dim, dim):
                raise ValueError(f"matrix of {a!r} has shape {m.shape}, expected {(dim, dim)}")

    def star(self, letter):
        return self.involution[letter]

    def matrix(self, letter) -> SparseMatrix:
        if letter not in self.involution:
            raise UnknownLetter(letter)
        m = self.transitions.get(letter)
        return m if m is not None else SparseMatrix((self.dim, self.dim))

    def permuted(self, pi: Sequence[int]) -> "MIA":
        """Rename state ``i`` to ``pi[i]`` (the automaton ``P A P^T``)."""
        if sorted(pi) != list(range(self.dim)):
            raise ValueError("not a permutation of the states")
        trans = {
            a: SparseMatrix(m.shape, ((pi[i], pi[j], v) for i, j, v in m.triples()))
            for a, m in self.transitions.items()
        }
        init = [Fraction(0)] * self.dim
        fin = [Fraction(0)] * self.dim
        for i in range(self.dim):
            init[pi[i]] = self.initial[i]
            fin[pi[i]] = self.final[i]
        return MIA(self.dim, self.alphabet, self.involution, trans, init, fin)


def star_word(A: MIA, word: Sequence) -> tuple:
    return tuple(A.star(c) for c in reversed(word))


def validate_mia(A: MIA) -> None:
    """Raise ``MIAViolation`` unless I1 (initial and final adjoint) and I2
    (``M(c*) = M(c)^T``, involutive alphabet) hold."""
    if A.initial != A.final:
        raise MIAViolation("I1", detail="initial vector is not the transpose of the final vector")
    for c in A.alphabet:
        if c not in A.involution:
            raise MIAViolation("I2", c, "letter has no involution image")
        cs = A.involution[c]
        if cs not in A.involution or A.involution[cs] != c:
            raise MIAViolation("I2", c, "letter map is not an involution on the alphabet")
        if A.matrix(cs) != A.matrix(c).T:
            raise MIAViolation("I2", c, "M(c*) differs from M(c)^T")


def evaluate(A: MIA, word: Sequence) -> Fraction:
    vec = dense_to_vec(A.initial)
    for c in word:
        vec = vec_matmul(vec, A.matrix(c))
        if not vec:
            return Fraction(0)
    return vec_dot(vec, dense_to_vec(A.final))


def forward_vector(A: MIA, word: Sequence) -> dict:
    vec = dense_to_vec(A.initial)
    for c in word:
        vec = vec_matmul(vec, A.matrix(c))
    return vec


# ---------------------------------------------------------------- reduction


@dataclass(frozen=True)
class ForwardBasis:
    """Words ``S`` in discovery order and the matrix ``F`` with rows ``alpha M(w)``."""

    words: tuple
    F: SparseMatrix

    @property
    def rank(self) -> int:
        return len(self.words)

    def key(self):
        return (self.words, self.F.shape, self.F.triples())


def forward_reduce(A: MIA, variant: str = "3a") -> ForwardBasis:
    """Breadth-first forward reduction.

    ``3a`` starts the queue at the empty word; ``3b`` starts with every
    single letter, so the empty word never enters the basis. A dequeued word
    joins the basis iff its row raises the rank, and then each letter is
    appended to it in alphabet order.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    alpha = dense_to_vec(A.initial)
    ech = EchelonBasis()
    words, rows = [], []
    queue: deque = deque()
    if variant == "3a":
        queue.append(((), None, None))
    else:
        queue.extend(((a,), alpha, a) for a in A.alphabet)
    mats = {a: A.matrix(a) for a in A.alphabet}
    while queue:
        word, parent, letter = queue.popleft()
        gamma = alpha if letter is None else vec_matmul(parent, mats[letter])
        if not gamma or not ech.add(gamma):
            continue
        words.append(word)
        rows.append(gamma)
        queue.extend((word + (a,), gamma, a) for a in A.alphabet)
    F = SparseMatrix.from_rows((len(rows), A.dim), dict(enumerate(rows)))
    return ForwardBasis(tuple(words), F)


# ---------------------------------------------------------------- canonical form


@dataclass(frozen=True)
class CanonicalMIA:
    """Minimal automaton on the basis words; zero transition matrices are omitted."""

    words: tuple
    alphabet: tuple
    involution: tuple  # sorted (letter, star) pairs
    transitions: tuple  # sorted (letter, triples) pairs, nonzero only
    initial: tuple
    final: tuple

    @property
    def dim(self) -> int:
        return len(self.words)

    def matrix(self, letter) -> SparseMatrix:
        for a, triples in self.transitions:
            if a == letter:
                return SparseMatrix((self.dim, self.dim), triples)
        return SparseMatrix((self.dim, self.dim))

    def as_automaton(self) -> MIA:
        return MIA(
            self.dim,
            self.alphabet,
            dict(self.involution),
            {a: SparseMatrix((self.dim, self.dim), t) for a, t in self.transitions},
            self.initial,
            self.final,
        )

    def same_series_form(self, other: "CanonicalMIA") -> bool:
        """Equality of everything the series determines (alphabets may differ by zero letters)."""
        return (
            self.words == other.words
            and self.transitions == other.transitions
            and self.initial == other.initial
            and self.final == other.final
        )

    def dump(self) -> str:
        lines = [f"dim {self.dim}"]
        lines += [f"w {' '.join(map(str, w)) or '<eps>'}" for w in self.words]
        lines.append("alpha " + " ".join(frac_str(x) for x in self.initial))
        lines.append("eta " + " ".join(frac_str(x) for x in self.final))
        for a, triples in self.transitions:
            lines.append(f"M {a}")
            lines += [f"  {i} {j} {frac_str(v)}" for i, j, v in triples]
        return "\n".join(lines)


def _project(F: SparseMatrix, gram_inv, row_src: Iterable[tuple[int, dict]]):
    """Rows ``x F^T (F F^T)^{-1}`` for the given sparse rows ``x``."""
    s = F.shape[0]
    frows = [F.rows.get(i, {}) for i in range(s)]
    out = {}
    for i, x in row_src:
        coeffs = [vec_dot(x, frows[t]) for t in range(s)]
        acc = {}
        for c in range(s):
            tot = Fraction(0)
            for t in range(s):
                if coeffs[t] and gram_inv[t][c]:
                    tot += coeffs[t] * gram_inv[t][c]
            if tot:
                acc[c] = tot
        if acc:
            out[i] = acc
    return out


def reduce_matrix(basis: ForwardBasis, M: SparseMatrix, gram_inv=None) -> SparseMatrix:
    """``F M F^+`` on the basis words."""
    F = basis.F
    if gram_inv is None:
        gram_inv = gram_inverse(F)
    s = F.shape[0]
    FM = (vec_matmul(F.rows.get(i, {}), M) for i in range(s))
    rows = _project(F, gram_inv, ((i, x) for i, x in enumerate(FM) if x))
    return SparseMatrix.from_rows((s, s), rows)


def reduce_initial(basis: ForwardBasis, alpha: Sequence, gram_inv=None) -> tuple:
    F = basis.F
    if gram_inv is None:
        gram_inv = gram_inverse(F)
    rows = _project(F, gram_inv, [(0, dense_to_vec(alpha))])
    return vec_to_dense(rows.get(0, {}), F.shape[0])


def reduce_final(basis: ForwardBasis, eta: Sequence) -> tuple:
    F = basis.F
    eta_v = dense_to_vec(eta)
    return tuple(vec_dot(F.rows.get(i, {}), eta_v) for i in range(F.shape[0]))


def canonical_form(A: MIA, variant: str = "3a", basis: ForwardBasis | None = None) -> CanonicalMIA:
    """``M^(a) = F M(a) F^+``, ``alpha^ = alpha F^+``, ``eta^ = F eta``.

    With variant ``3b`` the initial vector must lie in the span of the basis
    rows, otherwise the result would not recognise the same series.
    """
    if basis is None:
        basis = forward_reduce(A, variant)
    F = basis.F
    gram_inv = gram_inverse(F)
    alpha_hat = reduce_initial(basis, A.initial, gram_inv)
    if variant == "3b":
        back = vec_matmul(dense_to_vec(alpha_hat), F)
        if back != dense_to_vec(A.initial):
            raise ValueError("initial vector is not spanned by the 3b basis; use variant 3a")
    eta_hat = reduce_final(basis, A.final)
    trans = []
    for a in A.alphabet:
        m = A.transitions.get(a)
        if m is None or m.is_zero():
            continue
        mh = reduce_matrix(basis, m, gram_inv)
        if not mh.is_zero():
            trans.append((a, mh.triples()))
    return CanonicalMIA(
        words=basis.words,
        alphabet=A.alphabet,
        involution=tuple(sorted(A.involution.items())),
        transitions=tuple(trans),
        initial=alpha_hat,
        final=eta_hat,
    )


def joint_alphabet(A1: MIA, A2: MIA) -> tuple[tuple, dict]:
    """Union of two alphabets; shared letters must agree on their involution."""
    inv = dict(A1.involution)
    for a, b in A2.involution.items():
        if a in inv and inv[a] != b:
            raise AlphabetMismatch(f"letter {a!r} has involution {inv[a]!r} vs {b!r}")
        inv[a] = b
    try:
        letters = tuple(sorted(set(A1.alphabet) | set(A2.alphabet)))
    except TypeError as exc:
        raise AlphabetMismatch(f"letters are not mutually comparable: {exc}") from None
    return letters, inv


def extend_alphabet(A: MIA, letters: Iterable, involution: Mapping) -> MIA:
    return MIA(A.dim, letters, involution, A.transitions, A.initial, A.final)


def equivalent(A1: MIA, A2: MIA) -> bool:
    """Series equality, decided by comparing canonical forms."""
    letters, inv = joint_alphabet(A1, A2)
    c1 = canonical_form(extend_alphabet(A1, letters, inv))
    c2 = canonical_form(extend_alphabet(A2, letters, inv))
    return c1.same_series_form(c2)


# ---------------------------------------------------------------- oracle


def _insert(rows, cand) -> bool:
    v = list(cand)
    for piv, r in rows:
        if v[piv]:
            f = v[piv] / r[piv]
            v = [x - f * y for x, y in zip(v, r)]
    for piv, x in enumerate(v):
        if x:
            rows.append((piv, v))
            return True
    return False


def brute_equivalent(A1: MIA, A2: MIA) -> bool:
    """Independent check of series equality.

    Runs a forward exploration on the stacked vectors ``(alpha1 M1(w), alpha2 M2(w))``
    with dense elimination and compares the two series on every word whose stacked
    vector was new; by linearity that decides equality on all words.
    """
    letters, _ = joint_alphabet(A1, A2)
    d1, d2 = A1.dim, A2.dim
    m1 = {a: A1.matrix(a).to_dense() if a in A1.involution else None for a in letters}
    m2 = {a: A2.matrix(a).to_dense() if a in A2.involution else None for a in letters}

    def step(vec, m, d):
        if m is None:
            return [Fraction(0)] * d
        return [sum((vec[i] * m[i][j] for i in range(d) if vec[i]), Fraction(0)) for j in range(d)]

    def value(vec, eta):
        return sum((x * y for x, y in zip(vec, eta)), Fraction(0))

    start = (list(A1.initial), list(A2.initial))
    basis: list = []
    queue = deque([start])
    while queue:
        x1, x2 = queue.popleft()
        if not _insert(basis, x1 + x2):
            continue
        if value(x1, A1.final) != value(x2, A2.final):
            return False
        for a in letters:
            queue.append((step(x1, m1[a], d1), step(x2, m2[a], d2)))
    return True
