"""Exact rational linear algebra: sparse matrices, incremental echelon bases,
Gauss-Jordan inversion.

Vectors are sparse ``dict[int, Fraction]`` without stored zeros. Everything is
exact; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vector = dict  # dict[int, Fraction], no zero values


class RankDeficientError(ArithmeticError):
    pass


def frac_str(x: Fraction) -> str:
    """Render as ``num/den`` in lowest terms with a positive denominator."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def dense_to_vec(values: Sequence) -> Vector:
    return {i: Fraction(v) for i, v in enumerate(values) if v != 0}


def vec_to_dense(vec: Mapping[int, Fraction], dim: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(vec.get(i, 0)) for i in range(dim))


def vec_dot(x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Fraction:
    if len(x) > len(y):
        x, y = y, x
    total = Fraction(0)
    for i, v in x.items():
        w = y.get(i)
        if w is not None:
            total += v * w
    return total


def vec_restrict(vec: Mapping[int, Fraction], support) -> Vector:
    return {i: v for i, v in vec.items() if i in support}


class SparseMatrix:
    """Immutable sparse rational matrix stored row-wise."""

    __slots__ = ("shape", "rows", "_triples")

    def __init__(self, shape: tuple[int, int], entries: Iterable[tuple[int, int, object]] = ()):
        nrows, ncols = shape
        rows: dict[int, dict[int, Fraction]] = {}
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside shape {shape}")
            v = Fraction(v)
            if v == 0:
                continue
            row = rows.setdefault(i, {})
            row[j] = row.get(j, 0) + v
            if row[j] == 0:
                del row[j]
                if not row:
                    del rows[i]
        self.shape = (nrows, ncols)
        self.rows = rows
        self._triples = None

    @classmethod
    def from_rows(cls, shape, rows: Mapping[int, Mapping[int, Fraction]]) -> "SparseMatrix":
        m = cls.__new__(cls)
        m.shape = tuple(shape)
        m.rows = {i: dict(r) for i, r in rows.items() if r}
        m._triples = None
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        return cls((nrows, ncols), ((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r)))

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls((n, n), ((i, i, 1) for i in range(n)))

    @classmethod
    def diagonal(cls, n: int, support: Iterable[int]) -> "SparseMatrix":
        return cls((n, n), ((i, i, 1) for i in support))

    def triples(self) -> tuple[tuple[int, int, Fraction], ...]:
        if self._triples is None:
            self._triples = tuple(
                (i, j, self.rows[i][j]) for i in sorted(self.rows) for j in sorted(self.rows[i])
            )
        return self._triples

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def get(self, i: int, j: int) -> Fraction:
        return self.rows.get(i, {}).get(j, Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.shape[1] for _ in range(self.shape[0])]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    @property
    def T(self) -> "SparseMatrix":
        cols: dict[int, dict[int, Fraction]] = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                cols.setdefault(j, {})[i] = v
        return SparseMatrix.from_rows((self.shape[1], self.shape[0]), cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.triples() == other.triples()

    def __hash__(self):
        return hash((self.shape, self.triples()))

    def __repr__(self):
        return f"SparseMatrix({self.shape}, nnz={self.nnz})"

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.shape, self.triples() + other.triples())

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = {}
        for i, row in self.rows.items():
            acc = vec_matmul(row, other)
            if acc:
                out[i] = acc
        return SparseMatrix.from_rows((self.shape[0], other.shape[1]), out)

    def mask(self, rows=None, cols=None) -> "SparseMatrix":
        """Zero every entry outside ``rows`` x ``cols`` (``None`` keeps all)."""
        out = {}
        for i, row in self.rows.items():
            if rows is not None and i not in rows:
                continue
            kept = row if cols is None else {j: v for j, v in row.items() if j in cols}
            if kept:
                out[i] = dict(kept)
        return SparseMatrix.from_rows(self.shape, out)

    def row_sums(self) -> dict[int, Fraction]:
        return {i: sum(r.values(), Fraction(0)) for i, r in self.rows.items()}


def vec_matmul(vec: Mapping[int, Fraction], mat: SparseMatrix) -> Vector:
    """Row vector times matrix."""
    acc: dict[int, Fraction] = {}
    rows = mat.rows
    for i, v in vec.items():
        row = rows.get(i)
        if row is None:
            continue
        for j, w in row.items():
            acc[j] = acc.get(j, 0) + v * w
    return {j: v for j, v in acc.items() if v != 0}


def matvec(mat: SparseMatrix, vec: Mapping[int, Fraction]) -> Vector:
    """Matrix times column vector."""
    out = {}
    for i, row in mat.rows.items():
        s = vec_dot(row, vec)
        if s != 0:
            out[i] = s
    return out


class EchelonBasis:
    """Incrementally maintained reduced row-echelon form.

    The pivot of a new row is its first nonzero column, so the resulting
    echelon form depends only on the sequence of inserted vectors.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, Fraction]) -> Vector:
        v = dict(vec)
        for col, prow in self.pivots.items():
            c = v.get(col)
            if c is None:
                continue
            for j, w in prow.items():
                nv = v.get(j, 0) - c * w
                if nv == 0:
                    v.pop(j, None)
                else:
                    v[j] = nv
        return v

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert ``vec``; return whether it increased the rank."""
        r = self.reduce(vec)
        if not r:
            return False
        col = min(r)
        inv = 1 / r[col]
        r = {j: v * inv for j, v in r.items()}
        for prow in self.pivots.values():
            c = prow.get(col)
            if c is None:
                continue
            for j, w in r.items():
                nv = prow.get(j, 0) - c * w
                if nv == 0:
                    prow.pop(j, None)
                else:
                    prow[j] = nv
        self.pivots[col] = r
        return True


def gauss_inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square matrix by Gauss-Jordan elimination over the rationals."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise RankDeficientError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                pr = a[col]
                a[r] = [x - f * y for x, y in zip(a[r], pr)]
    return [row[n:] for row in a]


def dense_rank(matrix: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in r] for r in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def right_inverse(F: SparseMatrix) -> SparseMatrix:
    """``F^T (F F^T)^{-1}`` for a full-row-rank ``F``; ``F @ right_inverse(F)`` is the identity."""
    gram_inv = gram_inverse(F)
    s, q = F.shape
    cols = F.T  # q x s
    out = {}
    for j, row in cols.rows.items():
        acc: dict[int, Fraction] = {}
        for i, v in row.items():
            for c, g in enumerate(gram_inv[i]):
                if g:
                    acc[c] = acc.get(c, 0) + v * g
        acc = {c: v for c, v in acc.items() if v != 0}
        if acc:
            out[j] = acc
    return SparseMatrix.from_rows((q, s), out)


def gram_matrix(F: SparseMatrix) -> list[list[Fraction]]:
    s = F.shape[0]
    rows = [F.rows.get(i, {}) for i in range(s)]
    g = [[Fraction(0)] * s for _ in range(s)]
    for i in range(s):
        for j in range(i, s):
            g[i][j] = g[j][i] = vec_dot(rows[i], rows[j])
    return g


def gram_inverse(F: SparseMatrix) -> list[list[Fraction]]:
    try:
        return gauss_inverse(gram_matrix(F))
    except RankDeficientError as exc:
        raise RankDeficientError("F does not have full row rank") from exc


def dense_matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * ncols
        for t in range(inner):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(ncols):
                    if brow[j]:
                        acc[j] += x * brow[j]
        out.append(acc)
    return out
