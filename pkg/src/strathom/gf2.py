"""Exact linear algebra over GF(2) on bit-packed rows.

Rows and vectors are Python ints used as bitsets; bit ``i`` is coordinate
(column) ``i``.  Elimination always picks the lowest available column as the
next pivot, so echelon bases and coset representatives are reproducible
across runs.  All values are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

from .errors import NotContained


def vector_from_indices(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v |= 1 << i
    return v


def indices_of(v: int) -> List[int]:
    out = []
    i = 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


def parity(v: int) -> int:
    return bin(v).count("1") & 1


@dataclass(frozen=True)
class Gf2Matrix:
    """A rows x cols matrix over GF(2); ``row_bits[r]`` packs row r."""

    rows: int
    cols: int
    row_bits: tuple

    def __post_init__(self):
        if len(self.row_bits) != self.rows:
            raise ValueError("row count does not match row data")
        mask = (1 << self.cols) - 1
        for r in self.row_bits:
            if r & ~mask:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_rows(cls, rows: Sequence[int], cols: int) -> "Gf2Matrix":
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], cols: Optional[int] = None) -> "Gf2Matrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        bits = [vector_from_indices(i for i, e in enumerate(row) if e & 1) for row in entries]
        return cls(len(entries), cols, tuple(bits))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, tuple([0] * rows))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, r: int, c: int) -> int:
        return (self.row_bits[r] >> c) & 1

    def mul_vec(self, x: int) -> int:
        """Matrix-vector product; x and the result are bit-packed vectors."""
        out = 0
        for i, row in enumerate(self.row_bits):
            if parity(row & x):
                out |= 1 << i
        return out

    def mul_mat(self, other: "Gf2Matrix") -> "Gf2Matrix":
        """self @ other: row i of the product is XOR of other's rows picked by row i."""
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        prod = []
        for row in self.row_bits:
            acc = 0
            for j in indices_of(row):
                acc ^= other.row_bits[j]
            prod.append(acc)
        return Gf2Matrix(self.rows, other.cols, tuple(prod))


def vstack(mats: Sequence[Gf2Matrix]) -> Gf2Matrix:
    cols = {m.cols for m in mats}
    if len(cols) > 1:
        raise ValueError("column counts differ")
    c = cols.pop() if cols else 0
    rows: List[int] = []
    for m in mats:
        rows.extend(m.row_bits)
    return Gf2Matrix(len(rows), c, tuple(rows))


def _echelon(rows: Sequence[int]) -> tuple[List[int], List[int]]:
    """Reduced row-echelon form: returns (nonzero rows, pivot columns), pivots increasing."""
    basis: List[int] = []   # basis[i] has pivot pivots[i]
    pivots: List[int] = []
    for row in rows:
        v = row
        for b, p in zip(basis, pivots):
            if (v >> p) & 1:
                v ^= b
        if v == 0:
            continue
        p = (v & -v).bit_length() - 1
        # back-substitute into existing rows to keep the form reduced
        for i, b in enumerate(basis):
            if (b >> p) & 1:
                basis[i] = b ^ v
        pos = 0
        while pos < len(pivots) and pivots[pos] < p:
            pos += 1
        basis.insert(pos, v)
        pivots.insert(pos, p)
    return basis, pivots


def rank(m: Gf2Matrix) -> int:
    return len(_echelon(m.row_bits)[0])


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^ambient_dim held as a reduced echelon basis."""

    ambient_dim: int
    basis: tuple = field(default=())
    pivots: tuple = field(default=())

    @classmethod
    def from_vectors(cls, vectors: Iterable[int], ambient_dim: int) -> "Subspace":
        basis, pivots = _echelon(list(vectors))
        return cls(ambient_dim, tuple(basis), tuple(pivots))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_vectors((1 << i for i in range(ambient_dim)), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: int) -> int:
        """Canonical coset representative: clear every pivot coordinate of v."""
        for b, p in zip(self.basis, self.pivots):
            if (v >> p) & 1:
                v ^= b
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(list(self.basis) + list(other.basis), self.ambient_dim)


def nullspace(m: Gf2Matrix) -> Subspace:
    """Basis of {x : m x = 0}; dimension is cols - rank(m)."""
    basis, pivots = _echelon(m.row_bits)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    vecs = []
    for c in free_cols:
        v = 1 << c
        # each basis row r with pivot p reads  x_p = sum of x over the row's free columns
        for b, p in zip(basis, pivots):
            if (b >> c) & 1:
                v |= 1 << p
        vecs.append(v)
    return Subspace.from_vectors(vecs, m.cols)


def solve(m: Gf2Matrix, b: int) -> Optional[int]:
    """Any x with m x = b, or None when the system is inconsistent."""
    if b >> m.rows:
        raise ValueError("right-hand side has bits outside the row range")
    # eliminate on rows augmented with the rhs bit placed at column `cols`
    aug = [row | (((b >> i) & 1) << m.cols) for i, row in enumerate(m.row_bits)]
    basis, pivots = _echelon(aug)
    x = 0
    for vec, p in zip(basis, pivots):
        if p == m.cols:
            return None  # 0 = 1 row
        if (vec >> m.cols) & 1:
            x |= 1 << p
    # free variables stay 0; back-substitution is implicit since the form is reduced
    # (pivot rows may still reference free columns, all of which are 0 in x)
    # verify to guard against reduced-form subtleties
    if m.mul_vec(x) != b:  # pragma: no cover - defensive
        raise AssertionError("solver produced an invalid solution")
    return x


def quotient_dim(v: Subspace, w: Subspace) -> int:
    """dim(v/w); raises NotContained unless w is a subspace of v."""
    if v.ambient_dim != w.ambient_dim:
        raise NotContained("ambient dimensions differ")
    if not v.contains_subspace(w):
        raise NotContained("not a subspace of the ambient space")
    return v.dim - w.dim


def quotient_basis(v: Subspace, w: Subspace) -> List[int]:
    """Coset representatives extending w to v, each reduced against w."""
    if not v.contains_subspace(w):
        raise NotContained("not a subspace of the ambient space")
    reps: List[int] = []
    current = list(w.basis)
    for b in v.basis:
        cand = Subspace.from_vectors(current + [b], v.ambient_dim)
        if cand.dim > len(current):
            reps.append(w.reduce(b))
            current.append(b)
    return reps
