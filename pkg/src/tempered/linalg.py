"""Exact sparse linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class ComplexError(ValueError):
    """Differentials that do not compose or do not square to zero."""


class RatMatrix:
    """A sparse rows x cols matrix with Fraction entries; zeros are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix shape must be non-negative")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            v = Fraction(v)
            if v:
                self.entries[i, j] = v

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]]) -> "RatMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        ents = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    ents[i, j] = v
        return cls(rows, cols, ents)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ComplexError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                acc[i, j] = acc.get((i, j), 0) + a * b
        return RatMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[i, j, str(v)] for (i, j), v in sorted(self.entries.items())]}


def rank(m: RatMatrix) -> int:
    """Rank by Gaussian elimination.

    Columns are processed left to right; the pivot is the first remaining row
    (in row order) with a nonzero entry in that column.
    """
    rows: dict[int, dict[int, Fraction]] = {}
    for (i, j), v in m.entries.items():
        rows.setdefault(i, {})[j] = v
    by_col: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            by_col.setdefault(j, set()).add(i)
    r = 0
    for j in range(m.cols):
        cand = by_col.get(j)
        if not cand:
            continue
        p = min(cand)
        prow = rows.pop(p)
        for jj in prow:
            by_col[jj].discard(p)
        pv = prow[j]
        for i in sorted(by_col[j]):
            row = rows[i]
            factor = row[j] / pv
            for jj, v in prow.items():
                nv = row.get(jj, 0) - factor * v
                if nv:
                    if jj not in row:
                        by_col.setdefault(jj, set()).add(i)
                    row[jj] = nv
                elif jj in row:
                    del row[jj]
                    by_col[jj].discard(i)
        r += 1
    return r


def homology_dims(boundaries: Sequence[RatMatrix]) -> list[int]:
    """Homology dimensions of a finite chain complex.

    ``boundaries[k]`` is d_k: C_k -> C_{k-1} with shape (dim C_{k-1}, dim C_k);
    ``boundaries[0]`` has zero rows.  Returns [dim H_0, ..., dim H_N].
    """
    if not boundaries:
        return []
    if boundaries[0].rows != 0:
        raise ComplexError("d_0 must map into the zero space")
    for k in range(len(boundaries) - 1):
        d, d_next = boundaries[k], boundaries[k + 1]
        if d.cols != d_next.rows:
            raise ComplexError(f"d_{k} and d_{k + 1} are not composable")
        if not (d @ d_next).is_zero():
            raise ComplexError(f"d_{k} d_{k + 1} != 0")
    ranks = [rank(d) for d in boundaries] + [0]
    return [boundaries[k].cols - ranks[k] - ranks[k + 1] for k in range(len(boundaries))]


def cohomology_dims(coboundaries: Sequence[RatMatrix]) -> list[int]:
    """Cohomology of 0 -> C^0 -> C^1 -> ... from d^k: C^k -> C^{k+1}.

    ``coboundaries[k]`` has shape (dim C^{k+1}, dim C^k).  Returns
    [dim H^0, ..., dim H^N] for N = len(coboundaries) - 1; the last
    coboundary is only needed for its rank.
    """
    for k in range(len(coboundaries) - 1):
        d, d_next = coboundaries[k], coboundaries[k + 1]
        if d.rows != d_next.cols:
            raise ComplexError(f"d^{k} and d^{k + 1} are not composable")
        if not (d_next @ d).is_zero():
            raise ComplexError(f"d^{k + 1} d^{k} != 0")
    ranks = [0] + [rank(d) for d in coboundaries]
    return [d.cols - ranks[k + 1] - ranks[k] for k, d in enumerate(coboundaries)]


def nullity(m: RatMatrix) -> int:
    return m.cols - rank(m)


def stack(blocks: Iterable[RatMatrix]) -> RatMatrix:
    """Vertical concatenation of matrices with equal column counts."""
    blocks = list(blocks)
    cols = blocks[0].cols
    ents = {}
    off = 0
    for b in blocks:
        if b.cols != cols:
            raise ValueError("column counts differ")
        for (i, j), v in b.entries.items():
            ents[off + i, j] = v
        off += b.rows
    return RatMatrix(off, cols, ents)
