"""Rips complexes of finite metric spaces and their rational homology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .groups import Group
from .linalg import RatMatrix, homology_dims


class MetricError(ValueError):
    pass


class FiniteMetricSpace:
    """Points with an exact distance table; the metric axioms are checked on construction.

    Points are addressed by index; ``labels`` keeps the caller's names.  The
    base point for ``length`` is point 0.
    """

    def __init__(self, labels: Sequence[Hashable], dist: Sequence[Sequence[object]]):
        n = len(labels)
        if n == 0:
            raise MetricError("a metric space needs at least one point")
        if len(dist) != n or any(len(row) != n for row in dist):
            raise MetricError("distance table must be |points| x |points|")
        d = [[Fraction(v) for v in row] for row in dist]
        for i in range(n):
            if d[i][i] != 0:
                raise MetricError(f"d({i},{i}) != 0")
            for j in range(n):
                if d[i][j] != d[j][i]:
                    raise MetricError(f"distance not symmetric at ({i},{j})")
                if i != j and d[i][j] <= 0:
                    raise MetricError(f"distinct points {i},{j} at distance {d[i][j]}")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k]:
                        raise MetricError(f"triangle inequality fails for ({i},{j},{k})")
        self.labels = list(labels)
        self.dist = d

    @classmethod
    def from_group_ball(cls, group: Group, radius: int) -> "FiniteMetricSpace":
        """ball(radius) of a group with the restricted word metric (identity first)."""
        pts = group.ball(radius)
        dist = [[group.distance(x, y) for y in pts] for x in pts]
        return cls([group.element_to_json(x) for x in pts], dist)

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteMetricSpace":
        try:
            pts = data["points"]
            dist = [[Fraction(str(v)) for v in row] for row in data["dist"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MetricError(f"malformed metric space JSON: {exc}") from None
        return cls(pts, dist)

    def to_json(self) -> dict:
        return {"points": self.labels,
                "dist": [[str(v) if v.denominator != 1 else int(v) for v in row] for row in self.dist]}

    def __len__(self):
        return len(self.labels)

    def distance(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def length(self, i: int) -> Fraction:
        return self.dist[i][0]


@dataclass
class SimplicialComplex:
    """Simplices by dimension, each a sorted tuple of vertex indices."""

    n_vertices: int
    simplices: list  # simplices[d] is a sorted list of d-simplices

    @property
    def dimension(self) -> int:
        return max((d for d, s in enumerate(self.simplices) if s), default=-1)

    def all_simplices(self) -> set:
        return {s for level in self.simplices for s in level}

    def is_face_closed(self) -> bool:
        present = self.all_simplices()
        for level in self.simplices[1:]:
            for s in level:
                for j in range(len(s)):
                    if s[:j] + s[j + 1:] not in present:
                        return False
        return True

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices,
                "simplices": [[list(s) for s in level] for level in self.simplices]}


def build_rips(space: FiniteMetricSpace, radius, max_dim: int) -> SimplicialComplex:
    """All vertex sets of diameter <= radius with at most max_dim + 1 vertices."""
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError("radius must be >= 0")
    n = len(space)
    if max_dim < 0 or max_dim > n - 1:
        raise ValueError(f"max_dim must lie in 0..{n - 1}")
    nbrs = [[j for j in range(i + 1, n) if space.dist[i][j] <= radius] for i in range(n)]
    levels = [[(i,) for i in range(n)]]
    for _ in range(max_dim):
        nxt = []
        for s in levels[-1]:
            for j in nbrs[s[-1]]:
                if all(space.dist[v][j] <= radius for v in s[:-1]):
                    nxt.append(s + (j,))
        levels.append(sorted(nxt))
    return SimplicialComplex(n, levels)


def boundary_matrices(K: SimplicialComplex) -> list[RatMatrix]:
    """d_0, ..., d_top with alternating-sign incidences in sorted vertex order."""
    index = [{s: i for i, s in enumerate(level)} for level in K.simplices]
    mats = [RatMatrix(0, len(K.simplices[0]))]
    for d in range(1, len(K.simplices)):
        ents = {}
        for col, s in enumerate(K.simplices[d]):
            for j in range(len(s)):
                row = index[d - 1][s[:j] + s[j + 1:]]
                ents[row, col] = -1 if j % 2 else 1
        mats.append(RatMatrix(len(K.simplices[d - 1]), len(K.simplices[d]), ents))
    return mats


def rips_homology(K: SimplicialComplex) -> list[int]:
    """[dim H_0, ..., dim H_max_dim]; the top entry ignores simplices above the cap."""
    if not K.is_face_closed():
        raise ValueError("complex is not closed under faces")
    return homology_dims(boundary_matrices(K))


def squares_to_zero(K: SimplicialComplex) -> bool:
    mats = boundary_matrices(K)
    return all((mats[d] @ mats[d + 1]).is_zero() for d in range(len(mats) - 1))
