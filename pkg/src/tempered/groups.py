"""Finitely generated groups with word metrics.

Elements are plain hashable values:

* free group F_r: a freely reduced tuple of nonzero ints, ``j`` for s(j) and
  ``-j`` for s(j)^-1;
* free abelian group Z^n: a tuple of ints;
* finite group given by a table: an int index.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from collections import deque
from math import gcd
from typing import Hashable, Iterable, Sequence

Element = Hashable


class GroupError(ValueError):
    """Raised for malformed group data or elements from another group."""


class Group(ABC):
    """A finitely generated group with a left-invariant word metric."""

    identity: Element

    @abstractmethod
    def contains(self, g) -> bool: ...

    @abstractmethod
    def _mul(self, g, h): ...

    @abstractmethod
    def inverse(self, g): ...

    @abstractmethod
    def word_length(self, g) -> int: ...

    @abstractmethod
    def ball(self, radius: int) -> list: ...

    @abstractmethod
    def generators(self) -> list:
        """The symmetric generating set defining the word metric."""

    @abstractmethod
    def to_json(self) -> dict: ...

    @abstractmethod
    def element_to_json(self, g): ...

    @abstractmethod
    def element_from_json(self, data): ...

    def check(self, g) -> None:
        if not self.contains(g):
            raise GroupError(f"{g!r} is not an element of {self!r}")

    def multiply(self, g, h):
        self.check(g)
        self.check(h)
        return self._mul(g, h)

    def product(self, elements: Iterable) -> Element:
        out = self.identity
        for g in elements:
            out = self._mul(out, g)
        return out

    # metric-space protocol shared with finite metric spaces
    def length(self, g) -> int:
        return self.word_length(g)

    def distance(self, g, h) -> int:
        return self.word_length(self._mul(self.inverse(g), h))

    def sort_key(self, g):
        return (self.word_length(g), g)

    def __eq__(self, other):
        return type(self) is type(other) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))


def free_reduce(word: Iterable[int]) -> tuple:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


class FreeGroup(Group):
    """The free group on s(1), ..., s(r) with the standard word length."""

    def __init__(self, rank: int):
        if not isinstance(rank, int) or rank < 1:
            raise GroupError(f"free group rank must be >= 1, got {rank!r}")
        self.rank = rank
        self.identity = ()

    def __repr__(self):
        return f"FreeGroup({self.rank})"

    def contains(self, g) -> bool:
        if not isinstance(g, tuple):
            return False
        prev = 0
        for a in g:
            if not isinstance(a, int) or a == 0 or abs(a) > self.rank or a == -prev:
                return False
            prev = a
        return True

    def _mul(self, g, h):
        # cancel the overlap between the end of g and the start of h
        i = 0
        n = min(len(g), len(h))
        while i < n and g[len(g) - 1 - i] == -h[i]:
            i += 1
        return g[: len(g) - i] + h[i:]

    def inverse(self, g):
        return tuple(-a for a in reversed(g))

    def word_length(self, g) -> int:
        return len(g)

    def distance(self, g, h) -> int:
        k = 0
        n = min(len(g), len(h))
        while k < n and g[k] == h[k]:
            k += 1
        return len(g) + len(h) - 2 * k

    def letters(self) -> list[int]:
        return [j for i in range(1, self.rank + 1) for j in (-i, i)]

    def generator(self, j: int) -> tuple:
        """s(j) for 1 <= j <= r, s(|j|)^-1 for negative j."""
        if j == 0 or abs(j) > self.rank:
            raise GroupError(f"no generator {j} in {self!r}")
        return (j,)

    def generators(self) -> list:
        return [(a,) for a in self.letters()]

    def ball(self, radius: int) -> list:
        if radius < 0:
            return []
        letters = self.letters()
        layer = [()]
        out = [()]
        for _ in range(radius):
            layer = [w + (a,) for w in layer for a in letters if not w or w[-1] != -a]
            layer.sort()
            out.extend(layer)
        return out

    def to_json(self) -> dict:
        return {"family": "free", "rank": self.rank}

    def element_to_json(self, g):
        return list(g)

    def element_from_json(self, data):
        word = tuple(data)
        for a in word:
            if not isinstance(a, int) or a == 0 or abs(a) > self.rank:
                raise GroupError(f"bad letter {a!r} for {self!r}")
        return free_reduce(word)


class FreeAbelianGroup(Group):
    """Z^n, by default with the standard basis and its negatives as generators.

    A custom generating set (e.g. {±2, ±3} in Z) gives a different but
    quasi-isometric word metric; lengths are then found by breadth-first search.
    """

    _SEARCH_CAP = 64

    def __init__(self, rank: int, generators: Sequence[Sequence[int]] | None = None):
        if not isinstance(rank, int) or rank < 1:
            raise GroupError(f"free abelian rank must be >= 1, got {rank!r}")
        self.rank = rank
        self.identity = (0,) * rank
        self._custom = generators is not None
        if generators is None:
            gens = []
            for i in range(rank):
                e = [0] * rank
                e[i] = 1
                gens.append(tuple(e))
        else:
            gens = [tuple(int(v) for v in s) for s in generators]
            for s in gens:
                if len(s) != rank:
                    raise GroupError(f"generator {s} has wrong rank")
                if s == self.identity:
                    raise GroupError("the identity is not allowed as a generator")
        closed = set(gens) | {self.inverse(s) for s in gens}
        self._gens = sorted(closed)
        self._input_gens = gens
        if self._custom:
            self._lengths = {self.identity: 0}
            self._frontier = [self.identity]
            self._radius = 0
            self._check_generates()

    def __repr__(self):
        if self._custom:
            return f"FreeAbelianGroup({self.rank}, generators={self._input_gens})"
        return f"FreeAbelianGroup({self.rank})"

    def _check_generates(self):
        if self.rank == 1:
            if gcd(*(s[0] for s in self._gens)) != 1:
                raise GroupError("generators do not generate Z")
            return
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            self._grow_until(tuple(e), self._SEARCH_CAP)

    def _grow_until(self, g, cap):
        while g not in self._lengths:
            if self._radius >= cap:
                raise GroupError(f"{g} not reached within radius {cap}; generators may not generate")
            self._grow()

    def _grow(self):
        nxt = []
        r = self._radius + 1
        for x in self._frontier:
            for s in self._gens:
                y = self._mul(x, s)
                if y not in self._lengths:
                    self._lengths[y] = r
                    nxt.append(y)
        self._frontier = nxt
        self._radius = r

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == self.rank
            and all(isinstance(v, int) for v in g)
        )

    def _mul(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g):
        return tuple(-a for a in g)

    def word_length(self, g) -> int:
        if not self._custom:
            return sum(abs(a) for a in g)
        # lengths grow at least linearly in the sup norm, so this cap is safe
        self._grow_until(g, 10 * (sum(abs(a) for a in g) + 1))
        return self._lengths[g]

    def generators(self) -> list:
        return list(self._gens)

    def ball(self, radius: int) -> list:
        if radius < 0:
            return []
        if self._custom:
            while self._radius < radius:
                self._grow()
            pts = [g for g, r in self._lengths.items() if r <= radius]
        else:
            rng = range(-radius, radius + 1)
            pts = [g for g in itertools.product(rng, repeat=self.rank)
                   if sum(abs(a) for a in g) <= radius]
        pts.sort(key=self.sort_key)
        return pts

    def to_json(self) -> dict:
        out = {"family": "abelian", "rank": self.rank}
        if self._custom:
            out["generators"] = [list(s) for s in self._input_gens]
        return out

    def element_to_json(self, g):
        return list(g)

    def element_from_json(self, data):
        if isinstance(data, int) and self.rank == 1:
            data = [data]
        g = tuple(data)
        if not self.contains(g):
            raise GroupError(f"bad element {data!r} for {self!r}")
        return g


class FiniteGroup(Group):
    """A finite group given by its multiplication table.

    ``table[i][j]`` is the index of the product of elements i and j.  The
    generator list is closed under inverses here; word length is the
    breadth-first distance from the identity in the resulting Cayley graph.
    """

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[int]):
        n = len(table)
        if n == 0:
            raise GroupError("empty multiplication table")
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        for row in self.table:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise GroupError("multiplication table must be square with entries in range")
        self.order = n
        ids = [e for e in range(n)
               if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if len(ids) != 1:
            raise GroupError("multiplication table has no two-sided identity")
        self.identity = ids[0]
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise GroupError(f"table is not associative at ({a},{b},{c})")
        inv = []
        for a in range(n):
            cands = [b for b in range(n) if t[a][b] == self.identity]
            if len(cands) != 1 or t[cands[0]][a] != self.identity:
                raise GroupError(f"element {a} has no inverse")
            inv.append(cands[0])
        self._inv = tuple(inv)
        gens = [int(s) for s in generators]
        if any(not 0 <= s < n for s in gens):
            raise GroupError("generator index out of range")
        self._input_gens = gens
        self._gens = sorted(set(gens) | {inv[s] for s in gens})
        dist = {self.identity: 0}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for s in self._gens:
                y = t[x][s]
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        if len(dist) != n:
            raise GroupError("generators do not generate the group")
        self._lengths = tuple(dist[a] for a in range(n))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(table, [1 % n] if n > 1 else [])

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, generators={self._input_gens})"

    def contains(self, g) -> bool:
        return isinstance(g, int) and not isinstance(g, bool) and 0 <= g < self.order

    def _mul(self, g, h):
        return self.table[g][h]

    def inverse(self, g):
        return self._inv[g]

    def word_length(self, g) -> int:
        return self._lengths[g]

    def generators(self) -> list:
        return list(self._gens)

    def elements(self) -> list:
        return list(range(self.order))

    def ball(self, radius: int) -> list:
        pts = [g for g in range(self.order) if self._lengths[g] <= radius]
        pts.sort(key=self.sort_key)
        return pts

    def to_json(self) -> dict:
        return {"family": "finite", "table": [list(r) for r in self.table],
                "generators": list(self._input_gens)}

    def element_to_json(self, g):
        return g

    def element_from_json(self, data):
        if not self.contains(data):
            raise GroupError(f"bad element {data!r} for {self!r}")
        return data


def group_from_json(data: dict) -> Group:
    if not isinstance(data, dict) or "family" not in data:
        raise GroupError(f"group spec needs a 'family' key: {data!r}")
    family = data["family"]
    if family == "free":
        return FreeGroup(data.get("rank"))
    if family == "abelian":
        return FreeAbelianGroup(data.get("rank"), data.get("generators"))
    if family == "finite":
        if "table" not in data or "generators" not in data:
            raise GroupError("finite group spec needs 'table' and 'generators'")
        return FiniteGroup(data["table"], data["generators"])
    raise GroupError(f"unknown group family {family!r}")
