"""Point maps, induced chain maps and the elementary homotopy H(f, f')."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping

from .chains import Chain, ChainError, boundary
from .groups import Group


class MapDomainError(ValueError):
    """A table-backed map was evaluated outside its domain."""


class PointMap:
    """A total map between point sets, given by a rule or by a finite table."""

    def __init__(self, rule: Callable[[Hashable], Hashable] | None = None,
                 table: Mapping | None = None, name: str = "map"):
        if (rule is None) == (table is None):
            raise ValueError("give exactly one of rule or table")
        self._rule = rule
        self._table = dict(table) if table is not None else None
        self.name = name

    @classmethod
    def from_table(cls, table: Mapping, name: str = "table") -> "PointMap":
        return cls(table=table, name=name)

    @classmethod
    def identity(cls) -> "PointMap":
        return cls(lambda x: x, name="identity")

    @classmethod
    def constant(cls, point) -> "PointMap":
        return cls(lambda x: point, name=f"constant({point!r})")

    @classmethod
    def left_translation(cls, group: Group, g) -> "PointMap":
        group.check(g)
        return cls(lambda x: group._mul(g, x), name=f"translate({g!r})")

    @property
    def domain(self):
        return None if self._table is None else set(self._table)

    def __call__(self, x):
        if self._table is not None:
            try:
                return self._table[x]
            except KeyError:
                raise MapDomainError(f"{x!r} is outside the domain of {self.name}") from None
        return self._rule(x)

    def then(self, other: "PointMap") -> "PointMap":
        """The composite ``other . self``."""
        return PointMap(lambda x: other(self(x)), name=f"{other.name}.{self.name}")

    def __repr__(self):
        return f"PointMap({self.name})"


def pushforward(f: PointMap, c: Chain) -> Chain:
    """f_*(x_0, ..., x_n) = (f(x_0), ..., f(x_n)), degenerate images dropped."""
    cache = {}

    def img(x):
        if x not in cache:
            cache[x] = f(x)
        return cache[x]

    return Chain.collect(c.degree, ((tuple(img(x) for x in t), coeff) for t, coeff in c.items()))


def homotopy_terms(a: tuple, b: tuple) -> list[tuple[int, tuple]]:
    """Signed tuples (a_0..a_j, b_j..b_n) for j = 0..n, given image tuples a = f(t), b = f'(t)."""
    return [(-1 if j % 2 else 1, a[:j + 1] + b[j:]) for j in range(len(a))]


def elementary_homotopy(f: PointMap, fp: PointMap, c: Chain) -> Chain:
    """H(f, f') on a chain; raises the degree by one."""
    pairs = []
    for t, coeff in c.items():
        a = tuple(f(x) for x in t)
        b = tuple(fp(x) for x in t)
        if a == b:
            continue
        for sign, u in homotopy_terms(a, b):
            pairs.append((u, sign * coeff))
    return Chain.collect(c.degree + 1, pairs)


@dataclass
class IdentityCheck:
    ok: bool
    discrepancy: Chain

    def __bool__(self):
        return self.ok


def verify_homotopy_identity(f: PointMap, fp: PointMap, c: Chain,
                             homotopy: Callable[[PointMap, PointMap, Chain], Chain] = elementary_homotopy,
                             ) -> IdentityCheck:
    """Check H d + d H = f'_* - f_* exactly on ``c``.

    In degree 0 the term H d is absent; the identity then holds on all of C_0
    with C_{-1} = 0, in particular on the augmentation kernel.
    """
    lhs = boundary(homotopy(f, fp, c))
    if c.degree > 0:
        lhs = lhs + homotopy(f, fp, boundary(c))
    rhs = pushforward(fp, c) - pushforward(f, c)
    diff = lhs - rhs
    return IdentityCheck(diff.is_zero(), diff)


def quasi_lipschitz_constant(f: PointMap, source, target, points: Iterable) -> Fraction:
    """max d_target(f x, f y) / (d_source(x, y) + 1) over pairs of ``points``."""
    pts = list(points)
    imgs = [f(x) for x in pts]
    best = Fraction(0)
    for i, x in enumerate(pts):
        for j in range(i + 1, len(pts)):
            r = Fraction(target.distance(imgs[i], imgs[j]), source.distance(x, pts[j]) + 1)
            if r > best:
                best = r
    return best


def sup_distance(f: PointMap, fp: PointMap, space, points: Iterable) -> int:
    """max d(f x, f' x); bounded exactly when f and f' are close."""
    return max((space.distance(f(x), fp(x)) for x in points), default=0)


def point_map_from_json(data: Mapping, group: Group) -> PointMap:
    kind = data.get("kind")
    if kind == "identity":
        return PointMap.identity()
    if kind == "constant":
        p = group.element_from_json(data.get("point", group.element_to_json(group.identity)))
        return PointMap.constant(p)
    if kind == "translate":
        return PointMap.left_translation(group, group.element_from_json(data["by"]))
    if kind == "table":
        table = {group.element_from_json(x): group.element_from_json(y) for x, y in data["table"]}
        return PointMap.from_table(table)
    if kind == "combing_stage":
        from .combing import combing_from_json

        comb = combing_from_json(data["combing"])
        n = int(data["n"])
        return PointMap(lambda x: comb.stage(n, x), name=f"f_{n}")
    raise ChainError(f"unknown map kind {kind!r}")
