"""Finitely supported chains on tuples of points.

A degree-n chain is a finite linear combination, with Fraction coefficients,
of nondegenerate (n+1)-tuples: tuples with no two equal neighbours.  Points
are any hashable values; operations that need a metric take a ``space``
exposing ``distance(x, y)`` and ``length(x)`` (every ``Group`` does).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .groups import Group


class ChainError(ValueError):
    pass


def is_degenerate(t: tuple) -> bool:
    return any(t[j] == t[j + 1] for j in range(len(t) - 1))


class Chain:
    """An immutable sparse chain of a fixed degree."""

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[tuple, object] | None = None):
        if degree < 0:
            raise ChainError("degree must be >= 0")
        self.degree = degree
        clean: dict[tuple, Fraction] = {}
        for t, c in (terms or {}).items():
            t = tuple(t)
            if len(t) != degree + 1:
                raise ChainError(f"tuple {t!r} does not have degree {degree}")
            if is_degenerate(t):
                raise ChainError(f"tuple {t!r} is degenerate")
            c = Fraction(c)
            if c:
                clean[t] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def collect(cls, degree: int, pairs: Iterable[tuple[tuple, object]]) -> "Chain":
        """Sum (tuple, coefficient) pairs, projecting degenerate tuples to zero."""
        acc: dict[tuple, Fraction] = {}
        for t, c in pairs:
            if is_degenerate(t):
                continue
            acc[t] = acc.get(t, 0) + c
        out = cls.__new__(cls)
        out.degree = degree
        out._terms = {t: Fraction(c) for t, c in acc.items() if c}
        out._hash = None
        return out

    @classmethod
    def basis(cls, t: Sequence, coeff=1) -> "Chain":
        t = tuple(t)
        return cls(len(t) - 1, {t: coeff})

    @classmethod
    def zero(cls, degree: int) -> "Chain":
        return cls(degree)

    def items(self):
        return self._terms.items()

    def support(self) -> list[tuple]:
        return list(self._terms)

    def points(self) -> set:
        return {x for t in self._terms for x in t}

    def coeff(self, t) -> Fraction:
        return self._terms.get(tuple(t), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check_same(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if other.degree != self.degree:
            raise ChainError(f"degree mismatch: {self.degree} vs {other.degree}")
        return None

    def __add__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return Chain.collect(self.degree, [*self.items(), *other.items()])

    def __sub__(self, other):
        if self._check_same(other) is NotImplemented:
            return NotImplemented
        return Chain.collect(self.degree, [*self.items(), *((t, -c) for t, c in other.items())])

    def __neg__(self):
        return Chain.collect(self.degree, ((t, -c) for t, c in self.items()))

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return Chain.collect(self.degree, ((t, scalar * c) for t, c in self.items()))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            # all zero chains compare equal, whatever their degree
            self._hash = hash((self.degree, frozenset(self._terms.items()))) if self._terms else 0
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"Chain({self.degree}, 0)"
        body = " + ".join(f"{c}*{t}" for t, c in sorted(self._terms.items(), key=repr))
        return f"Chain({self.degree}, {body})"


def chain_sum(degree: int, chains: Iterable[Chain]) -> Chain:
    pairs = []
    for c in chains:
        if c.degree != degree and c:
            raise ChainError(f"degree mismatch: {c.degree} vs {degree}")
        pairs.extend(c.items())
    return Chain.collect(degree, pairs)


# -- boundary and augmentation ------------------------------------------------

def faces(t: tuple) -> list[tuple[int, tuple]]:
    """(sign, face) pairs of the simplicial boundary of one tuple."""
    return [(-1 if j % 2 else 1, t[:j] + t[j + 1:]) for j in range(len(t))]


def boundary(c: Chain) -> Chain:
    """Alternating sum of faces; faces that become degenerate are dropped."""
    if c.degree < 1:
        raise ChainError("boundary needs degree >= 1; use augmentation in degree 0")
    pairs = []
    for t, coeff in c.items():
        for sign, f in faces(t):
            pairs.append((f, sign * coeff))
    return Chain.collect(c.degree - 1, pairs)


def augmentation(c: Chain) -> Fraction:
    if c.degree != 0:
        raise ChainError(f"augmentation is defined in degree 0, got degree {c.degree}")
    return sum((coeff for _, coeff in c.items()), Fraction(0))


def is_reduced(c: Chain) -> bool:
    """Membership in the reduced complex: any chain of degree >= 1, or augmentation 0."""
    return c.degree > 0 or augmentation(c) == 0


# -- norms and control --------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Weight (l(x_0) + ... + l(x_n) + 1)^k."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"polynomial order must be a natural number, got {self.k!r}")

    def weight(self, total_length: int) -> Fraction:
        return Fraction((total_length + 1) ** self.k)


@dataclass(frozen=True)
class Exponential:
    """Weight alpha^(l(x_0) + ... + l(x_n)) with rational alpha > 1."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 1:
            raise ValueError(f"exponential base must exceed 1, got {self.alpha}")

    def weight(self, total_length: int) -> Fraction:
        return self.alpha ** total_length


NormSpec = Polynomial | Exponential


def tuple_length(space, t: tuple) -> int:
    return sum(space.length(x) for x in t)


def weighted_norm(c: Chain, space, spec: NormSpec) -> Fraction:
    """Sum of |coefficient| times the weight of the tuple's total length."""
    return sum((abs(coeff) * spec.weight(tuple_length(space, t)) for t, coeff in c.items()),
               Fraction(0))


def tuple_diameter(space, t: tuple) -> int:
    return max((space.distance(x, y) for x, y in combinations(t, 2)), default=0)


def control_radius(c: Chain, space) -> int:
    """Least R with d(x_i, x_j) <= R on every supported tuple (0 for the zero chain)."""
    return max((tuple_diameter(space, t) for t in c), default=0)


# -- group structure ----------------------------------------------------------

def _check_points(group: Group, c: Chain):
    for x in c.points():
        group.check(x)


def convolve(group: Group, phi: Chain, psi: Chain) -> Chain:
    """(phi * psi)(g) = sum_h phi(h) psi(h^-1 g) on degree-0 chains."""
    if phi.degree != 0 or psi.degree != 0:
        raise ChainError("convolution is defined on degree-0 chains")
    _check_points(group, phi)
    _check_points(group, psi)
    pairs = []
    for (g,), a in phi.items():
        for (h,), b in psi.items():
            pairs.append(((group._mul(g, h),), a * b))
    return Chain.collect(0, pairs)


def delta(g, coeff=1) -> Chain:
    """The degree-0 chain coeff * delta_g."""
    return Chain(0, {(g,): coeff})


def diagonal_action(group: Group, g, c: Chain) -> Chain:
    group.check(g)
    _check_points(group, c)
    return Chain(c.degree, {tuple(group._mul(g, x) for x in t): coeff for t, coeff in c.items()})


# -- random fixtures ----------------------------------------------------------

def random_tuple(rng: random.Random, points: Sequence, degree: int) -> tuple:
    if len(points) < 2 and degree > 0:
        raise ChainError("need at least two points for a nondegenerate tuple")
    t = [rng.choice(points)]
    while len(t) < degree + 1:
        x = rng.choice(points)
        if x != t[-1]:
            t.append(x)
    return tuple(t)


def random_chain(rng: random.Random, points: Sequence, degree: int,
                 terms: int = 4, max_coeff: int = 5, denominators: int = 3) -> Chain:
    """A random chain with small rational coefficients on tuples from ``points``."""
    pairs = []
    for _ in range(terms):
        num = rng.choice([i for i in range(-max_coeff, max_coeff + 1) if i])
        den = rng.randint(1, denominators)
        pairs.append((random_tuple(rng, points, degree), Fraction(num, den)))
    return Chain.collect(degree, pairs)


def random_reduced_chain(rng: random.Random, points: Sequence, degree: int, **kw) -> Chain:
    """Like ``random_chain``; in degree 0 the augmentation is corrected to zero."""
    c = random_chain(rng, points, degree, **kw)
    if degree == 0:
        a = augmentation(c)
        if a:
            c = c - delta(rng.choice(points), a)
    return c


# -- JSON -----------------------------------------------------------------------

def _hashable(v):
    if isinstance(v, list):
        return tuple(_hashable(a) for a in v)
    return v


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(a) for a in v]
    return v


def chain_to_json(c: Chain, group: Group | None = None) -> dict:
    enc = group.element_to_json if group is not None else _plain
    key = group.sort_key if group is not None else None
    items = sorted(c.items(), key=(lambda it: [key(x) for x in it[0]]) if key else (lambda it: repr(it[0])))
    out = {"degree": c.degree,
           "terms": [{"tuple": [enc(x) for x in t], "coeff": str(coeff)} for t, coeff in items]}
    if group is not None:
        out["group"] = group.to_json()
    return out


def chain_from_json(data: Mapping, group: Group | None = None) -> Chain:
    try:
        degree = int(data["degree"])
        terms = data["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ChainError(f"malformed chain JSON: {exc}") from None
    dec = group.element_from_json if group is not None else _hashable
    pairs = {}
    for term in terms:
        t = tuple(dec(x) for x in term["tuple"])
        if group is not None:
            for x in t:
                group.check(x)
        try:
            coeff = Fraction(str(term.get("coeff", "1")))
        except ValueError:
            raise ChainError(f"bad coefficient {term.get('coeff')!r}") from None
        pairs[t] = pairs.get(t, 0) + coeff
    return Chain(degree, pairs)
