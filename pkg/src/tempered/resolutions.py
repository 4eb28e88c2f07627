"""Group cohomology from the bar complex and from the tree resolution of F_r.

Bar cochains of arity n are functions G^n -> Q (arity 0: a single scalar).
For free groups (and Z = F_1) the Cayley graph is a tree, which gives the
two-term free resolution

    0 -> Q[G]^r --b1--> Q[G] --b0--> Q -> 0,

with b0 the augmentation and b1(phi_1, ..., phi_r)(g) = sum_j phi_j(g) - phi_j(g s(j)).
The map ``sigma`` is the explicit splitting built by induction on word length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .chains import Chain, ChainError, augmentation, delta
from .groups import FiniteGroup, FreeAbelianGroup, FreeGroup, Group
from .linalg import RatMatrix, cohomology_dims


class CochainDomainError(ValueError):
    """A table-backed cochain was evaluated outside its table."""


class ResourceCapError(RuntimeError):
    pass


class UnsupportedGroupError(ValueError):
    pass


class Cochain:
    """An arity-n cochain, backed by a finite table or by a rule."""

    def __init__(self, arity: int, table: Mapping[tuple, object] | None = None,
                 rule: Callable[..., object] | None = None):
        if (table is None) == (rule is None):
            raise ValueError("give exactly one of table or rule")
        self.arity = arity
        self.rule = rule
        self.table = None
        if table is not None:
            self.table = {}
            for key, v in table.items():
                key = tuple(key)
                if len(key) != arity:
                    raise ValueError(f"key {key!r} does not have arity {arity}")
                self.table[key] = Fraction(v)

    @classmethod
    def scalar(cls, value) -> "Cochain":
        return cls(0, {(): value})

    @classmethod
    def tabulate(cls, arity: int, points: Sequence, rule: Callable[..., object]) -> "Cochain":
        return cls(arity, {t: rule(*t) for t in itertools.product(points, repeat=arity)})

    def __call__(self, *args) -> Fraction:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        if self.rule is not None:
            return Fraction(self.rule(*args))
        try:
            return self.table[args]
        except KeyError:
            raise CochainDomainError(f"{args!r} is outside the cochain table") from None

    def points(self) -> set:
        if self.table is None:
            return set()
        return {g for key in self.table for g in key}

    def is_zero(self) -> bool:
        if self.table is None:
            raise ValueError("cannot decide vanishing of a rule-backed cochain")
        return not any(self.table.values())


def _coboundary_value(group: Group, phi: Cochain, g: tuple) -> Fraction:
    n = len(g) - 1
    val = phi(*g[1:])
    for j in range(1, n + 1):
        merged = g[:j - 1] + (group._mul(g[j - 1], g[j]),) + g[j + 1:]
        val += (-1) ** j * phi(*merged)
    val += (-1) ** (n + 1) * phi(*g[:n])
    return val


def bar_coboundary(group: Group, phi: Cochain, points: Sequence | None = None) -> Cochain:
    """The bar coboundary; arity goes up by one.

    Rule-backed input gives rule-backed output.  Table-backed output is
    tabulated on ``points``^(n+1): by default all elements of a finite group,
    and for infinite groups the ball of half the largest length in the table,
    so that all needed products stay inside it.  A tuple whose value would
    need the cochain outside its table raises ``CochainDomainError``.
    """
    if phi.rule is not None:
        return Cochain(phi.arity + 1, rule=lambda *g: _coboundary_value(group, phi, g))
    if points is None:
        if isinstance(group, FiniteGroup):
            points = group.elements()
        else:
            if phi.arity == 0:
                raise CochainDomainError("points are required for a scalar cochain on an infinite group")
            top = max((group.word_length(x) for x in phi.points()), default=0)
            points = group.ball(top // 2)
    out = {}
    for g in itertools.product(points, repeat=phi.arity + 1):
        out[g] = _coboundary_value(group, phi, g)
    return Cochain(phi.arity + 1, out)


def bar_coboundary_matrix(group: FiniteGroup, n: int) -> RatMatrix:
    """Matrix of the coboundary C^n -> C^{n+1} in the indicator bases (product order)."""
    elems = group.elements()
    order = len(elems)
    idx = {t: i for i, t in enumerate(itertools.product(elems, repeat=n))}
    ents: dict[tuple[int, int], int] = {}
    for row, g in enumerate(itertools.product(elems, repeat=n + 1)):
        keys = [(1, g[1:])]
        for j in range(1, n + 1):
            keys.append(((-1) ** j, g[:j - 1] + (group._mul(g[j - 1], g[j]),) + g[j + 1:]))
        keys.append(((-1) ** (n + 1), g[:n]))
        for sign, key in keys:
            col = idx[key]
            ents[row, col] = ents.get((row, col), 0) + sign
    return RatMatrix(order ** (n + 1), order ** n, ents)


def bar_cohomology_finite(group: Group, n_max: int, cap: int = 250_000) -> list[int]:
    """[dim H^0, ..., dim H^n_max] of a finite group with trivial real coefficients."""
    if not isinstance(group, FiniteGroup):
        raise UnsupportedGroupError("bar cohomology is computed for finite groups only")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if group.order ** (n_max + 1) > cap:
        raise ResourceCapError(
            f"|G|^{n_max + 1} = {group.order ** (n_max + 1)} exceeds the cap {cap}")
    return cohomology_dims([bar_coboundary_matrix(group, n) for n in range(n_max + 1)])


# -- growth classes --------------------------------------------------------------

@dataclass
class GrowthReport:
    k: int
    C: Fraction
    witness: tuple | None
    by_radius: dict = field(default_factory=dict)
    growing_at_edge: bool = False

    def to_json(self, group: Group | None = None) -> dict:
        enc = group.element_to_json if group is not None else (lambda x: x)
        return {"k": self.k, "C": str(self.C), "C_decimal": f"{float(self.C):.6f}",
                "witness": None if self.witness is None else [enc(x) for x in self.witness],
                "by_radius": {str(r): str(v) for r, v in sorted(self.by_radius.items())},
                "growing_at_edge": self.growing_at_edge,
                "note": "C is exact on the table; growth beyond it is not asserted"}


def cochain_growth_class(group: Group, phi: Cochain, k: int, radius: int | None = None) -> GrowthReport:
    """Least C with |phi(g_1..g_n)| <= C prod (l(g_i) + 1)^k over the table.

    Rule-backed cochains are sampled on ball(radius)^n.  ``by_radius`` holds
    the maximal ratio among tuples whose longest entry has each length;
    ``growing_at_edge`` marks a ratio still rising by at least a factor
    (1 + 1/r) at the outermost radius r, a hint that no constant works.
    """
    if phi.table is not None:
        items = phi.table.items()
    else:
        if radius is None:
            raise ValueError("a radius is needed to sample a rule-backed cochain")
        pts = group.ball(radius)
        items = ((t, phi(*t)) for t in itertools.product(pts, repeat=phi.arity))
    best = Fraction(0)
    witness = None
    by_radius: dict[int, Fraction] = {}
    for t, v in items:
        lens = [group.word_length(g) for g in t]
        w = 1
        for L in lens:
            w *= (L + 1) ** k
        r = abs(Fraction(v)) / w
        if witness is None or r > best:
            best, witness = r, t
        rad = max(lens, default=0)
        if r > by_radius.get(rad, Fraction(-1)):
            by_radius[rad] = r
    growing = False
    radii = sorted(by_radius)
    if len(radii) >= 2:
        r1, r0 = radii[-1], radii[-2]
        lo, hi = by_radius[r0], by_radius[r1]
        growing = lo > 0 and hi >= lo * (1 + Fraction(1, r1))
    return GrowthReport(k, best, witness, by_radius, growing)


# -- the tree resolution of F_r --------------------------------------------------

def tree_generators(group: Group) -> list:
    """s(1), ..., s(r) for groups whose Cayley graph is a tree."""
    if isinstance(group, FreeGroup):
        return [(j,) for j in range(1, group.rank + 1)]
    if isinstance(group, FreeAbelianGroup) and group.rank == 1 and group.to_json().get("generators") is None:
        return [(1,)]
    raise UnsupportedGroupError(f"{group!r} has no tree resolution here; use F_r or Z")


def _last_letter(group: Group, g) -> tuple:
    """Split g = g2 s(j)^eps with l(g2) = l(g) - 1; returns (g2, j, eps), j 1-based."""
    if isinstance(group, FreeGroup):
        a = g[-1]
        return g[:-1], abs(a), 1 if a > 0 else -1
    x = g[0]
    return ((x - 1,), 1, 1) if x > 0 else ((x + 1,), 1, -1)


ResolutionElement = tuple  # r degree-0 chains


def zero_element(group: Group) -> ResolutionElement:
    return tuple(Chain.zero(0) for _ in tree_generators(group))


def free_res_b0(phi: Chain) -> Fraction:
    return augmentation(phi)


def free_res_b1(group: Group, e: ResolutionElement) -> Chain:
    """b1(phi_1..phi_r)(g) = sum_j phi_j(g) - phi_j(g s(j)).

    On a basis vector: delta_h in summand j goes to delta_h - delta_{h s(j)^-1}.
    """
    gens = tree_generators(group)
    if len(e) != len(gens):
        raise ChainError(f"expected {len(gens)} components, got {len(e)}")
    pairs = []
    for s, phi in zip(gens, e):
        s_inv = group.inverse(s)
        for (h,), c in phi.items():
            pairs.append(((h,), c))
            pairs.append(((group._mul(h, s_inv),), -c))
    return Chain.collect(0, pairs)


def sigma(group: Group, g) -> ResolutionElement:
    """The splitting sigma(g) with b1 sigma(g) = g - 1, by induction on l(g)."""
    group.check(g)
    r = len(tree_generators(group))
    comps: list[dict] = [{} for _ in range(r)]
    while g != group.identity:
        g2, j, eps = _last_letter(group, g)
        if eps > 0:
            comps[j - 1][(g,)] = comps[j - 1].get((g,), 0) + 1
        else:
            comps[j - 1][(g2,)] = comps[j - 1].get((g2,), 0) - 1
        g = g2
    return tuple(Chain(0, c) for c in comps)


def sigma_linear(group: Group, psi: Chain) -> ResolutionElement:
    """sigma extended linearly to degree-0 chains."""
    r = len(tree_generators(group))
    pairs: list[list] = [[] for _ in range(r)]
    for (g,), c in psi.items():
        for j, comp in enumerate(sigma(group, g)):
            pairs[j].extend((t, c * v) for t, v in comp.items())
    return tuple(Chain.collect(0, p) for p in pairs)


def translate_element(group: Group, g, e: ResolutionElement) -> ResolutionElement:
    """Left module action of g on Q[G]^r."""
    return tuple(Chain(0, {(group._mul(g, h),): c for (h,), c in phi.items()}) for phi in e)


def element_support_size(e: ResolutionElement) -> int:
    return sum(len(phi) for phi in e)


def equivariant_functional(group: Group, value) -> Callable[[Chain], Fraction]:
    """The G-equivariant functional Q[G] -> Q (trivial action) taking delta_e to ``value``."""
    value = Fraction(value)

    def lam(phi: Chain) -> Fraction:
        return value * augmentation(phi)

    return lam


def small_resolution_coboundaries(group: Group) -> list[RatMatrix]:
    """Coboundaries of Hom_G(resolution, Q): Q -> Q^r -> 0.

    An equivariant functional on Q[G] (or on a summand of Q[G]^r) is fixed by
    its value at delta_e, which identifies the Hom spaces with Q and Q^r.
    The matrix of d^0 is found by evaluating the unit functional on b1 of each
    basis element delta_e in summand j.
    """
    gens = tree_generators(group)
    r = len(gens)
    lam = equivariant_functional(group, 1)
    ents = {}
    for j in range(r):
        e = list(zero_element(group))
        e[j] = delta(group.identity)
        ents[j, 0] = lam(free_res_b1(group, tuple(e)))
    return [RatMatrix(r, 1, ents), RatMatrix(0, r), RatMatrix(0, 0)]


def cohomology_small_resolution(group: Group) -> list[int]:
    """[dim H^0, dim H^1, dim H^2] from the tree resolution."""
    return cohomology_dims(small_resolution_coboundaries(group))


def cohomology_report(group: Group, method: str, n_max: int = 2) -> dict:
    if method == "bar":
        dims = bar_cohomology_finite(group, n_max)
    elif method == "resolution":
        dims = cohomology_small_resolution(group)
    else:
        raise ValueError(f"unknown method {method!r}")
    return {"group": group.to_json(), "method": "bar" if method == "bar" else "small_resolution",
            "dims": dims}
