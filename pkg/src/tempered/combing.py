"""Combings, the contracting homotopy they induce, and growth profiling.

A combing is a sequence of maps f_0, f_1, ... with f_0 constant at the
identity and f_N(x) = x once N >= stab(x).  Summing the elementary
homotopies H(f_i, f_{i+1}) over i gives an operator H with dH + Hd = id on
the reduced complex; on a finitely supported chain the sum stops at the
largest stab(x) of a point in the support.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .chains import Chain, ChainError, boundary, is_reduced, tuple_diameter, tuple_length
from .groups import FreeAbelianGroup, FreeGroup, Group, group_from_json
from .homotopy import IdentityCheck, MapDomainError, PointMap, homotopy_terms


class Combing:
    """A synchronous combing of a group with its declared constants.

    ``rule(n, x)`` evaluates f_n(x); it is only called for n < stab(x).
    ``C`` bounds d(f_n x, f_n y) <= C (d(x, y) + 1), ``S`` bounds
    d(f_n x, f_{n+1} x), and J(x) is declared to grow like (l(x) + 1)^m.
    """

    def __init__(self, group: Group, rule: Callable[[int, Hashable], Hashable],
                 stab: Callable[[Hashable], int], C, S: int, m: int,
                 kind: str = "custom", params: Mapping | None = None):
        self.group = group
        self._rule = rule
        self._stab = stab
        self.C = Fraction(C)
        self.S = S
        self.m = m
        self.kind = kind
        self.params = dict(params or {})
        self._paths: dict = {}

    def __repr__(self):
        return f"Combing({self.kind}, {self.group!r})"

    def stab(self, x) -> int:
        return self._stab(x)

    def stage(self, n: int, x):
        if n < 0:
            raise ValueError("combing stages are indexed by n >= 0")
        if n >= self._stab(x):
            return x
        return self._rule(n, x)

    def path(self, x) -> tuple:
        """(f_0(x), ..., f_stab(x)(x)); cached."""
        p = self._paths.get(x)
        if p is None:
            p = tuple(self.stage(n, x) for n in range(self._stab(x) + 1))
            self._paths[x] = p
        return p

    def stage_map(self, n: int) -> PointMap:
        return PointMap(lambda x: self.stage(n, x), name=f"f_{n}")

    def J(self, x) -> int:
        """Number of n with f_n(x) != f_{n+1}(x)."""
        p = self.path(x)
        return sum(1 for i in range(len(p) - 1) if p[i] != p[i + 1])

    def to_json(self) -> dict:
        if self.kind == "custom":
            raise ValueError("rule-based combings have no JSON form")
        return {"kind": self.kind, **self.params}


def free_group_combing(rank: int) -> Combing:
    """Prefix combing of F_r: f_n(g) is the length-n prefix of the reduced word."""
    group = FreeGroup(rank)
    return Combing(group, lambda n, g: g[:n], len, C=1, S=1, m=1,
                   kind="free_prefix", params={"rank": rank})


def _staircase(n: int, x: tuple) -> tuple:
    out = []
    left = n
    for a in x:
        step = min(left, abs(a))
        out.append(step if a >= 0 else -step)
        left -= step
    return tuple(out)


def abelian_combing(rank: int) -> Combing:
    """Staircase combing of Z^n: walk along coordinate 1 first, then 2, ..."""
    group = FreeAbelianGroup(rank)
    return Combing(group, _staircase, lambda x: sum(abs(a) for a in x), C=2, S=1, m=1,
                   kind="abelian_staircase", params={"rank": rank})


def table_combing(group: Group, paths: Mapping, C, S: int, m: int) -> Combing:
    """A combing given by explicit paths x -> (f_0(x), ..., f_N(x)) over a finite domain.

    Each path must start at the identity and end at x; it is extended by x.
    """
    clean = {}
    for x, p in paths.items():
        p = tuple(p)
        if not p or p[0] != group.identity or p[-1] != x:
            raise ValueError(f"path for {x!r} must run from the identity to {x!r}")
        clean[x] = p

    def lookup(x):
        try:
            return clean[x]
        except KeyError:
            raise MapDomainError(f"{x!r} is outside the combing table") from None

    params = {"group": group.to_json(), "C": str(Fraction(C)), "S": S, "m": m,
              "paths": [[group.element_to_json(x), [group.element_to_json(y) for y in p]]
                        for x, p in sorted(clean.items(), key=lambda it: group.sort_key(it[0]))]}
    return Combing(group, lambda n, x: lookup(x)[n], lambda x: len(lookup(x)) - 1,
                   C=C, S=S, m=m, kind="table", params=params)


def combing_from_json(data: Mapping) -> Combing:
    kind = data.get("kind")
    if kind == "free_prefix":
        return free_group_combing(int(data["rank"]))
    if kind == "abelian_staircase":
        return abelian_combing(int(data["rank"]))
    if kind == "table":
        group = group_from_json(data["group"])
        paths = {group.element_from_json(x): [group.element_from_json(y) for y in p]
                 for x, p in data["paths"]}
        return table_combing(group, paths, Fraction(str(data.get("C", 1))),
                             int(data.get("S", 1)), int(data.get("m", 1)))
    raise ValueError(f"unknown combing kind {kind!r}")


# -- axioms ---------------------------------------------------------------------

@dataclass
class CombingReport:
    radius: int
    stages: int
    base_ok: bool
    stabilizes_ok: bool
    C_obs: Fraction
    lipschitz_obs: Fraction
    S_obs: int
    J: dict = field(default_factory=dict)
    growth_constant_obs: Fraction = Fraction(0)
    C: Fraction = Fraction(0)
    S: int = 0
    m: int = 0
    violations: list = field(default_factory=list)

    @property
    def axioms_ok(self) -> bool:
        return self.base_ok and self.stabilizes_ok and self.C_obs <= self.C and self.S_obs <= self.S

    def to_json(self, group: Group | None = None) -> dict:
        enc = group.element_to_json if group is not None else (lambda x: x)
        return {
            "radius": self.radius, "stages": self.stages,
            "axioms_ok": self.axioms_ok, "base_ok": self.base_ok,
            "stabilizes_ok": self.stabilizes_ok,
            "C_obs": str(self.C_obs), "C_declared": str(self.C),
            "lipschitz_obs": str(self.lipschitz_obs),
            "S_obs": self.S_obs, "S_declared": self.S,
            "m": self.m, "growth_constant_obs": str(self.growth_constant_obs),
            "J_by_length": {str(k): v for k, v in sorted(self.J.items())},
            "violations": [[v[0], enc(v[1])] + list(v[2:]) for v in self.violations[:20]],
        }


def verify_combing(comb: Combing, radius: int) -> CombingReport:
    """Exhaustively check the combing axioms on ball(radius) for all relevant n."""
    group = comb.group
    pts = group.ball(radius)
    paths = [comb.path(x) for x in pts]
    top = max((len(p) - 1 for p in paths), default=0)
    violations = []

    def st(i, n):
        p = paths[i]
        return p[n] if n < len(p) else pts[i]

    base_ok = True
    stabilizes_ok = True
    S_obs = 0
    J: dict[int, list] = {}
    growth = Fraction(0)
    for i, x in enumerate(pts):
        if comb.stage(0, x) != group.identity:
            base_ok = False
            violations.append(("base", x))
        s = comb.stab(x)
        if comb.stage(s, x) != x or comb.stage(s + 1, x) != x:
            stabilizes_ok = False
            violations.append(("stabilize", x))
        for n in range(top + 1):
            d = group.distance(st(i, n), st(i, n + 1))
            if d > S_obs:
                S_obs = d
            if d > comb.S:
                violations.append(("close", x, n, d))
        j = comb.J(x)
        length = group.word_length(x)
        J.setdefault(length, []).append(j)
        g = Fraction(j, (length + 1) ** comb.m)
        if g > growth:
            growth = g

    # quasi-Lipschitz: track the max ratios as integer pairs
    qn, qd = 0, 1
    ln, ld = 0, 1
    dist = group.distance
    for n in range(top + 1):
        imgs = [st(i, n) for i in range(len(pts))]
        for i in range(len(pts)):
            xi, fi = pts[i], imgs[i]
            for j in range(i + 1, len(pts)):
                a = dist(fi, imgs[j])
                if not a:
                    continue
                b = dist(xi, pts[j])
                if a * qd > qn * (b + 1):
                    qn, qd = a, b + 1
                if a * ld > ln * b:
                    ln, ld = a, b
    C_obs = Fraction(qn, qd)
    if C_obs > comb.C:
        violations.append(("quasi_lipschitz", None, str(C_obs)))
    return CombingReport(
        radius=radius, stages=top, base_ok=base_ok, stabilizes_ok=stabilizes_ok,
        C_obs=C_obs, lipschitz_obs=Fraction(ln, ld), S_obs=S_obs,
        J={k: max(v) for k, v in J.items()}, growth_constant_obs=growth,
        C=comb.C, S=comb.S, m=comb.m, violations=violations,
    )


# -- contracting homotopy -----------------------------------------------------

def _contract_tuple(comb: Combing, t: tuple) -> list[tuple[int, tuple]]:
    paths = [comb.path(x) for x in t]
    top = max(len(p) for p in paths) - 1
    out = []
    prev = tuple(p[0] for p in paths)
    for i in range(top):
        nxt = tuple(p[i + 1] if i + 1 < len(p) else p[-1] for p in paths)
        if nxt != prev:
            out.extend(homotopy_terms(prev, nxt))
        prev = nxt
    return out


def contracting_homotopy(comb: Combing, c: Chain, reduced: bool = True) -> Chain:
    """H(c) = sum_i H(f_i, f_{i+1})(c), a finite sum on finite support.

    With ``reduced`` set, degree-0 input must have augmentation zero: only
    there is H a contraction (dH(x) = x - identity in general).
    """
    if reduced and not is_reduced(c):
        raise ChainError("degree-0 chain is not in the augmentation kernel")
    pairs = []
    for t, coeff in c.items():
        for sign, u in _contract_tuple(comb, t):
            pairs.append((u, sign * coeff))
    return Chain.collect(c.degree + 1, pairs)


def verify_contraction(comb: Combing, c: Chain) -> IdentityCheck:
    """Check dH(c) + H(dc) = c exactly; ``c`` should be reduced."""
    lhs = boundary(contracting_homotopy(comb, c, reduced=False))
    if c.degree > 0:
        lhs = lhs + contracting_homotopy(comb, boundary(c), reduced=False)
    diff = lhs - c
    return IdentityCheck(diff.is_zero(), diff)


# -- growth profile -------------------------------------------------------------

@dataclass
class ProfileShell:
    shell: int
    count: int
    max_ratio: Fraction
    witness: tuple | None


@dataclass
class NormProfile:
    k: int
    degree: int
    length: int
    radius: int
    m: int
    shells: list
    max_control_radius: int | None

    def shell_max(self, lo: int, hi: int) -> Fraction:
        return max((s.max_ratio for s in self.shells if lo <= s.shell <= hi and s.count),
                   default=Fraction(0))

    def to_json(self, group: Group | None = None) -> dict:
        enc = group.element_to_json if group is not None else (lambda x: x)
        return {
            "k": self.k, "degree": self.degree, "length": self.length,
            "radius": self.radius, "m": self.m,
            "max_control_radius": self.max_control_radius,
            "shells": [{"shell": s.shell, "tuples": s.count,
                        "max_ratio": str(s.max_ratio),
                        "max_ratio_decimal": f"{float(s.max_ratio):.6f}",
                        "witness": None if s.witness is None else [enc(x) for x in s.witness]}
                       for s in self.shells],
            "note": "boundedness is observed on the enumerated shells only",
        }


def controlled_tuples(group: Group, degree: int, length: int, radius: int) -> Iterable[tuple]:
    """Nondegenerate tuples with every l(x_i) <= length and every d(x_i, x_j) <= radius."""
    steps = [b for b in group.ball(radius) if b != group.identity]
    wl, dist = group.word_length, group.distance
    for x0 in group.ball(length):
        near = [y for y in (group._mul(x0, b) for b in steps) if wl(y) <= length]
        if degree == 0:
            yield (x0,)
            continue
        cands = [x0] + near

        def extend(t):
            if len(t) == degree + 1:
                yield t
                return
            for y in cands:
                if y == t[-1]:
                    continue
                if all(dist(y, z) <= radius for z in t):
                    yield from extend(t + (y,))

        yield from extend((x0,))


def homotopy_norm_profiles(comb: Combing, ks: Sequence[int], degree: int, length: int,
                           radius: int, track_control: bool = True) -> dict[int, NormProfile]:
    """Per-shell maxima of ||H(t)||^k / (l(x_0) + ... + l(x_n) + 1)^(k + m).

    Shells are indexed by l(x_0).  Several k share one pass over the tuples.
    """
    group = comb.group
    m = comb.m
    wl = group.word_length
    best = {k: {} for k in ks}
    counts: dict[int, int] = {}
    ctrl = 0
    for t in controlled_tuples(group, degree, length, radius):
        shell = wl(t[0])
        counts[shell] = counts.get(shell, 0) + 1
        h = Chain.collect(degree + 1, ((u, s) for s, u in _contract_tuple(comb, t)))
        lens = [(abs(c), tuple_length(group, u)) for u, c in h.items()]
        if track_control:
            for u in h:
                d = tuple_diameter(group, u)
                if d > ctrl:
                    ctrl = d
        base = tuple_length(group, t) + 1
        for k in ks:
            num = sum(c * (L + 1) ** k for c, L in lens)
            r = Fraction(num, base ** (k + m))
            cur = best[k].get(shell)
            if cur is None or r > cur[0]:
                best[k][shell] = (r, t)
    out = {}
    for k in ks:
        shells = []
        for s in range(length + 1):
            r, w = best[k].get(s, (Fraction(0), None))
            shells.append(ProfileShell(s, counts.get(s, 0), r, w))
        out[k] = NormProfile(k, degree, length, radius, m, shells,
                             ctrl if track_control else None)
    return out


def homotopy_norm_profile(comb: Combing, k: int, degree: int, length: int, radius: int,
                          track_control: bool = True) -> NormProfile:
    return homotopy_norm_profiles(comb, [k], degree, length, radius, track_control)[k]

