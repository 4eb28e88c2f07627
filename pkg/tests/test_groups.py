import itertools
from collections import deque

import pytest

from tempered.groups import (FiniteGroup, FreeAbelianGroup, FreeGroup, GroupError,
                             free_reduce, group_from_json)

F2 = FreeGroup(2)
Z2 = FreeAbelianGroup(2)
Z3 = FiniteGroup.cyclic(3)
Z5 = FiniteGroup.cyclic(5)


def s(j, e=1):
    return (j * e,)


def bfs_lengths(gens, mul, identity, radius):
    """Independent oracle: Cayley-graph BFS distances from the identity."""
    dist = {identity: 0}
    q = deque([identity])
    while q:
        x = q.popleft()
        if dist[x] == radius:
            continue
        for a in gens:
            y = mul(x, a)
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def test_multiply_examples():
    assert F2.multiply(s(1), s(1, -1)) == F2.identity
    assert Z2.multiply((2, -3), (-2, 5)) == (0, 2)
    assert Z3.multiply(1, 2) == 0


def test_finite_table_read_off():
    # Z/3 with a relabelled table: 0 <-> 2 swapped; identity is then element 2
    perm = [2, 1, 0]
    base = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    table = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            table[perm[i]][perm[j]] = perm[base[i][j]]
    G = FiniteGroup(table, [1])
    assert G.identity == 2
    assert G.multiply(1, 1) == perm[2]


def test_word_length_examples():
    assert F2.word_length((1, 2, -1)) == 3
    assert Z2.word_length((2, -3)) == 5
    for G in (F2, Z2, Z3):
        assert G.word_length(G.identity) == 0


def test_distance_examples():
    g = (1, 2)
    assert F2.distance(g, g) == 0
    assert F2.distance(s(1), (1, 2)) == 1
    # hand oracle: l1 norm of (-1,0) - (1,1)
    assert Z2.distance((1, 1), (-1, 0)) == abs(-1 - 1) + abs(0 - 1) == 3


def test_ball_examples():
    assert F2.ball(1) == [(), (-2,), (-1,), (1,), (2,)]
    assert len(F2.ball(2)) == 1 + 4 + 4 * 3
    assert FreeAbelianGroup(1).ball(3) == [(0,), (-1,), (1,), (-2,), (2,), (-3,), (3,)]


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("R", range(7))
def test_free_ball_sizes(r, R):
    expected = 1 + sum(2 * r * (2 * r - 1) ** (j - 1) for j in range(1, R + 1))
    G = FreeGroup(r)
    ball = G.ball(R)
    assert len(ball) == len(set(ball)) == expected


def test_free_ball_against_bfs():
    oracle = bfs_lengths([(a,) for a in (1, -1, 2, -2)], lambda x, y: free_reduce(x + y), (), 4)
    assert {g: F2.word_length(g) for g in F2.ball(4)} == oracle


def test_ball_canonical_order():
    for G in (F2, Z2, Z5):
        b = G.ball(3)
        assert b == sorted(b, key=lambda g: (G.word_length(g), g))


def test_free_reduction_idempotent():
    words = [(1, 2, -2, -1, 1), (1, -1), (2, 1, -1, -2, 2), ()]
    for w in words:
        r = free_reduce(w)
        assert free_reduce(r) == r
        assert F2.contains(r)
    assert free_reduce((1, 2, -2, -1, 1)) == (1,)


@pytest.mark.parametrize("G", [F2, Z2, Z5], ids=["F2", "Z2", "Z5"])
def test_triangle_inequality_ball3(G):
    b = G.ball(3)
    d = {(x, y): G.distance(x, y) for x in b for y in b}
    for x, y, z in itertools.product(b, repeat=3):
        assert d[x, z] <= d[x, y] + d[y, z]


@pytest.mark.parametrize("G", [F2, Z2, Z5], ids=["F2", "Z2", "Z5"])
def test_left_invariance_and_length_axioms(G):
    b = G.ball(2)
    for k, g, h in itertools.product(b, repeat=3):
        assert G.distance(G.multiply(k, g), G.multiply(k, h)) == G.distance(g, h)
    for g in b:
        assert G.word_length(G.inverse(g)) == G.word_length(g)
        assert (G.word_length(g) == 0) == (g == G.identity)
        for h in b:
            assert G.word_length(G.multiply(g, h)) <= G.word_length(g) + G.word_length(h)


def test_custom_generators_z():
    Z23 = FreeAbelianGroup(1, [[2], [3]])

    def oracle(x):
        # min |a| + |b| with 2a + 3b = x, by brute force
        return min(abs(a) + abs(b) for a in range(-40, 41) for b in range(-40, 41)
                   if 2 * a + 3 * b == x)

    for x in range(-20, 21):
        assert Z23.word_length((x,)) == oracle(x)
    assert Z23.to_json() == {"family": "abelian", "rank": 1, "generators": [[2], [3]]}


def test_finite_group_validation():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]], [1])  # no inverse for 1
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [0])  # does not generate
    with pytest.raises(GroupError):
        FreeGroup(0)
    with pytest.raises(GroupError):
        FreeAbelianGroup(1, [[2], [4]])


def test_mismatched_elements_rejected():
    with pytest.raises(GroupError):
        F2.multiply((3,), (1,))
    with pytest.raises(GroupError):
        Z2.multiply((1,), (1, 1))
    with pytest.raises(GroupError):
        Z3.multiply(1, 5)
    with pytest.raises(GroupError):
        F2.multiply((1, -1), ())  # not reduced


def test_json_round_trip():
    for G in (F2, Z2, Z5, FreeAbelianGroup(1, [[2], [3]])):
        H = group_from_json(G.to_json())
        assert H == G
        for g in G.ball(2):
            assert H.element_from_json(G.element_to_json(g)) == g
    assert F2.element_from_json([1, 2, -2]) == (1,)
    with pytest.raises(GroupError):
        group_from_json({"family": "nilpotent"})
