import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xmodkit import fingroup as fg
from xmodkit.errors import (CodomainMismatch, InvariantViolation, NoIdentityAtZero, NotAssociative,
                            NotLatinSquare, OrderTooLarge)

LIB = fg.small_groups()
lib_groups = st.sampled_from(fg.small_groups(8))


def brute_is_group(t):
    n = len(t)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return False
    return all(t[0][a] == a == t[a][0] for a in range(n)) and all(0 in row for row in t)


def test_library_counts_per_order():
    # number of isomorphism classes of groups of order 1..15
    expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]
    counts = [sum(1 for g in LIB if g.order == n) for n in range(1, 16)]
    assert counts == expected


def test_library_pairwise_non_isomorphic():
    for a, b in itertools.combinations(LIB, 2):
        if a.order == b.order and a.order <= 12:
            assert fg.find_isomorphism(a, b, bound=24) is None, (a.name, b.name)


@pytest.mark.parametrize("g", fg.small_groups(8), ids=lambda g: g.name)
def test_library_tables_are_groups(g):
    assert brute_is_group(g.table.tolist())
    g.validate()


def test_abelian_flags():
    names = {g.name for g in LIB if not g.is_abelian()}
    assert names == {"S3", "D4", "Q8", "D5", "A4", "Dic3", "D6", "D7"}


def test_element_orders_cyclic():
    for n in (1, 5, 12):
        orders = fg.cyclic(n).element_orders
        assert orders.tolist() == [n // math.gcd(n, k) for k in range(n)]


def test_quaternion_has_single_involution():
    q = fg.quaternion()
    assert (q.element_orders == 2).sum() == 1
    assert sorted(q.element_orders.tolist()) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_make_group_rejections():
    with pytest.raises(NotLatinSquare):
        fg.make_group([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    with pytest.raises(NoIdentityAtZero):
        fg.make_group([[1, 0], [0, 1]])
    # a Latin square with identity 0 that is not associative (order 5 loop)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    assert not brute_is_group(loop)
    with pytest.raises(NotAssociative):
        fg.make_group(loop)


def test_hom_counts_between_cyclics():
    for m, n in itertools.product(range(1, 9), repeat=2):
        assert len(fg.enumerate_homs(fg.cyclic(m), fg.cyclic(n))) == math.gcd(m, n)


@given(lib_groups, st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_hom_count_from_cyclic(g, n):
    # Hom(Z_n, G) is the set of elements killed by n
    expected = int(sum(1 for o in g.element_orders if n % o == 0))
    assert len(fg.enumerate_homs(fg.cyclic(n), g)) == expected


@given(lib_groups, lib_groups)
@settings(max_examples=30, deadline=None)
def test_enumerated_homs_are_homs(g, h):
    homs = fg.enumerate_homs(g, h)
    keys = [tuple(f.map.tolist()) for f in homs]
    assert keys == sorted(set(keys))
    t, u = g.table, h.table
    for f in homs:
        assert np.array_equal(f.map[t], u[f.map[:, None], f.map[None, :]])


@pytest.mark.parametrize("name,size", [("Z5", 4), ("Z8", 4), ("Z2xZ2", 6), ("S3", 6), ("D4", 8),
                                       ("Q8", 24), ("Z4xZ2", 8), ("A4", 24)])
def test_automorphism_group_orders(name, size):
    aut, perms = fg.automorphism_group(fg.group_by_name(name))
    assert aut.order == size
    assert np.array_equal(perms[0], np.arange(len(perms[0])))


def test_isomorphism_bound():
    with pytest.raises(OrderTooLarge):
        fg.find_isomorphism(fg.cyclic(30), fg.cyclic(30))


def test_hom_validation():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    with pytest.raises(InvariantViolation):
        fg.GroupHom(z3, z2, [0, 1, 0])
    f = fg.GroupHom(z2, z2, [0, 1])
    assert f.is_bijective() and f.inverse() == f


def test_kernel_and_image():
    s3 = fg.group_by_name("S3")
    z2 = fg.cyclic(2)
    sign = [f for f in fg.enumerate_homs(s3, z2) if not f.is_zero()]
    assert len(sign) == 1
    k = fg.kernel(sign[0])
    assert k.group.order == 3 and k.is_normal()


@given(lib_groups, lib_groups)
@settings(max_examples=25, deadline=None)
def test_direct_product(g, h):
    p = fg.direct_product(g, h)
    i1, i2, p1, p2 = fg.product_maps(p)
    assert p.order == g.order * h.order
    for f in (i1, i2, p1, p2):
        assert f.is_hom()
    assert p.is_abelian() == (g.is_abelian() and h.is_abelian())


@given(lib_groups, lib_groups, st.data())
@settings(max_examples=25, deadline=None)
def test_pullback_matches_brute_force(g, h, data):
    b = fg.cyclic(2)
    f1 = data.draw(st.sampled_from(fg.enumerate_homs(g, b)))
    f2 = data.draw(st.sampled_from(fg.enumerate_homs(h, b)))
    P, p1, p2 = fg.pullback(f1, f2)
    pairs = [(a, c) for a in range(g.order) for c in range(h.order) if f1.map[a] == f2.map[c]]
    assert list(zip(p1.map.tolist(), p2.map.tolist())) == pairs
    assert p1.is_hom() and p2.is_hom()
    for i, (a, c) in enumerate(pairs):
        assert fg.pair_index(P, a, c) == i


def test_pullback_needs_shared_codomain():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    with pytest.raises(CodomainMismatch):
        fg.pullback(fg.zero_hom(z2, z2), fg.zero_hom(z2, z3))


def test_semidirect_inversion_is_s3():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    inv = [a for a in fg.enumerate_actions(z2, z3) if not a.is_trivial()]
    assert len(inv) == 1
    g, k, s, p = fg.semidirect_product(inv[0])
    assert g.order == 6 and not g.is_abelian()
    assert fg.find_isomorphism(g, fg.group_by_name("S3")) is not None
    assert (p @ s).map.tolist() == [0, 1]
    assert not (p @ k).map.any()


@given(st.sampled_from(fg.small_groups(4)), st.sampled_from(fg.small_groups(4)), st.data())
@settings(max_examples=30, deadline=None)
def test_semidirect_product_law(b, x, data):
    act = data.draw(st.sampled_from(fg.enumerate_actions(b, x)))
    g, k, s, p = fg.semidirect_product(act)
    nb = b.order
    for e1, e2 in itertools.product(range(g.order), repeat=2):
        x1, b1, x2, b2 = e1 // nb, e1 % nb, e2 // nb, e2 % nb
        want = int(x.table[x1, act.table[b1, x2]]) * nb + int(b.table[b1, b2])
        assert g.mul(e1, e2) == want


def test_action_counts():
    # actions of Z2 on Z3: trivial and inversion; of Z3 on Z2xZ2: trivial and two rotations
    assert len(fg.enumerate_actions(fg.cyclic(2), fg.cyclic(3))) == 2
    assert len(fg.enumerate_actions(fg.cyclic(3), fg.group_by_name("Z2xZ2"))) == 3


def test_action_rejects_non_automorphism():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    with pytest.raises(InvariantViolation):
        fg.GroupAction(z2, z3, [[0, 1, 2], [0, 1, 1]])
