import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xmodkit import actionsys as ax
from xmodkit import fingroup as fg
from xmodkit import pointedcat as pc
from xmodkit.errors import CodomainMismatch, InvariantViolation, NotACrossedModule

GRP4 = ax.enumerate_objects("grp", 4)


def brute_xmod(act, h):
    """Equivariance and Peiffer by explicit loops."""
    B, X = act.B, act.X
    t = act.table
    for b, x in itertools.product(range(B.order), range(X.order)):
        hb = int(h.map[t[b, x]])
        if hb != B.mul(B.mul(b, int(h.map[x])), int(B.inv[b])):
            return False
    for x, y in itertools.product(range(X.order), repeat=2):
        if t[h.map[x], y] != X.mul(X.mul(x, y), int(X.inv[x])):
            return False
    return True


@given(st.sampled_from(GRP4), st.data())
@settings(max_examples=60, deadline=None)
def test_xmod_check_matches_loops(A, data):
    h = data.draw(st.sampled_from(fg.enumerate_homs(A.X, A.B)))
    assert ax.xmod_check(A.action, h)[0] == brute_xmod(A.action, h)


def test_identity_crossed_modules():
    for g in fg.small_groups(8):
        assert ax.is_crossed_module(fg.GroupAction.conjugation(g), fg.identity_hom(g))


def test_normal_subgroup_inclusion():
    s3 = fg.group_by_name("S3")
    rot = np.flatnonzero(s3.element_orders != 2)
    sub = fg.subgroup(s3, rot)
    X = sub.group
    act = fg.GroupAction(s3, X, apply=lambda b, x: np.searchsorted(sub.elements, s3.conj(b, sub.elements[x])))
    assert ax.is_crossed_module(act, sub.inclusion)


def test_xmod_witnesses():
    s3, z1 = fg.group_by_name("S3"), fg.cyclic(1)
    ok, w = ax.xmod_check(fg.GroupAction.trivial(z1, s3), fg.zero_hom(s3, z1))
    assert not ok and w[0] == "9"
    z2 = fg.cyclic(2)
    # trivial action on Z3 with a nonzero map to S3 breaks equivariance
    z3 = fg.cyclic(3)
    h = [f for f in fg.enumerate_homs(z3, s3) if not f.is_zero()][0]
    ok, w = ax.xmod_check(fg.GroupAction.trivial(s3, z3), h)
    assert not ok and w[0] == "8"
    with pytest.raises(NotACrossedModule):
        ax.xmod_to_whitehead(ax.CrossedModule(fg.GroupAction.trivial(z1, s3), fg.zero_hom(s3, z1)))
    with pytest.raises(CodomainMismatch):
        ax.xmod_check(fg.GroupAction.trivial(z2, z3), fg.zero_hom(z2, z2))


@pytest.mark.parametrize("system", ["grp", "ab", "pset"])
def test_F_order_and_eta(system):
    for A in ax.enumerate_objects(system, 3):
        fd = A.F
        expected = A.X.order * A.B.order if system != "pset" else A.X.order + A.B.order - 1
        assert fd.obj.order == expected
        eps = ax.transpose(A, ax.eta(A))
        assert np.array_equal(eps.map, np.arange(fd.obj.order))
        assert ax.pi_uniqueness_count(A) == 1


def test_eta_universal_small():
    for A in ax.enumerate_objects("grp", 2) + ax.enumerate_objects("pset", 2):
        assert ax.eta_universality_failure(A, max_order=4) is None


def test_eta_is_organic():
    for A in GRP4[:20] + ax.enumerate_objects("ab", 3) + ax.enumerate_objects("pset", 3):
        assert ax.is_organic(ax.eta(A))


def test_cartesian_lifting_and_factor():
    for A in GRP4[:30]:
        for g in fg.enumerate_homs(fg.cyclic(2), A.B):
            E, alpha = ax.cartesian_lifting(g, A)
            assert alpha.is_morphism()
            assert ax.is_cartesian(alpha, method="search", bound=3)
            assert ax.is_cartesian(alpha, method="auto")


def test_non_cartesian_detected():
    z2 = fg.cyclic(2)
    A = ax.ActionObject("grp", z2, z2)
    E = ax.ActionObject("grp", fg.cyclic(1), z2)
    alpha = ax.ActionMorphism(E, A, fg.zero_hom(fg.cyclic(1), z2), fg.identity_hom(z2))
    assert not ax.is_cartesian(alpha, method="search", bound=2)
    assert ax.cartesian_counterexample(alpha, bound=2) is not None


def test_cartesian_lifting_codomain():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    A = ax.ActionObject("grp", z2, z2)
    with pytest.raises(CodomainMismatch):
        ax.cartesian_lifting(fg.zero_hom(z2, z3), A)


@pytest.mark.parametrize("A", GRP4[::7], ids=repr)
def test_whitehead_search_matches_xmods(A):
    n_x = sum(1 for h in fg.enumerate_homs(A.X, A.B) if ax.is_crossed_module(A.action, h))
    assert len(ax.whitehead_sequences_by_search(A)) == n_x


def test_whitehead_roundtrip():
    for A in GRP4[:40]:
        for h in fg.enumerate_homs(A.X, A.B):
            if ax.is_crossed_module(A.action, h):
                cm = ax.CrossedModule(A.action, h)
                back = ax.whitehead_to_xmod(ax.xmod_to_whitehead(cm))
                assert back.key() == cm.key()


def test_pair_whitehead_any_map():
    for system in ("ab", "pset"):
        for A in ax.enumerate_objects(system, 3):
            for h in A.instance.maps(A.X, A.B):
                assert ax.pair_whitehead(A, h).failure() is None


def test_ab_object_needs_trivial_action():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    inv = [a for a in fg.enumerate_actions(z2, z3) if not a.is_trivial()][0]
    with pytest.raises(InvariantViolation):
        ax.ActionObject("ab", z3, z2, inv)


def test_l_condition_exhaustive_equals_closed_form():
    for A in GRP4[:25]:
        for h in fg.enumerate_homs(A.X, A.B):
            if not ax.is_crossed_module(A.action, h):
                continue
            w = ax.xmod_to_whitehead(ax.CrossedModule(A.action, h))
            t = ax.transpose(A, w.u)
            E, alpha = ax.cartesian_lifting(t, A)
            beta = ax.factor(alpha, ax.identity_morphism(A), A.F.s)
            f = ax.eta(A)
            g = w.v @ ax.G_map(alpha.f1, "grp")
            sols = ax.l_condition_solutions(alpha, beta, f, g)
            assert len(sols) == 1
            fp, gp = ax.l_condition_instance(alpha, beta, f, g)
            assert fp == sols[0][0] and gp == sols[0][1]


def test_jointly_conservative_small():
    objs = ax.enumerate_objects("grp", 3)
    for A, A2 in itertools.product(objs, repeat=2):
        if A.X.order != A2.X.order or A.B.order != A2.B.order:
            continue
        for m in ax.enumerate_morphisms(A, A2):
            assert ax.jointly_conservative_at(m)


def test_pi_natural():
    objs = ax.enumerate_objects("grp", 2) + ax.enumerate_objects("pset", 2)
    for A, A2 in itertools.product(objs, repeat=2):
        if A.system != A2.system:
            continue
        for m in ax.enumerate_morphisms(A, A2):
            assert ax.pi_natural_at(m)


def test_pset_pair_has_no_action():
    with pytest.raises(InvariantViolation):
        ax.ActionObject("pset", pc.PointedSet(2), pc.PointedSet(2), fg.GroupAction.trivial(fg.cyclic(2), fg.cyclic(2)))
