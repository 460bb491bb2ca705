import itertools

import numpy as np
import pytest

from xmodkit import fingroup as fg
from xmodkit import pointedcat as pc
from xmodkit.errors import BoundTooSmall, CodomainMismatch, InstanceMismatch


def P(n):
    return pc.PointedSet(n)


def test_pset_maps_count():
    # based maps fix the basepoint: |B|^(|Z|-1)
    for z, b in itertools.product(range(1, 5), repeat=2):
        assert len(pc.PSET.maps(P(z), P(b))) == b ** (z - 1)


def test_pset_map_must_fix_basepoint():
    with pytest.raises(Exception):
        pc.PointedMap(P(2), P(2), [1, 0])


def test_wedge_layout():
    S, k, s = pc.PSET.coproduct(P(3), P(2))
    assert S.order == 4
    assert k.map.tolist() == [0, 1, 2]
    assert s.map.tolist() == [0, 3]


@pytest.mark.parametrize("x,b", [(1, 1), (2, 3), (4, 2), (5, 5)])
def test_wedge_is_exact_patch(x, b):
    w = pc.coproduct_patch(P(x), P(b), pc.PSET)
    assert w.failure() is None
    assert pc.is_exact_patch(w)


def test_pset_stability_fast_matches_search():
    for x, b in itertools.product(range(1, 4), repeat=2):
        w = pc.coproduct_patch(P(x), P(b), pc.PSET)
        bound = max(b, 3)
        assert pc.is_stable_patch(w, bound, method="fast") == pc.is_stable_patch(w, bound, method="search")


def test_pset_wedge_unstable_when_fibre_nontrivial():
    w = pc.coproduct_patch(P(2), P(2), pc.PSET)
    assert not pc.is_stable_patch(w, 2, method="search")
    h = pc.stability_counterexample(w, 2)
    assert h.map.tolist() == [0, 0]


def test_bound_too_small():
    w = pc.coproduct_patch(P(2), P(3), pc.PSET)
    with pytest.raises(BoundTooSmall):
        pc.is_stable_patch(w, 2)


def test_pullback_of_point_along_bijection_is_patch():
    w = pc.coproduct_patch(P(3), P(3), pc.PSET)
    _, c = pc.point_pullback(w, pc.PSET.identity(P(3)))
    assert pc.is_patch(c)


def test_grp_semidirect_patch():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    act = [a for a in fg.enumerate_actions(z2, z3) if not a.is_trivial()][0]
    g, k, s, p = fg.semidirect_product(act)
    w = pc.make_patch(pc.Cospan(k, s), pc.GRP)
    assert w is not None and np.array_equal(w.p.map, p.map)
    assert pc.is_exact_patch(w)
    # split extensions of groups are stable under pullback
    assert pc.is_stable_patch(w, 4, pc.GRP)


def test_grp_not_a_patch_when_not_jointly_epi():
    z2 = fg.cyclic(2)
    v4 = fg.direct_product(z2, z2)
    i1, _, _, _ = fg.product_maps(v4)
    c = pc.Cospan(fg.zero_hom(z2, v4), i1)
    assert not pc.is_patch(c, pc.GRP)


def test_ab_biproduct_stable_by_search():
    z2, z4 = fg.cyclic(2), fg.cyclic(4)
    w = pc.coproduct_patch(z4, z2, pc.AB)
    assert pc.is_exact_patch(w)
    assert pc.is_stable_patch(w, 4, pc.AB, method="search")


def test_instance_mismatch():
    z2 = fg.cyclic(2)
    with pytest.raises(InstanceMismatch):
        pc.instance_of(pc.PSET.identity(P(2)), fg.identity_hom(z2))


def test_cospan_needs_shared_codomain():
    with pytest.raises(CodomainMismatch):
        pc.Cospan(pc.PSET.identity(P(2)), pc.PSET.identity(P(3)))
