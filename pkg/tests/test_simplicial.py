import numpy as np
import pytest

from xmodkit import actionsys as ax
from xmodkit import fingroup as fg
from xmodkit import pointedcat as pc
from xmodkit import simplicial as sx
from xmodkit.errors import PreconditionFailed


def xmods(max_order):
    out = []
    for X in fg.small_groups(max_order):
        for B in fg.small_groups(max_order):
            out.extend(ax.enumerate_crossed_modules(X, B))
    return out


XM4 = xmods(4)


def inversion_xmod():
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    act = [a for a in fg.enumerate_actions(z2, z3) if not a.is_trivial()][0]
    return ax.CrossedModule(act, fg.zero_hom(z3, z2))


def test_tower_orders():
    for cm in XM4[::5]:
        tw = sx.build_tower(ax.xmod_to_whitehead(cm), 3)
        x, b = cm.X.order, cm.B.order
        assert [L.F.obj.order for L in tw.levels] == [x ** (n + 1) * b for n in range(4)]
        assert all(tw.levels[n].B is tw.levels[n - 1].F.obj for n in range(1, 4))


def test_abelian_tower_closed_form():
    # the n-th level has base X^n + B
    z2, z3 = fg.cyclic(2), fg.cyclic(3)
    A = ax.ActionObject("ab", z2, z3)
    w = ax.pair_whitehead(A, fg.zero_hom(z2, z3))
    tw = sx.build_tower(w, 3)
    base = z3
    for n in range(1, 4):
        base = fg.direct_product(z2, base)
        assert tw.levels[n].X.order == 2
        assert fg.find_isomorphism(tw.levels[n].B, base, bound=32) is not None


def test_tower_report_passes():
    for cm in XM4[::3]:
        r = sx.tower_report(sx.build_tower(ax.xmod_to_whitehead(cm), 3))
        assert r.ok, r.failures()


def test_exhaustive_and_closed_form_towers_agree():
    for cm in XM4[::15]:
        w = ax.xmod_to_whitehead(cm)
        a = sx.build_tower(w, 2)
        b = sx.build_tower(w, 2, exhaustive=True)
        for n in (1, 2):
            assert a.whiteheads[n].u == b.whiteheads[n].u


@pytest.mark.parametrize("system", ["grp", "ab", "pset"])
def test_identities_all_pass(system):
    if system == "grp":
        ws = [ax.xmod_to_whitehead(cm) for cm in XM4[::4]]
    else:
        ws = [ax.pair_whitehead(A, h) for A in ax.enumerate_objects(system, 3)
              for h in A.instance.maps(A.X, A.B)][::3]
    for w in ws:
        r = sx.verify_identities(sx.truncation_from_whitehead(w))
        assert r.ok, [c.name for c in r.failures()]
        assert len(r) == 61


def test_row_counts_and_tag():
    t = sx.truncation_from_whitehead(ax.xmod_to_whitehead(inversion_xmod()))
    assert len(sx.simplicial_identities(t)) == 33
    rows = sx.category_rows(t)
    assert len(rows) == 12
    assert rows.checks[7].tag == "eta organic"
    assert rows.checks[7].name.startswith("row 8")


def test_mutated_m_fails_row_12():
    t = sx.truncation_from_whitehead(ax.xmod_to_whitehead(inversion_xmod()))
    m = t.named("m")
    arr = m.map.copy()
    i = len(arr) - 1
    arr[i] = (arr[i] + 1) % m.cod.order
    t.replace("m", fg.GroupHom(m.dom, m.cod, arr, check=False))
    rows = sx.category_rows(t)
    row12 = rows.checks[11]
    assert not row12.passed and row12.witness is not None


def test_associativity_legs():
    t = sx.truncation_from_whitehead(ax.xmod_to_whitehead(inversion_xmod()))
    for n in (1, 2):
        r = sx.associativity_report(t, n)
        assert r.ok and len(r) == 4


def test_identity_xmod_orders():
    z2 = fg.cyclic(2)
    w = ax.xmod_to_whitehead(ax.CrossedModule(fg.GroupAction(z2, z2, [[0, 1], [0, 1]]), fg.identity_hom(z2)))
    r = sx.verify_identities(sx.truncation_from_whitehead(w))
    assert r.meta["orders"] == [2, 4, 8, 16]


def test_pset_orders():
    A = ax.ActionObject("pset", pc.PointedSet(3), pc.PointedSet(2))
    w = ax.pair_whitehead(A, pc.PSET.zero_map(A.X, A.B))
    r = sx.verify_identities(sx.truncation_from_whitehead(w))
    assert r.ok and r.meta["orders"] == [2, 4, 6, 8]


def test_depth_checks():
    w = ax.xmod_to_whitehead(inversion_xmod())
    with pytest.raises(PreconditionFailed):
        sx.build_tower(w, 0)
    with pytest.raises(PreconditionFailed):
        sx.build_truncation(sx.build_tower(w, 2))


def test_derived_maps_are_morphisms():
    tw = sx.build_tower(ax.xmod_to_whitehead(inversion_xmod()), 3)
    for n in (1, 2, 3):
        for i in (0, 1, 2):
            if n + i > 3:
                continue
            f = sx.derived_face(tw, n, i)
            assert f.is_hom()
            if n + i <= 3 and n <= 2:
                assert sx.derived_degeneracy(tw, n, i).is_hom()
    assert np.array_equal((tw.alphas[1] @ tw.betas[1]).f2.map, np.arange(tw.levels[0].B.order))
