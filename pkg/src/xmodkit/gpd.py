"""Internal categories and groupoids in finite groups.

Conventions: ``C2 = {(f, g) : d f = c g}`` with the pairs in lexicographic
order, ``p1 (f, g) = f``, ``p2 (f, g) = g`` and ``m(f, g)`` the composite
"f after g", so ``d m = d p2`` and ``c m = c p1``.  In a group the
composite is forced to be ``f · e(d f)⁻¹ · g``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import actionsys as ax
from . import fingroup as fg
from . import pointedcat as pc
from . import simplicial as sx
from .errors import InstanceMismatch, InvariantViolation, NoIsomorphismFound, NotAGroupoid, WStarFailure
from .fingroup import INDEX, FiniteGroup, GroupAction, GroupHom
from .report import Report, compare_maps, is_identity_map

CATEGORY_ROWS = ["de=1", "ce=1", "p2e2=1", "me2=1", "me1=1", "p1e1=1",
              "cp2=dp1", "dp2=dm", "cp1=cm", "p2e1=ed", "p1e2=ec", "mm1=mm2"]


def _hom(dom, cod, arr) -> GroupHom:
    return GroupHom(dom, cod, arr, check=False)


class InternalCategory:
    """``(C0, C1, d, c, e, m)`` with ``m`` given on the computed ``C2``.

    ``m`` may be passed as a raw index array; it is not required to be a
    homomorphism, so that corrupted data can be reported rather than rejected.
    """

    def __init__(self, C0: FiniteGroup, C1: FiniteGroup, d: GroupHom, c: GroupHom, e: GroupHom, m=None):
        self.C0, self.C1, self.d, self.c, self.e = C0, C1, d, c, e
        self.instance = pc.instance_of(d, c, e)
        self.C2, self.p1, self.p2 = composable_pairs(d, c)
        P = self.C2
        f = np.arange(C1.order)
        self.e1 = self.map(C1, P, fg.pair_index(P, f, e.map[d.map]))
        self.e2 = self.map(C1, P, fg.pair_index(P, e.map[c.map], f))
        if m is None:
            m = forced_composition(self)
        self.m = m if hasattr(m, "map") else self.map(P, C1, m)

    def map(self, dom, cod, arr):
        return self.instance.make_map(dom, cod, arr, check=False)

    def __repr__(self) -> str:
        return f"InternalCategory(C0={self.C0.name}, C1 order {self.C1.order})"

    def pair(self, f, g):
        return fg.pair_index(self.C2, f, g)

    def composable_triples(self):
        return composable_triples(self)


def composable_pairs(d: GroupHom, c: GroupHom):
    """``C2`` as the pullback of ``d`` along ``c`` with projections ``p1, p2``."""
    return pc.instance_of(d, c).pullback(d, c)


def forced_composition(cat: InternalCategory) -> np.ndarray:
    """``f · e(d f)⁻¹ · g``; groups only."""
    C1 = cat.C1
    f, g = cat.p1.map, cat.p2.map
    return C1.mul(C1.mul(f, C1.inv[cat.e.map[cat.d.map[f]]]), g)


@dataclass
class Triples:
    """Composable triples as index pairs; the groups are built only when ``m`` is a homomorphism."""
    first: tuple            # (a, b) with p2 a = m b
    second: tuple           # (a, b) with p2 a = p1 b
    m2: np.ndarray          # m2(a, b) = (m(p1 a, p1 b), p2 b), -1 where not composable
    comparison: np.ndarray  # first presentation -> second, -1 if undefined
    C3: object = None
    C3b: object = None


def _pair_arrays(f, g):
    return np.nonzero(f.map[:, None] == g.map[None, :])


def composable_triples(cat: InternalCategory) -> Triples:
    """Both presentations of composable triples and the comparison between them.

    First: the pullback of ``m`` along ``p2``, pairs ``(a, b)`` with ``p2 a = m b``.
    Second: the pullback of ``p1`` along ``p2``, pairs ``(a, b)`` with ``p2 a = p1 b``.
    """
    a, b = _pair_arrays(cat.p2, cat.m)
    a2, b2 = _pair_arrays(cat.p2, cat.p1)
    p1, p2, m = cat.p1.map, cat.p2.map, cat.m.map
    inner = cat.pair(p1[a], p1[b])
    m2 = np.where(inner >= 0, cat.pair(m[np.maximum(inner, 0)], p2[b]), -1)
    n2 = cat.C2.order
    lookup = np.full(n2 * n2, -1, dtype=INDEX)
    lookup[a2 * n2 + b2] = np.arange(a2.size)
    comp = np.where(inner >= 0, lookup[np.maximum(inner, 0) * n2 + b], -1)
    t = Triples((a, b), (a2, b2), m2, comp)
    if cat.m.is_hom():
        t.C3 = cat.instance.pullback(cat.p2, cat.m)[0]
        t.C3b = cat.instance.pullback(cat.p2, cat.p1)[0]
    return t


def is_internal_category(cat: InternalCategory) -> Report:
    """The twelve equations in internal-category form, plus ``m`` being a homomorphism."""
    r = Report()
    C0, C1 = cat.C0, cat.C1
    one0 = np.arange(C0.order)
    one1 = np.arange(C1.order)
    d, c, e, m = cat.d.map, cat.c.map, cat.e.map, cat.m.map
    p1, p2, e1, e2 = cat.p1.map, cat.p2.map, cat.e1.map, cat.e2.map

    def eq(name, lhs, rhs, tag=""):
        lhs, rhs = np.asarray(lhs), np.asarray(rhs)
        bad = np.flatnonzero(lhs != rhs) if lhs.shape == rhs.shape else np.array([-1])
        w = None if bad.size == 0 else (int(bad[0]),)
        r.add(name, w is None, w, tag)

    valid_m = (m >= 0) & (m < C1.order)
    ms = np.where(valid_m, m, 0)
    r.add("m in range", bool(valid_m.all()), None if valid_m.all() else int(np.flatnonzero(~valid_m)[0]))
    eq("de=1", d[e], one0)
    eq("ce=1", c[e], one0)
    eq("p2e2=1", p2[e2], one1)
    eq("me2=1", ms[e2], one1)
    eq("me1=1", ms[e1], one1)
    eq("p1e1=1", p1[e1], one1)
    eq("cp2=dp1", c[p2], d[p1])
    eq("dp2=dm", d[p2], d[ms], "eta organic")
    eq("cp1=cm", c[p1], c[ms])
    eq("p2e1=ed", p2[e1], e[d])
    eq("p1e2=ec", p1[e2], e[c])
    if valid_m.all():
        t = composable_triples(cat)
        defined = t.m2 >= 0
        lhs = m[t.first[0]]
        rhs = np.where(defined, m[np.maximum(t.m2, 0)], -1)
        eq("mm1=mm2", lhs, rhs)
        ok_cmp = (bool((t.comparison >= 0).all()) and t.comparison.size == t.second[0].size
                  and np.unique(t.comparison).size == t.comparison.size)
        if ok_cmp and t.C3 is not None:
            ok_cmp = cat.map(t.C3, t.C3b, t.comparison).is_hom()
        r.add("C3 presentations isomorphic", ok_cmp)
        w = cat.m.hom_failure()
        r.add("m homomorphism", w is None, w)
    else:
        r.add("mm1=mm2", False, "m out of range")
        r.add("C3 presentations isomorphic", False)
        r.add("m homomorphism", False)
    for name, f in (("d", cat.d), ("c", cat.c), ("e", cat.e)):
        w = f.hom_failure()
        r.add(f"{name} homomorphism", w is None, w)
    return r


@dataclass
class GroupoidWitness:
    cat: InternalCategory
    inv: GroupHom

    def failure(self):
        cat, inv = self.cat, self.inv.map
        d, c, e, m = cat.d.map, cat.c.map, cat.e.map, cat.m.map
        f = np.arange(cat.C1.order)
        if not np.array_equal(d[inv], c) or not np.array_equal(c[inv], d):
            return "d inv = c, c inv = d"
        if not np.array_equal(m[cat.pair(f, inv)], e[c]):
            return "m(f, inv f) = e c f"
        if not np.array_equal(m[cat.pair(inv, f)], e[d]):
            return "m(inv f, f) = e d f"
        return None


def is_groupoid(cat: InternalCategory) -> GroupoidWitness | None:
    """Search each arrow for a two-sided inverse; the inverse map must be a homomorphism."""
    C1 = cat.C1
    d, c, e, m = cat.d.map, cat.c.map, cat.e.map, cat.m.map
    n = C1.order
    f = np.arange(n)[:, None]
    g = np.arange(n)[None, :]
    fg_pair = cat.pair(f, g)
    gf_pair = cat.pair(g, f)
    ok = (fg_pair >= 0) & (gf_pair >= 0)
    ok &= np.where(fg_pair >= 0, m[np.maximum(fg_pair, 0)], -1) == e[c][:, None]
    ok &= np.where(gf_pair >= 0, m[np.maximum(gf_pair, 0)], -1) == e[d][:, None]
    if not ok.any(axis=1).all():
        return None
    inv = np.argmax(ok, axis=1)
    h = cat.map(C1, C1, inv)
    if not h.is_hom():
        return None
    w = GroupoidWitness(cat, h)
    return w if w.failure() is None else None


# --------------------------------------------------------------------------
# from Whitehead sequences


def _square_maps(tower, i):
    """The square at level ``i``: top ``π_i``, left ``F(α_i)``, right ``I(α_i)``, bottom ``π_{i-1}``."""
    L = tower.levels
    return ax.pi_bar(L[i]), ax.F_map(tower.alphas[i]), tower.alphas[i].f2, ax.pi_bar(L[i - 1])


def _pullback_of(inst, bottom, right):
    return inst.pullback(bottom, right)


def wstar_square(tower, i) -> tuple[bool, dict]:
    """Is the level-``i`` square a pullback?  Two independent routes; disagreement is an error."""
    top, left, right, bottom = _square_maps(tower, i)
    inst = tower.levels[0].instance
    P, pa, pb = _pullback_of(inst, bottom, right)
    top_obj = top.dom
    cmp = fg.pair_index(P, left.map, top.map)
    # route 1: the comparison map is a bijection
    route1 = bool((cmp >= 0).all()) and np.unique(cmp).size == P.order == top_obj.order
    # route 2: mediating arrows for every cone out of a cyclic test object
    route2 = _cone_search(top_obj, P, cmp, inst)
    if route1 != route2:
        raise InvariantViolation("pullback routes disagree", (i, route1, route2))
    return route1, {"order_top": top_obj.order, "order_pullback": P.order}


def _cone_search(T, P, cmp, inst) -> bool:
    """Cones from ``Z_n`` (or the two-point set) are elements of ``P`` of order dividing ``n``;
    count the mediating arrows into ``T`` for each."""
    if inst.name == "pset":
        counts = np.bincount(cmp[cmp >= 0], minlength=P.order)
        return bool((counts == 1).all()) and bool((cmp >= 0).all())
    t_orders = T.element_orders
    p_orders = P.element_orders
    for n in np.unique(p_orders).tolist():
        targets = np.flatnonzero(n % p_orders == 0)
        sources = np.flatnonzero(n % t_orders == 0)
        hit = cmp[sources]
        counts = np.bincount(hit[hit >= 0], minlength=P.order)
        if not (counts[targets] == 1).all():
            return False
    return True


def wstar_check(w: ax.WhiteheadSequence, depth: int = 3, tower=None) -> bool:
    if depth == 0:
        return True
    tower = tower or sx.build_tower(w, depth)
    return all(wstar_square(tower, i)[0] for i in range(1, depth + 1))


def from_whitehead(w: ax.WhiteheadSequence, tower=None) -> InternalCategory:
    """``C0 = I A``, ``C1 = F A``, ``d = π0``, ``c = I(α1)``, ``e = ι0``, ``m = I(α2)``."""
    tower = tower or sx.build_tower(w, 2)
    for i in (1, 2):
        ok, info = wstar_square(tower, i)
        if not ok:
            raise WStarFailure(i, f"|F A_{i}| = {info['order_top']}, pullback has {info['order_pullback']}")
    A = w.A
    d = ax.pi_bar(A)
    c = tower.alphas[1].f2
    e = A.F.s
    cat = InternalCategory(A.B, A.F.obj, d, c, e, m=np.zeros(1, dtype=INDEX))
    # C2 is identified with F A_1 through y -> (F(α1) y, π1 y)
    phi = cat.pair(ax.F_map(tower.alphas[1]).map, ax.pi_bar(tower.levels[1]).map)
    m = np.empty(cat.C2.order, dtype=INDEX)
    m[phi] = tower.alphas[2].f2.map
    cat.m = cat.map(cat.C2, cat.C1, m)
    cat.tower = tower
    return cat


def xmod_to_groupoid(cm: ax.CrossedModule) -> InternalCategory:
    return from_whitehead(ax.xmod_to_whitehead(cm))


# --------------------------------------------------------------------------
# back to Whitehead sequences


@dataclass
class RecoveredWhitehead:
    whitehead: ax.WhiteheadSequence
    rho: ax.ActionMorphism
    v_literal: ax.ActionMorphism
    v_direct: ax.ActionMorphism
    theta: GroupHom
    kernel_inclusion: GroupHom


def to_whitehead_detailed(gw: GroupoidWitness) -> RecoveredWhitehead:
    cat = gw.cat
    if cat.instance is not pc.GRP:
        raise InstanceMismatch("the reverse construction is implemented for groups")
    C0, C1 = cat.C0, cat.C1
    ker = fg.kernel(cat.d)
    X = ker.group
    incl = ker.inclusion.map
    idx = np.full(C1.order, -1, dtype=INDEX)
    idx[incl] = np.arange(X.order)
    e = cat.e.map

    def act(b, x):
        return idx[C1.conj(e[b], incl[x])]

    action = GroupAction(C0, X, apply=act, check=False)
    if action.failure() is not None:
        raise NotAGroupoid(f"kernel of d is not acted on: {action.failure()}")
    A = ax.ActionObject("grp", X, C0, GroupAction(C0, X, action.table, check=False), check=False)
    fd = A.F
    nb = C0.order
    ar = np.arange(fd.obj.order)
    # the point (d, e) realised as F A: (x, b) -> x e(b)
    theta_A = _hom(fd.obj, C1, C1.mul(incl[ar // nb], e[ar % nb]))
    u = ax.G_map(cat.c @ theta_A, "grp") @ ax.eta(A)
    u = ax.ActionMorphism(A, ax.functor_G(C0, "grp"), u.f1, u.f2, check=False)
    h = u.f1
    # cartesian lifting of h along A, and F A_h identified with ker(d p2)
    A_h, h_star = ax.cartesian_lifting(h, A)
    fh = A_h.F
    nx = X.order
    ar = np.arange(fh.obj.order)
    x1, x2 = incl[ar // nx], incl[ar % nx]
    first = C1.mul(x1, e[h.map[ar % nx]])
    theta = cat.pair(first, x2)
    if (theta < 0).any():
        raise NotAGroupoid("F A_h does not embed in the composable pairs")
    theta_h = _hom(fh.obj, cat.C2, theta)
    # J(m*) : F A_h -> J A, then rho = G J(m*) η
    jm = idx[cat.m.map[theta]]
    if (jm < 0).any():
        raise NotAGroupoid("m does not preserve the kernel of d")
    jm_hom = _hom(fh.obj, X, jm)
    eta_h = ax.eta(A_h)
    rho = ax.ActionMorphism(A_h, ax.functor_G(X, "grp"), jm_hom @ eta_h.f1, jm_hom @ eta_h.f2, check=False)
    if not (rho.is_morphism() and ax.is_iso_morphism(rho) and ax.jointly_conservative_at(rho)):
        raise NotAGroupoid("rho is not an isomorphism")
    rho_inv = ax.ActionMorphism(ax.functor_G(X, "grp"), A_h, rho.f1.inverse(), rho.f2.inverse(), check=False)
    v_lit = h_star @ rho_inv
    v_lit = ax.ActionMorphism(ax.functor_G(X, "grp"), A, v_lit.f1, v_lit.f2, check=False)
    v_dir = ax.ActionMorphism(ax.functor_G(X, "grp"), A, fg.identity_hom(X), h, check=False)
    if not (v_lit == v_dir):
        raise NotAGroupoid("the two constructions of v disagree")
    wseq = ax.WhiteheadSequence(A, u, v_lit)
    f = wseq.failure()
    if f is not None:
        raise NotAGroupoid(f"recovered data is not a Whitehead sequence: {f}")
    return RecoveredWhitehead(wseq, rho, v_lit, v_dir, theta_h, ker.inclusion)


def to_whitehead(gw: GroupoidWitness) -> ax.WhiteheadSequence:
    return to_whitehead_detailed(gw).whitehead


# --------------------------------------------------------------------------
# round trips


@dataclass
class RoundTripCertificate:
    kind: str                     # "xmod" or "groupoid"
    source: object
    groupoid: InternalCategory | None
    recovered: object
    isos: tuple = ()
    checks: Report = field(default_factory=Report)

    @property
    def ok(self) -> bool:
        return self.checks.ok


def xmod_iso(cm: ax.CrossedModule, cm2: ax.CrossedModule):
    """An isomorphism pair ``(φ_X, φ_B)`` commuting with ``h`` and the actions, or None."""
    t1, t2 = cm.action.table, cm2.action.table
    for pb in fg.isomorphisms(cm.B, cm2.B, bound=64):
        for px in fg.isomorphisms(cm.X, cm2.X, bound=64):
            if not np.array_equal(pb.map[cm.h.map], cm2.h.map[px.map]):
                continue
            if np.array_equal(px.map[t1], t2[pb.map[:, None], px.map[None, :]]):
                return px, pb
    return None


def roundtrip_check(cm: ax.CrossedModule) -> RoundTripCertificate:
    w = ax.xmod_to_whitehead(cm)
    cat = from_whitehead(w)
    rep = Report()
    rep.extend(is_internal_category(cat), "category: ")
    gw = is_groupoid(cat)
    rep.add("groupoid", gw is not None)
    if gw is None:
        raise NoIsomorphismFound("the constructed category is not a groupoid")
    rec = to_whitehead(gw)
    cm2 = ax.whitehead_to_xmod(rec)
    rep.add("recovered crossed module", ax.is_crossed_module(cm2.action, cm2.h))
    isos = xmod_iso(cm, cm2)
    rep.add("isomorphism found", isos is not None)
    if isos is None:
        raise NoIsomorphismFound(f"{cm!r} is not recovered")
    return RoundTripCertificate("xmod", cm, cat, cm2, isos, rep)


def category_iso(a: InternalCategory, b: InternalCategory):
    """``(φ0, φ1)`` commuting with ``d, c, e`` and ``m``, or None."""
    if a.C0.order != b.C0.order or a.C1.order != b.C1.order or a.C2.order != b.C2.order:
        return None
    for p1 in fg.isomorphisms(a.C1, b.C1, bound=max(64, a.C1.order)):
        p0 = p1.map[a.e.map]
        p0 = b.d.map[p0]
        phi0 = _hom(a.C0, b.C0, p0)
        if not phi0.is_bijective():
            continue
        if not (np.array_equal(b.d.map[p1.map], p0[a.d.map]) and np.array_equal(b.c.map[p1.map], p0[a.c.map])
                and np.array_equal(p1.map[a.e.map], b.e.map[p0])):
            continue
        f, g = a.p1.map, a.p2.map
        img = b.pair(p1.map[f], p1.map[g])
        if (img < 0).any():
            continue
        if np.array_equal(p1.map[a.m.map], b.m.map[img]):
            return phi0, p1
    return None


def roundtrip_check_gpd(gw: GroupoidWitness) -> RoundTripCertificate:
    rep = Report()
    rec = to_whitehead(gw)
    cm = ax.whitehead_to_xmod(rec)
    rep.add("recovered crossed module", ax.is_crossed_module(cm.action, cm.h))
    cat2 = from_whitehead(rec)
    rep.extend(is_internal_category(cat2), "rebuilt: ")
    isos = category_iso(gw.cat, cat2)
    rep.add("isomorphism found", isos is not None)
    if isos is None:
        raise NoIsomorphismFound("the groupoid is not recovered")
    return RoundTripCertificate("groupoid", gw, cat2, cm, isos, rep)


# --------------------------------------------------------------------------
# enumeration of internal groupoids


def _canon_orbit(C0, C1, aut0, aut1, key):
    e, d, c = (np.asarray(v) for v in key)
    out = set()
    for a in aut1:
        ainv = np.argsort(a)
        for b in aut0:
            binv = np.argsort(b)
            out.add((tuple(a[e[binv]].tolist()), tuple(b[d[ainv]].tolist()), tuple(b[c[ainv]].tolist())))
    return out


def enumerate_groupoids(max_c1: int = 8) -> list[GroupoidWitness]:
    """Internal groupoids with ``|C1| <= max_c1``, one per isomorphism class."""
    out = []
    for C1 in fg.small_groups(max_c1):
        _, aut1 = fg.automorphism_group(C1)
        for C0 in fg.small_groups(C1.order):
            if C1.order % C0.order:
                continue
            _, aut0 = fg.automorphism_group(C0)
            es = [e for e in fg.enumerate_homs(C0, C1) if e.is_injective()]
            back = fg.enumerate_homs(C1, C0)
            seen: set = set()
            one = np.arange(C0.order)
            for e in es:
                retr = [r for r in back if np.array_equal(r.map[e.map], one)]
                for d, c in itertools.product(retr, retr):
                    key = (tuple(e.map.tolist()), tuple(d.map.tolist()), tuple(c.map.tolist()))
                    if key in seen:
                        continue
                    seen |= _canon_orbit(C0, C1, aut0, aut1, key)
                    cat = InternalCategory(C0, C1, d, c, e)
                    if not cat.m.is_hom():
                        continue
                    gw = is_groupoid(cat)
                    if gw is not None and is_internal_category(cat).ok:
                        out.append(gw)
    return out


# --------------------------------------------------------------------------
# the exact-patch-with-h description of groupoids


def protomodular_diagram_check(patch, h: GroupHom) -> bool:
    """Whether both dashed fillers ``X×X -> Y`` and ``Y -> B×B`` exist."""
    return protomodular_fillers(patch, h) is not None


def protomodular_fillers(patch, h: GroupHom):
    k, s = patch.k, patch.point.s
    X, Y, B = k.dom, k.cod, s.dom
    XX = fg.direct_product(X, X)
    BB = fg.direct_product(B, B)
    nX, nB = X.order, B.order
    gx = list(X.generators)
    # φ⟨1,0⟩ = k and φ⟨1,1⟩ = s h
    gens = [x * nX for x in gx] + [x * nX + x for x in gx]
    imgs = [int(k.map[x]) for x in gx] + [int(s.map[h.map[x]]) for x in gx]
    phi = fg.extend_to_hom(XX, Y, gens, imgs)
    if phi is None:
        return None
    # ψ k = ⟨1,0⟩ h and ψ s = ⟨1,1⟩
    gens = [int(k.map[x]) for x in gx] + [int(s.map[b]) for b in B.generators]
    imgs = [int(h.map[x]) * nB for x in gx] + [b * nB + b for b in B.generators]
    psi = fg.extend_to_hom(Y, BB, gens, imgs)
    if psi is None:
        return None
    return _hom(XX, Y, phi), _hom(Y, BB, psi)


def fillers_by_search(patch, h: GroupHom) -> tuple[int, int]:
    """Count fillers by scanning every homomorphism (small orders only)."""
    k, s = patch.k, patch.point.s
    X, Y, B = k.dom, k.cod, s.dom
    XX = fg.direct_product(X, X)
    BB = fg.direct_product(B, B)
    nX, nB = X.order, B.order
    xs = np.arange(nX)
    bs = np.arange(B.order)
    n_phi = sum(1 for f in fg.enumerate_homs(XX, Y)
                if np.array_equal(f.map[xs * nX], k.map) and np.array_equal(f.map[xs * nX + xs], s.map[h.map]))
    n_psi = sum(1 for f in fg.enumerate_homs(Y, BB)
                if np.array_equal(f.map[k.map], h.map * nB) and np.array_equal(f.map[s.map], bs * nB + bs))
    return n_phi, n_psi


def action_of_patch(patch) -> GroupAction:
    """Conjugation by ``s(b)`` on ``k(X)``."""
    k, s = patch.k, patch.point.s
    Y = k.cod
    idx = np.full(Y.order, -1, dtype=INDEX)
    idx[k.map] = np.arange(k.dom.order)
    table = idx[Y.conj(s.map[:, None], k.map[None, :])]
    if (table < 0).any():
        raise InvariantViolation("exact patch", None, "k(X) is not normalised by s(B)")
    return GroupAction(s.dom, k.dom, table)


def identity_check(f) -> bool:
    return is_identity_map(f)


def compare(f, g):
    return compare_maps(f, g)
