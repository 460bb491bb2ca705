"""The tower of cartesian split epimorphisms and its 3-truncated simplicial object.

Starting from a Whitehead sequence ``(A, u, v)`` each step lifts
``ε F(u) : F A -> I A`` cartesianly to ``α : E -> A``, splits it by ``β``
with ``I(β) = I(η_A)`` and completes ``E`` to a Whitehead sequence
``(μ, ν)`` through the L-condition.  The objects of the simplicial
object are ``I A_0, F A_0, F A_1, F A_2``; since ``I A_n`` is literally the
object ``F A_{n-1}`` no comparison isomorphisms are needed.

Face and degeneracy indices (``d_i`` on level ``n``)::

    level 1:  d0 = I(α1)     d1 = π0
    level 2:  d0 = F(α1)     d1 = I(α2)    d2 = π1
    level 3:  d0 = F²(α1)    d1 = F(α2)    d2 = I(α3)   d3 = π2

    0 -> 1:   s0 = ι0
    1 -> 2:   s0 = F(β1)     s1 = ι1
    2 -> 3:   s0 = F²(β1)    s1 = F(β2)    s2 = ι2
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace

import numpy as np

from . import actionsys as ax
from .errors import PreconditionFailed
from .report import Report, compare_maps, is_identity_map

MAX_DEPTH = 4


@dataclass
class CartesianTower:
    levels: list                      # A_0 .. A_depth
    alphas: list                      # alphas[i] : A_i -> A_{i-1}, alphas[0] is None
    betas: list                       # betas[i] : A_{i-1} -> A_i
    whiteheads: list                  # Whitehead sequence on each A_i

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    @property
    def system(self) -> str:
        return self.levels[0].system


def tower_step(w: ax.WhiteheadSequence, exhaustive: bool = False):
    """One level: ``(alpha, beta, next Whitehead sequence)``."""
    A = w.A
    t = ax.transpose(A, w.u)
    E, alpha = ax.cartesian_lifting(t, A)
    beta = ax.factor(alpha, ax.identity_morphism(A), A.F.s)
    f = ax.eta(A)
    g = w.v @ ax.G_map(alpha.f1, A.system)
    mu, nu = ax.l_condition_instance(alpha, beta, f, g, exhaustive=exhaustive)
    return alpha, beta, ax.WhiteheadSequence(E, mu, nu)


def build_tower(w: ax.WhiteheadSequence, depth: int = 3, exhaustive: bool = False) -> CartesianTower:
    if depth < 1:
        raise PreconditionFailed("depth >= 1")
    w.validate()
    tower = CartesianTower([w.A], [None], [None], [w])
    for _ in range(depth):
        alpha, beta, nxt = tower_step(tower.whiteheads[-1], exhaustive)
        tower.levels.append(nxt.A)
        tower.alphas.append(alpha)
        tower.betas.append(beta)
        tower.whiteheads.append(nxt)
    return tower


def _is_identity_morphism(m) -> bool:
    return is_identity_map(m.f1) and is_identity_map(m.f2)


def tower_report(tower: CartesianTower) -> Report:
    """The determining equations of every level, plus cartesianness and the Whitehead axioms."""
    r = Report()
    sysname = tower.system
    w0 = tower.whiteheads[0]
    r.add("GI(alpha_1) eta_A = u",
          ax.G_map(tower.alphas[1].f2, sysname) @ ax.eta(tower.levels[0]) == w0.u)
    for i in range(1, tower.depth + 1):
        a, b = tower.alphas[i], tower.betas[i]
        prev = tower.levels[i - 1]
        r.add(f"alpha_{i} beta_{i} = 1", _is_identity_morphism(a @ b))
        r.add(f"I(beta_{i}) = I(eta_A{i - 1})", compare_maps(b.f2, prev.F.s) is None,
              compare_maps(b.f2, prev.F.s))
        r.add(f"alpha_{i} cartesian", ax.is_cartesian(a))
        r.add(f"J(alpha_{i}) iso", a.f1.is_bijective())
        wf = tower.whiteheads[i].failure()
        r.add(f"Whitehead A_{i}", wf is None, wf)
        if i < tower.depth:
            a1 = tower.alphas[i + 1]
            lhs = ax.G_map(a1.f2, sysname) @ ax.eta(tower.levels[i]) @ b
            r.add(f"GI(alpha_{i + 1}) eta_A{i} beta_{i} = eta_A{i - 1}", lhs == ax.eta(prev))
            r.add(f"I(alpha_{i + 1}) I(eta_A{i}) = 1", is_identity_map(a1.f2 @ tower.levels[i].F.s))
    return r


# --------------------------------------------------------------------------
# derived faces and degeneracies


def derived_face(tower: CartesianTower, n: int, i: int):
    """``F^i(α_n)``; ``F^0`` is ``I``."""
    a = tower.alphas[n]
    if i == 0:
        return a.f2
    if i == 1:
        return ax.F_map(a)
    if i == 2:
        if n + 1 > tower.depth:
            raise PreconditionFailed(f"tower depth >= {n + 1}")
        star = ax.factor(a, a @ tower.alphas[n + 1], ax.F_map(a))
        return ax.F_map(star)
    raise NotImplementedError("only F^0, F^1, F^2 are built")


def derived_degeneracy(tower: CartesianTower, n: int, i: int):
    """``F^i(β_n)``; ``F^0`` is ``I``."""
    b = tower.betas[n]
    if i == 0:
        return b.f2
    if i == 1:
        return ax.F_map(b)
    if i == 2:
        if n + 1 > tower.depth:
            raise PreconditionFailed(f"tower depth >= {n + 1}")
        star = ax.factor(tower.alphas[n + 1], ax.identity_morphism(tower.levels[n]), ax.F_map(b))
        return ax.F_map(star)
    raise NotImplementedError("only F^0, F^1, F^2 are built")


@dataclass
class SimplicialTruncation:
    objects: list                            # B_0 .. B_3
    faces: dict = field(default_factory=dict)        # (n, i) -> d_i : B_n -> B_{n-1}
    degeneracies: dict = field(default_factory=dict)  # (n, j) -> s_j : B_n -> B_{n+1}
    names: dict = field(default_factory=dict)        # display name -> ("d"|"s", n, i)
    tower: CartesianTower | None = None

    def named(self, name: str):
        kind, n, i = self.names[name]
        return (self.faces if kind == "d" else self.degeneracies)[(n, i)]

    def replace(self, name: str, new_map) -> None:
        kind, n, i = self.names[name]
        (self.faces if kind == "d" else self.degeneracies)[(n, i)] = new_map


FACE_NAMES = {
    (1, 0): "I(alpha_1)", (1, 1): "pi_0",
    (2, 0): "F(alpha_1)", (2, 1): "I(alpha_2)", (2, 2): "pi_1",
    (3, 0): "F2(alpha_1)", (3, 1): "F(alpha_2)", (3, 2): "I(alpha_3)", (3, 3): "pi_2",
}
DEGENERACY_NAMES = {
    (0, 0): "iota_0",
    (1, 0): "F(beta_1)", (1, 1): "iota_1",
    (2, 0): "F2(beta_1)", (2, 1): "F(beta_2)", (2, 2): "iota_2",
}


def build_truncation(tower: CartesianTower) -> SimplicialTruncation:
    if tower.depth < 3:
        raise PreconditionFailed("tower depth >= 3")
    L = tower.levels
    t = SimplicialTruncation([L[0].B, L[0].F.obj, L[1].F.obj, L[2].F.obj], tower=tower)
    pis = [ax.pi_bar(L[n]) for n in range(3)]
    iotas = [L[n].F.s for n in range(3)]
    t.faces = {
        (1, 0): derived_face(tower, 1, 0), (1, 1): pis[0],
        (2, 0): derived_face(tower, 1, 1), (2, 1): derived_face(tower, 2, 0), (2, 2): pis[1],
        (3, 0): derived_face(tower, 1, 2), (3, 1): derived_face(tower, 2, 1),
        (3, 2): derived_face(tower, 3, 0), (3, 3): pis[2],
    }
    t.degeneracies = {
        (0, 0): iotas[0],
        (1, 0): derived_degeneracy(tower, 1, 1), (1, 1): iotas[1],
        (2, 0): derived_degeneracy(tower, 1, 2), (2, 1): derived_degeneracy(tower, 2, 1), (2, 2): iotas[2],
    }
    t.names = {v: ("d", *k) for k, v in FACE_NAMES.items()}
    t.names.update({v: ("s", *k) for k, v in DEGENERACY_NAMES.items()})
    t.names["m"] = ("d", 2, 1)
    return t


# --------------------------------------------------------------------------
# identities


def _ident(B):
    return SimpleNamespace(dom=B, cod=B, map=np.arange(B.order))


def _eq(r: Report, name: str, lhs, rhs, tag: str = "") -> None:
    w = compare_maps(lhs, rhs)
    r.add(name, w is None, w, tag)


def simplicial_identities(t: SimplicialTruncation) -> Report:
    """Every face/degeneracy identity that fits inside levels 0..3 (9 + 20 + 4 rows)."""
    r = Report()
    d, s = t.faces, t.degeneracies
    for n in (2, 3):
        for j in range(n + 1):
            for i in range(j):
                _eq(r, f"d{i}d{j}=d{j - 1}d{i} @{n}", d[(n - 1, i)] @ d[(n, j)],
                    d[(n - 1, j - 1)] @ d[(n, i)])
    for n in range(3):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d[(n + 1, i)] @ s[(n, j)]
                name = f"d{i}s{j} @{n}"
                if i < j:
                    rhs = s[(n - 1, j - 1)] @ d[(n, i)]
                elif i in (j, j + 1):
                    rhs = _ident(t.objects[n])
                else:
                    rhs = s[(n - 1, j)] @ d[(n, i - 1)]
                _eq(r, name, lhs, rhs)
    for n in range(2):
        for j in range(n + 1):
            for i in range(j + 1):
                _eq(r, f"s{i}s{j}=s{j + 1}s{i} @{n}", s[(n + 1, i)] @ s[(n, j)],
                    s[(n + 1, j + 1)] @ s[(n, i)])
    return r


ROWS = [
    (1, "de=1", "pi_0 iota_0 = 1"),
    (2, "ce=1", "I(alpha_1) iota_0 = 1"),
    (3, "p2e2=1", "pi_1 iota_1 = 1"),
    (4, "me2=1", "m iota_1 = 1"),
    (5, "me1=1", "m F(beta_1) = 1"),
    (6, "p1e1=1", "F(alpha_1) F(beta_1) = 1"),
    (7, "cp2=dp1", "I(alpha_1) pi_1 = pi_0 F(alpha_1)"),
    (8, "dp2=dm", "pi_0 pi_1 = pi_0 m"),
    (9, "cp1=cm", "I(alpha_1) F(alpha_1) = I(alpha_1) I(alpha_2)"),
    (10, "p2e1=ed", "pi_1 F(beta_1) = iota_0 pi_0"),
    (11, "p1e2=ec", "F(alpha_1) iota_1 = iota_0 I(alpha_1)"),
    (12, "mm1=mm2", "I(alpha_2) F(alpha_2) = I(alpha_2) I(alpha_3)"),
]


def category_rows(t: SimplicialTruncation) -> Report:
    n = t.named
    one0, one1 = _ident(t.objects[0]), _ident(t.objects[1])
    sides = {
        1: (n("pi_0") @ n("iota_0"), one0),
        2: (n("I(alpha_1)") @ n("iota_0"), one0),
        3: (n("pi_1") @ n("iota_1"), one1),
        4: (n("m") @ n("iota_1"), one1),
        5: (n("m") @ n("F(beta_1)"), one1),
        6: (n("F(alpha_1)") @ n("F(beta_1)"), one1),
        7: (n("I(alpha_1)") @ n("pi_1"), n("pi_0") @ n("F(alpha_1)")),
        8: (n("pi_0") @ n("pi_1"), n("pi_0") @ n("m")),
        9: (n("I(alpha_1)") @ n("F(alpha_1)"), n("I(alpha_1)") @ n("I(alpha_2)")),
        10: (n("pi_1") @ n("F(beta_1)"), n("iota_0") @ n("pi_0")),
        11: (n("F(alpha_1)") @ n("iota_1"), n("iota_0") @ n("I(alpha_1)")),
        12: (n("I(alpha_2)") @ n("F(alpha_2)"), n("I(alpha_2)") @ n("I(alpha_3)")),
    }
    r = Report()
    for row, cat_name, simp_name in ROWS:
        lhs, rhs = sides[row]
        _eq(r, f"row {row}: {cat_name} [{simp_name}]", lhs, rhs, "eta organic" if row == 8 else "")
    return r


def associativity_report(t: SimplicialTruncation, n: int = 1) -> Report:
    """``I(α_n) F(α_n) = I(α_n α_{n+1})`` and the two legs of its proof."""
    tw = t.tower
    a, a1 = tw.alphas[n], tw.alphas[n + 1]
    Ia = a.f2
    Fa = ax.F_map(a)
    Iaa = (a @ a1).f2
    Fb = ax.F_map(tw.betas[n])
    iota = tw.levels[n].F.s
    r = Report()
    _eq(r, f"I(alpha_{n}) F(alpha_{n}) = I(alpha_{n} alpha_{n + 1})", Ia @ Fa, Iaa)
    _eq(r, f"leg F(beta_{n})", Ia @ Fa @ Fb, Iaa @ Fb)
    _eq(r, f"leg iota_{n}", Ia @ Fa @ iota, Iaa @ iota)
    inst = tw.levels[0].instance
    r.add(f"(F(beta_{n}), iota_{n}) jointly epimorphic", inst.jointly_epimorphic(Fb, iota))
    return r


def proposition_conditions(t: SimplicialTruncation) -> Report:
    tw = t.tower
    r = Report()
    for n in range(1, tw.depth + 1):
        r.add(f"IA_{n} = FA_{n - 1}", tw.levels[n].B is tw.levels[n - 1].F.obj)
        r.add(f"I(alpha_{n}) iota_{n - 1} = 1", is_identity_map(tw.alphas[n].f2 @ tw.levels[n - 1].F.s))
        if n < tw.depth:
            r.add(f"I(alpha_{n + 1}) F(beta_{n}) = 1",
                  is_identity_map(tw.alphas[n + 1].f2 @ ax.F_map(tw.betas[n])))
    return r


def verify_identities(t: SimplicialTruncation, full: bool = True) -> Report:
    """Simplicial identities and the twelve category rows; with ``full`` also the side conditions."""
    r = Report()
    r.extend(simplicial_identities(t), "simplicial: ")
    r.extend(category_rows(t), "category ")
    if full and t.tower is not None:
        for n in (1, 2):
            r.extend(associativity_report(t, n), "associativity: ")
        r.extend(proposition_conditions(t), "condition: ")
    r.meta["orders"] = [b.order for b in t.objects]
    return r


def truncation_from_whitehead(w: ax.WhiteheadSequence) -> SimplicialTruncation:
    return build_truncation(build_tower(w, 3))
