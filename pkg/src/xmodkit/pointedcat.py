"""Pointed-category structure over groups, abelian groups and pointed sets.

The three instances are strategy objects ``GRP``, ``AB`` and ``PSET`` that
know how to enumerate objects and maps, and how to form kernels,
pullbacks and (where finite) coproducts.  Patches and points are plain
records over any of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import fingroup as fg
from .errors import BoundTooSmall, CodomainMismatch, InstanceMismatch, InvariantViolation
from .fingroup import INDEX, FiniteGroup, GroupHom, frozen


class PointedSet:
    """A finite set ``0..order-1`` with basepoint 0."""

    def __init__(self, order: int, name: str | None = None):
        if order < 1:
            raise InvariantViolation("PointedSet", order, "needs at least the basepoint")
        self.order = int(order)
        self.name = name or f"P{order}"

    def __repr__(self) -> str:
        return f"PointedSet({self.order})"

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, PointedSet) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("pset", self.order))

    def elements(self) -> range:
        return range(self.order)


class PointedMap:
    """A basepoint-preserving map; the interface mirrors :class:`GroupHom`."""

    def __init__(self, dom: PointedSet, cod: PointedSet, map, check: bool = True):
        self.dom = dom
        self.cod = cod
        self.map = frozen(map)
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"PointedMap({self.dom.order} -> {self.cod.order}, {self.map.tolist()})"

    def __call__(self, a):
        return self.map[a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointedMap):
            return NotImplemented
        return self.cod.order == other.cod.order and bool(np.array_equal(self.map, other.map))

    __hash__ = None  # type: ignore[assignment]

    def __matmul__(self, other: "PointedMap") -> "PointedMap":
        if other.cod.order != self.dom.order:
            raise CodomainMismatch(f"cannot compose {self!r} after {other!r}")
        return PointedMap(other.dom, self.cod, self.map[other.map], check=False)

    def hom_failure(self):
        m = self.map
        if m.shape != (self.dom.order,):
            return ("length", int(m.shape[0]))
        if m.min(initial=0) < 0 or m.max(initial=0) >= self.cod.order:
            return ("range", int(np.flatnonzero((m < 0) | (m >= self.cod.order))[0]))
        if m[0] != 0:
            return ("basepoint", 0)
        return None

    def is_hom(self) -> bool:
        return self.hom_failure() is None

    def validate(self) -> None:
        w = self.hom_failure()
        if w is not None:
            raise InvariantViolation("PointedMap", w)

    def image(self) -> np.ndarray:
        return np.unique(self.map)

    def is_injective(self) -> bool:
        return np.unique(self.map).size == self.dom.order

    def is_surjective(self) -> bool:
        return self.image().size == self.cod.order

    def is_bijective(self) -> bool:
        return self.dom.order == self.cod.order and self.is_injective()

    def is_zero(self) -> bool:
        return not self.map.any()

    def inverse(self) -> "PointedMap":
        if not self.is_bijective():
            raise InvariantViolation("bijective", None, "map is not invertible")
        inv = np.empty(self.cod.order, dtype=INDEX)
        inv[self.map] = np.arange(self.dom.order, dtype=INDEX)
        return PointedMap(self.cod, self.dom, inv, check=False)


# --------------------------------------------------------------------------
# instance strategies


class _Instance:
    name = ""
    map_type: type = GroupHom

    def __repr__(self) -> str:
        return self.name.upper()

    def make_map(self, dom, cod, arr, check: bool = True):
        return self.map_type(dom, cod, arr, check=check)

    def identity(self, obj):
        return self.map_type(obj, obj, np.arange(obj.order), check=False)

    def zero_map(self, dom, cod):
        return self.map_type(dom, cod, np.zeros(dom.order), check=False)

    def is_iso(self, f) -> bool:
        return f.is_bijective()

    def same_object(self, a, b) -> bool:
        return a is b or fg.same_group(a, b)

    def check_map(self, f) -> None:
        if not isinstance(f, self.map_type):
            raise InstanceMismatch(f"{f!r} is not a {self.name} map")

    def coproduct(self, X, B):
        raise NotImplementedError(f"{self.name} has no finite coproducts here")

    def pair_into(self, P, f, g):
        """``⟨f, g⟩ : dom -> P`` for a pullback object ``P``."""
        return self.make_map(f.dom, P, fg.pair_index(P, f.map, g.map), check=False)


class _Grp(_Instance):
    name = "grp"
    map_type = GroupHom

    def objects(self, max_order: int) -> list[FiniteGroup]:
        return fg.small_groups(max_order)

    def maps(self, dom, cod) -> list[GroupHom]:
        return fg.enumerate_homs(dom, cod)

    def kernel(self, f):
        w = fg.kernel(f)
        return w.group, w.inclusion

    def pullback(self, f, g):
        return fg.pullback(f, g)

    def jointly_epimorphic(self, k, s) -> bool:
        if k.cod.order != s.cod.order:
            raise CodomainMismatch("jointly_epimorphic needs a shared codomain")
        gens = np.union1d(k.image(), s.image())
        return k.cod.closure(gens.tolist()).size == k.cod.order


class _Ab(_Grp):
    name = "ab"

    def objects(self, max_order: int) -> list[FiniteGroup]:
        return fg.small_groups(max_order, abelian_only=True)

    def coproduct(self, X, B):
        """The biproduct ``X ⊕ B`` with its injections."""
        S = fg.direct_product(X, B)
        iX, iB, _, _ = fg.product_maps(S)
        return S, iX, iB

    def copair(self, S, f, g):
        """``[f, g] : X ⊕ B -> Y``."""
        n = g.dom.order
        ar = np.arange(S.order)
        return GroupHom(S, f.cod, f.cod.mul(f.map[ar // n], g.map[ar % n]), check=False)


class _PSet(_Instance):
    name = "pset"
    map_type = PointedMap

    def same_object(self, a, b) -> bool:
        return a.order == b.order

    def objects(self, max_order: int) -> list[PointedSet]:
        return [PointedSet(n) for n in range(1, max_order + 1)]

    def maps(self, dom, cod) -> list[PointedMap]:
        out = []
        for tail in itertools.product(range(cod.order), repeat=dom.order - 1):
            out.append(PointedMap(dom, cod, (0, *tail), check=False))
        return out

    def kernel(self, f):
        fiber = np.flatnonzero(f.map == 0)
        K = PointedSet(fiber.size)
        return K, PointedMap(K, f.dom, fiber, check=False)

    def pullback(self, f, g):
        if f.cod.order != g.cod.order:
            raise CodomainMismatch("pullback needs a shared codomain")
        a_idx, b_idx = np.nonzero(f.map[:, None] == g.map[None, :])
        P = PointedSet(a_idx.size)
        fg.attach_pairs(P, a_idx, b_idx, f.dom.order, g.dom.order)
        return P, PointedMap(P, f.dom, a_idx, check=False), PointedMap(P, g.dom, b_idx, check=False)

    def jointly_epimorphic(self, k, s) -> bool:
        if k.cod.order != s.cod.order:
            raise CodomainMismatch("jointly_epimorphic needs a shared codomain")
        return np.union1d(k.image(), s.image()).size == k.cod.order

    def coproduct(self, X, B):
        """The wedge ``X ∨ B``: basepoint 0, then ``X \\ 0``, then ``B \\ 0``."""
        S = PointedSet(X.order + B.order - 1)
        iX = PointedMap(X, S, np.arange(X.order), check=False)
        iB = PointedMap(B, S, np.concatenate([[0], np.arange(1, B.order) + X.order - 1]), check=False)
        S.wedge_of = (X, B)
        return S, iX, iB

    def copair(self, S, f, g):
        nx = f.dom.order
        m = np.concatenate([f.map, g.map[1:]]) if nx else g.map
        assert m.size == S.order
        return PointedMap(S, f.cod, m, check=False)


GRP = _Grp()
AB = _Ab()
PSET = _PSet()
INSTANCES = {"grp": GRP, "ab": AB, "pset": PSET}


def instance_of(*maps, instance=None):
    if instance is not None:
        inst = INSTANCES[instance] if isinstance(instance, str) else instance
    else:
        inst = PSET if isinstance(maps[0], PointedMap) else GRP
    for f in maps:
        if not isinstance(f, inst.map_type):
            raise InstanceMismatch(f"{f!r} does not belong to {inst!r}")
    return inst


# --------------------------------------------------------------------------
# cospans, patches, points


@dataclass(frozen=True, eq=False)
class Cospan:
    k: object
    s: object

    def __post_init__(self):
        if self.k.cod.order != self.s.cod.order:
            raise CodomainMismatch("cospan legs must share a codomain")

    @property
    def X(self):
        return self.k.dom

    @property
    def Y(self):
        return self.k.cod

    @property
    def B(self):
        return self.s.dom


@dataclass(frozen=True, eq=False)
class PatchWitness:
    cospan: Cospan
    p: object

    @property
    def k(self):
        return self.cospan.k

    @property
    def s(self):
        return self.cospan.s

    def failure(self, instance=None):
        inst = instance_of(self.k, self.s, self.p, instance=instance)
        if not np.array_equal((self.p @ self.s).map, np.arange(self.s.dom.order)):
            return "ps = 1"
        if (self.p @ self.k).map.any():
            return "pk = 0"
        if not inst.jointly_epimorphic(self.k, self.s):
            return "jointly epimorphic"
        return None


@dataclass(frozen=True, eq=False)
class Point:
    Y: object
    B: object
    p: object
    s: object

    def validate(self) -> None:
        if not np.array_equal((self.p @ self.s).map, np.arange(self.B.order)):
            raise InvariantViolation("Point", None, "p s != 1")


@dataclass(frozen=True, eq=False)
class SplitExtension:
    point: Point
    X: object
    k: object

    def validate(self, instance=None) -> None:
        self.point.validate()
        inst = instance_of(self.k, self.point.p, instance=instance)
        fiber = np.flatnonzero(self.point.p.map == 0)
        if not (self.k.is_injective() and np.array_equal(self.k.image(), fiber)):
            raise InvariantViolation("SplitExtension", None, f"k is not the kernel of p ({inst!r})")

    def as_patch(self) -> PatchWitness:
        return PatchWitness(Cospan(self.k, self.point.s), self.point.p)


def jointly_epimorphic(k, s, instance=None) -> bool:
    return instance_of(k, s, instance=instance).jointly_epimorphic(k, s)


def patch_retraction(c: Cospan, instance=None):
    """The unique ``p`` with ``p s = 1`` and ``p k = 0``, or None."""
    inst = instance_of(c.k, c.s, instance=instance)
    if not inst.jointly_epimorphic(c.k, c.s):
        return None
    k, s = c.k, c.s
    if inst is PSET:
        p = np.full(c.Y.order, -1, dtype=INDEX)
        p[k.map] = 0
        for b in range(c.B.order):
            y = s.map[b]
            if p[y] not in (-1, b):
                return None
            p[y] = b
        return PointedMap(c.Y, c.B, p, check=False)
    gens = [int(k.map[x]) for x in c.X.generators] + [int(s.map[b]) for b in c.B.generators]
    imgs = [0] * len(c.X.generators) + list(c.B.generators)
    m = fg.extend_to_hom(c.Y, c.B, gens, imgs)
    if m is None:
        return None
    p = GroupHom(c.Y, c.B, m, check=False)
    if not np.array_equal(m[s.map], np.arange(c.B.order)) or m[k.map].any():
        return None
    return p


def make_patch(c: Cospan, instance=None) -> PatchWitness | None:
    p = patch_retraction(c, instance)
    return None if p is None else PatchWitness(c, p)


def is_patch(c: Cospan, instance=None) -> bool:
    return patch_retraction(c, instance) is not None


def is_exact_patch(w: PatchWitness, instance=None) -> bool:
    instance_of(w.k, w.s, w.p, instance=instance)
    fiber = np.flatnonzero(w.p.map == 0)
    return w.k.is_injective() and bool(np.array_equal(w.k.image(), fiber))


def point_pullback(w: PatchWitness, h, instance=None):
    """Pull the point ``(p, s)`` back along ``h : Z -> B``.

    Returns the pulled-back :class:`Point` over ``Z`` and the induced
    cospan ``X -> Y x_B Z <- Z`` with legs ``⟨k, 0⟩`` and ``⟨s h, 1⟩``.
    """
    inst = instance_of(w.p, h, instance=instance)
    if h.cod.order != w.p.cod.order:
        raise CodomainMismatch("h must land in the base of the point")
    P, p1, p2 = inst.pullback(w.p, h)
    Z = h.dom
    k2 = inst.pair_into(P, w.k, inst.zero_map(w.k.dom, Z))
    s2 = inst.pair_into(P, w.s @ h, inst.identity(Z))
    return Point(P, Z, p2, s2), Cospan(k2, s2)


def _stable_by_search(w: PatchWitness, bound: int, inst) -> tuple[bool, object]:
    B = w.s.dom
    for Z in inst.objects(bound):
        for h in inst.maps(Z, B):
            _, cosp = point_pullback(w, h, inst)
            if not is_patch(cosp, inst):
                return False, h
    return True, None


def is_stable_patch(w: PatchWitness, test_bound: int, instance=None, method: str = "auto") -> bool:
    """Stability of a patch, checked against every ``h : Z -> B`` with ``|Z| <= test_bound``.

    ``method`` is ``"search"``, ``"fast"`` (exact criteria for Ab and pointed
    sets) or ``"auto"`` (fast where available).
    """
    inst = instance_of(w.k, w.s, w.p, instance=instance)
    if test_bound < w.s.dom.order:
        raise BoundTooSmall(f"bound {test_bound} is below |B| = {w.s.dom.order}")
    if method != "search":
        if inst is AB:
            return True
        if inst is PSET and test_bound >= 2:
            return bool(np.all(w.k.map == 0))
        if method == "fast":
            raise ValueError(f"no fast criterion for {inst!r}")
    return _stable_by_search(w, test_bound, inst)[0]


def stability_counterexample(w: PatchWitness, test_bound: int, instance=None):
    inst = instance_of(w.k, w.s, w.p, instance=instance)
    return _stable_by_search(w, test_bound, inst)[1]


def coproduct_patch(X, B, instance) -> PatchWitness:
    inst = INSTANCES[instance] if isinstance(instance, str) else instance
    S, iX, iB = inst.coproduct(X, B)
    p = inst.copair(S, inst.zero_map(X, B), inst.identity(B))
    return PatchWitness(Cospan(iX, iB), p)
