"""Exact finite-group arithmetic over dense element indices.

Elements of a group of order ``n`` are the integers ``0..n-1`` and the
identity is always ``0``.  Groups read from a table keep that table;
groups built by products, semidirect products and subgroups keep a
vectorised multiplication instead and only materialise ``table`` on
request, so towers of semidirect products stay cheap.

Element encodings of constructed groups are fixed:

* direct product ``G x H``: ``(a, b) -> a * |H| + b``
* semidirect product ``X ⋊ B``: ``(x, b) -> x * |B| + b``
* subgroup / pullback: position in the sorted list of parent elements
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import (
    CodomainMismatch,
    InvariantViolation,
    NoIdentityAtZero,
    NotAssociative,
    NotLatinSquare,
    OrderTooLarge,
)

INDEX = np.int64
ISO_BOUND = 24
# full n^3 associativity check up to this order, Light's test above it
_BRUTE_ASSOC_LIMIT = 128


def frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=INDEX)
    arr.setflags(write=False)
    return arr


class FiniteGroup:
    """A finite group on ``0..order-1`` with identity ``0``.

    Use :func:`make_group` for user data; the constructor itself trusts
    its arguments.
    """

    def __init__(
        self,
        order: int,
        mul: Callable,
        inv: Sequence[int],
        generators: Sequence[int] | None = None,
        *,
        names: Sequence[str] | None = None,
        name: str | None = None,
        table: np.ndarray | None = None,
    ):
        self.order = int(order)
        self._mul = mul
        self.inv = frozen(inv)
        self.element_names = list(names) if names is not None else None
        self.name = name or f"G{self.order}"
        if table is not None:
            self.__dict__["table"] = table
        if generators is None:
            generators = self._greedy_generators()
        self.generators = tuple(int(g) for g in generators)

    def mul(self, a, b):
        return self._mul(a, b)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def table(self) -> np.ndarray:
        ar = np.arange(self.order, dtype=INDEX)
        t = np.asarray(self._mul(ar[:, None], ar[None, :]), dtype=INDEX)
        t.setflags(write=False)
        return t

    @cached_property
    def element_orders(self) -> np.ndarray:
        ar = np.arange(self.order, dtype=INDEX)
        orders = np.ones(self.order, dtype=INDEX)
        cur = ar.copy()
        k = 1
        while True:
            pending = cur != 0
            if not pending.any():
                break
            k += 1
            cur = np.where(pending, self._mul(cur, ar), 0)
            orders[pending] = k
        orders.setflags(write=False)
        return orders

    def name_of(self, a: int) -> str:
        if self.element_names is not None:
            return self.element_names[a]
        return str(int(a))

    def power(self, a: int, k: int) -> int:
        r = 0
        for _ in range(k % int(self.element_orders[a])):
            r = int(self._mul(r, a))
        return r

    def conj(self, b, x):
        """``b x b^-1``, vectorised."""
        return self._mul(self._mul(b, x), self.inv[b])

    def is_abelian(self) -> bool:
        gens = np.array(self.generators, dtype=INDEX)
        if gens.size == 0:
            return True
        return bool(np.array_equal(self._mul(gens[:, None], gens[None, :]),
                                   self._mul(gens[None, :], gens[:, None])))

    def closure(self, gens: Sequence[int]) -> np.ndarray:
        """Sorted elements of the subgroup generated by ``gens``."""
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        chosen: list[int] = []
        # only generators outside the current subgroup are kept, so at most
        # log2(order) breadth-first passes are needed
        for a in np.asarray(list(gens), dtype=INDEX).ravel().tolist():
            if seen[a]:
                continue
            chosen.append(a)
            g = np.asarray(chosen, dtype=INDEX)
            frontier = np.flatnonzero(seen).astype(INDEX)
            while frontier.size:
                nxt = np.asarray(self._mul(frontier[:, None], g[None, :]), dtype=INDEX).ravel()
                nxt = np.unique(nxt[~seen[nxt]])
                seen[nxt] = True
                frontier = nxt
            if seen.all():
                break
        return np.flatnonzero(seen).astype(INDEX)

    def _greedy_generators(self) -> list[int]:
        orders = self.element_orders
        # large orders first gives short generating lists
        candidates = sorted(range(1, self.order), key=lambda a: (-int(orders[a]), a))
        gens: list[int] = []
        inside = np.zeros(self.order, dtype=bool)
        inside[0] = True
        for a in candidates:
            if inside.all():
                break
            if not inside[a]:
                gens.append(a)
                inside[self.closure(gens)] = True
        return gens

    def validate(self) -> None:
        """Re-run the group axioms against the multiplication (raises on failure)."""
        check_group_table(self.table)


# --------------------------------------------------------------------------
# construction from tables


def _light_generators(t: np.ndarray) -> list[int]:
    """Generators of the magma on ``t`` (closure under the operation itself)."""
    n = t.shape[0]
    inside = np.zeros(n, dtype=bool)
    inside[0] = True
    gens: list[int] = []
    for a in range(1, n):
        if inside[a]:
            continue
        gens.append(a)
        cur = np.array(sorted(set([0, *gens]) | set(np.flatnonzero(inside).tolist())), dtype=INDEX)
        while True:
            prod = np.unique(t[np.ix_(cur, cur)])
            if prod.size == cur.size:
                break
            cur = prod
        inside[cur] = True
        if inside.all():
            break
    return gens


def check_group_table(t: np.ndarray) -> None:
    n = t.shape[0]
    ar = np.arange(n)
    if t.ndim != 2 or t.shape[1] != n:
        raise ValueError("table must be square")
    if t.min(initial=0) < 0 or t.max(initial=0) >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise NotLatinSquare((int(bad[0]), int(bad[1])), "entry out of range")
    if not np.array_equal(t[0], ar):
        raise NoIdentityAtZero(("row", 0), "row 0 is not the identity row")
    if not np.array_equal(t[:, 0], ar):
        raise NoIdentityAtZero(("column", 0), "column 0 is not the identity column")
    srt = np.sort(t, axis=1)
    bad_rows = np.flatnonzero((srt != ar[None, :]).any(axis=1))
    if bad_rows.size:
        raise NotLatinSquare(("row", int(bad_rows[0])))
    srt = np.sort(t, axis=0)
    bad_cols = np.flatnonzero((srt != ar[:, None]).any(axis=0))
    if bad_cols.size:
        raise NotLatinSquare(("column", int(bad_cols[0])))
    if n <= _BRUTE_ASSOC_LIMIT:
        left = t[t[:, :, None], ar[None, None, :]]     # (ab)c
        right = t[ar[:, None, None], t[None, :, :]]   # a(bc)
        bad = np.argwhere(left != right)
    else:
        # Light's test: the c with (ab)c = a(bc) for all a, b form a submagma
        bad = np.empty((0, 3), dtype=INDEX)
        for c in _light_generators(t):
            diff = np.argwhere(t[t, c] != t[ar[:, None], t[:, c][None, :]])
            if diff.size:
                bad = np.array([[diff[0][0], diff[0][1], c]])
                break
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative((a, b, c))


def make_group(table, names: Sequence[str] | None = None, name: str | None = None) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a group."""
    t = np.array(table, dtype=INDEX)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ValueError("table must be a non-empty square array")
    check_group_table(t)
    t.setflags(write=False)
    inv = np.argmin(t, axis=1)  # column with product 0
    return FiniteGroup(t.shape[0], lambda a, b: t[a, b], inv, names=names, name=name, table=t)


def as_table_group(g: FiniteGroup, name: str | None = None, names=None) -> FiniteGroup:
    t = g.table
    return FiniteGroup(g.order, lambda a, b: t[a, b], g.inv, g.generators,
                       names=names if names is not None else g.element_names,
                       name=name or g.name, table=t)


# --------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """A homomorphism given by the image of every element."""

    def __init__(self, dom: FiniteGroup, cod: FiniteGroup, map, check: bool = True):
        self.dom = dom
        self.cod = cod
        self.map = frozen(map)
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"GroupHom({self.dom.name} -> {self.cod.name}, {self.map.tolist()})"

    def __call__(self, a):
        return self.map[a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.dom.order == other.dom.order and self.cod.order == other.cod.order
                and bool(np.array_equal(self.map, other.map)))

    __hash__ = None  # type: ignore[assignment]

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """Composition ``self ∘ other``."""
        if other.cod.order != self.dom.order:
            raise CodomainMismatch(f"cannot compose {self!r} after {other!r}")
        return GroupHom(other.dom, self.cod, self.map[other.map], check=False)

    def hom_failure(self) -> tuple | None:
        """First witness against the homomorphism law, or None."""
        m = self.map
        if m.shape != (self.dom.order,):
            return ("length", int(m.shape[0]))
        if m.min(initial=0) < 0 or m.max(initial=0) >= self.cod.order:
            return ("range", int(np.flatnonzero((m < 0) | (m >= self.cod.order))[0]))
        if m[0] != 0:
            return ("identity", 0)
        ar = np.arange(self.dom.order, dtype=INDEX)
        for g in self.dom.generators:
            lhs = m[self.dom.mul(ar, g)]
            rhs = self.cod.mul(m, m[g])
            bad = np.flatnonzero(lhs != rhs)
            if bad.size:
                return ("multiplicative", int(bad[0]), g)
        return None

    def is_hom(self) -> bool:
        return self.hom_failure() is None

    def validate(self) -> None:
        w = self.hom_failure()
        if w is not None:
            raise InvariantViolation("GroupHom", w, f"{self.dom.name} -> {self.cod.name}")

    def image(self) -> np.ndarray:
        return np.unique(self.map)

    def is_injective(self) -> bool:
        return int(np.count_nonzero(self.map == 0)) == 1

    def is_surjective(self) -> bool:
        return self.image().size == self.cod.order

    def is_bijective(self) -> bool:
        return self.dom.order == self.cod.order and self.is_injective()

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise InvariantViolation("bijective", None, "hom is not invertible")
        inv = np.empty(self.cod.order, dtype=INDEX)
        inv[self.map] = np.arange(self.dom.order, dtype=INDEX)
        return GroupHom(self.cod, self.dom, inv, check=False)

    def is_zero(self) -> bool:
        return not self.map.any()


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, np.arange(g.order), check=False)


def zero_hom(dom: FiniteGroup, cod: FiniteGroup) -> GroupHom:
    return GroupHom(dom, cod, np.zeros(dom.order), check=False)


def extend_to_hom(dom: FiniteGroup, cod: FiniteGroup, gens: Sequence[int],
                  images: Sequence[int]) -> np.ndarray | None:
    """Extend ``gens[i] -> images[i]`` to a homomorphism.

    Returns the full map, or None when the assignment is inconsistent or
    ``gens`` does not generate ``dom``.  Every Cayley-graph edge is checked,
    so a returned map is a homomorphism.
    """
    g = np.asarray(list(gens), dtype=INDEX)
    img = np.asarray(list(images), dtype=INDEX)
    out = np.full(dom.order, -1, dtype=INDEX)
    out[0] = 0
    if g.size == 0:
        return out if dom.order == 1 else None
    frontier = np.array([0], dtype=INDEX)
    while frontier.size:
        z = np.asarray(dom.mul(frontier[:, None], g[None, :]), dtype=INDEX).ravel()
        v = np.asarray(cod.mul(out[frontier][:, None], img[None, :]), dtype=INDEX).ravel()
        known = out[z] >= 0
        if np.any(out[z[known]] != v[known]):
            return None
        zn, vn = z[~known], v[~known]
        if zn.size == 0:
            break
        order = np.lexsort((vn, zn))
        zn, vn = zn[order], vn[order]
        first = np.ones(zn.size, dtype=bool)
        first[1:] = zn[1:] != zn[:-1]
        # duplicates of the same new element must agree
        grp = np.cumsum(first) - 1
        if np.any(vn != vn[first][grp]):
            return None
        zn, vn = zn[first], vn[first]
        out[zn] = vn
        frontier = zn
    if np.any(out < 0):
        return None
    return out


def _hom_candidates(dom: FiniteGroup, cod: FiniteGroup, exact_order: bool) -> list[np.ndarray]:
    co = cod.element_orders
    cands = []
    for g in dom.generators:
        go = int(dom.element_orders[g])
        if exact_order:
            cands.append(np.flatnonzero(co == go))
        else:
            cands.append(np.flatnonzero(go % co == 0))
    return cands


def enumerate_homs(dom: FiniteGroup, cod: FiniteGroup) -> list[GroupHom]:
    """All homomorphisms ``dom -> cod`` in lexicographic order of their maps."""
    maps = []
    gens = dom.generators
    for imgs in itertools.product(*_hom_candidates(dom, cod, exact_order=False)):
        m = extend_to_hom(dom, cod, gens, imgs)
        if m is not None:
            maps.append(tuple(m.tolist()))
    maps.sort()
    return [GroupHom(dom, cod, m, check=False) for m in maps]


def _order_profile(g: FiniteGroup) -> tuple:
    return tuple(sorted(g.element_orders.tolist()))


def isomorphisms(g: FiniteGroup, h: FiniteGroup, bound: int = ISO_BOUND) -> Iterator[GroupHom]:
    """All isomorphisms ``g -> h``, by backtracking over generator images."""
    if max(g.order, h.order) > bound:
        raise OrderTooLarge(f"isomorphism search bound {bound} < {max(g.order, h.order)}")
    if g.order != h.order or _order_profile(g) != _order_profile(h):
        return
    gens = g.generators
    for imgs in itertools.product(*_hom_candidates(g, h, exact_order=True)):
        if len(set(imgs)) != len(imgs):
            continue
        m = extend_to_hom(g, h, gens, imgs)
        if m is not None and np.unique(m).size == h.order:
            yield GroupHom(g, h, m, check=False)


def find_isomorphism(g: FiniteGroup, h: FiniteGroup, bound: int = ISO_BOUND) -> GroupHom | None:
    return next(isomorphisms(g, h, bound), None)


def automorphism_group(g: FiniteGroup, bound: int = ISO_BOUND) -> tuple[FiniteGroup, list[np.ndarray]]:
    """Aut(g) as a table group whose element ``i`` is the permutation ``perms[i]``.

    Multiplication is composition, ``(σ·τ)(x) = σ(τ(x))``; index 0 is the identity.
    """
    perms = sorted((tuple(a.map.tolist()) for a in isomorphisms(g, g, bound)))
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = [[index[tuple(perms[i][x] for x in perms[j])] for j in range(n)] for i in range(n)]
    arrs = [frozen(p) for p in perms]
    names = ["[" + ",".join(map(str, p)) + "]" for p in perms]
    return make_group(table, names=names, name=f"Aut({g.name})"), arrs


# --------------------------------------------------------------------------
# subgroups, kernels, products, pullbacks


@dataclass(frozen=True, eq=False)
class SubgroupWitness:
    parent: FiniteGroup
    elements: np.ndarray
    inclusion: GroupHom

    @property
    def group(self) -> FiniteGroup:
        return self.inclusion.dom

    def is_normal(self) -> bool:
        inside = np.zeros(self.parent.order, dtype=bool)
        inside[self.elements] = True
        for g in self.parent.generators:
            if not inside[self.parent.conj(g, self.elements)].all():
                return False
        return True


def subgroup(parent: FiniteGroup, elements, name: str | None = None) -> SubgroupWitness:
    """Wrap a subset already known to be a subgroup."""
    el = frozen(np.unique(np.asarray(elements, dtype=INDEX)))
    index = np.full(parent.order, -1, dtype=INDEX)
    index[el] = np.arange(el.size, dtype=INDEX)
    inside = index >= 0

    gens: list[int] = []
    covered = np.zeros(parent.order, dtype=bool)
    covered[0] = True
    orders = parent.element_orders
    for a in sorted(el.tolist(), key=lambda a: (-int(orders[a]), a)):
        if covered[el].all():
            break
        if not covered[a]:
            gens.append(a)
            covered[parent.closure(gens)] = True
    if not inside[covered].all():
        raise InvariantViolation("subgroup", None, "subset is not closed")

    def mul(a, b):
        return index[parent.mul(el[a], el[b])]

    names = None
    if parent.element_names is not None:
        names = [parent.element_names[a] for a in el.tolist()]
    g = FiniteGroup(el.size, mul, index[parent.inv[el]], [int(index[a]) for a in gens],
                    names=names, name=name or f"sub({parent.name})")
    return SubgroupWitness(parent, el, GroupHom(g, parent, el, check=False))


def kernel(f: GroupHom) -> SubgroupWitness:
    return subgroup(f.dom, np.flatnonzero(f.map == 0), name=f"ker({f.dom.name}->{f.cod.name})")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    m = h.order

    def mul(a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        return g.mul(a // m, b // m) * m + h.mul(a % m, b % m)

    inv = g.inv[np.arange(g.order * m) // m] * m + h.inv[np.arange(g.order * m) % m]
    gens = [a * m for a in g.generators] + list(h.generators)
    names = None
    if g.element_names is not None or h.element_names is not None:
        names = [f"({g.name_of(a)},{h.name_of(b)})" for a in range(g.order) for b in range(m)]
    p = FiniteGroup(g.order * m, mul, inv, gens, names=names, name=name or f"{g.name}x{h.name}")
    p.factors = (g, h)
    return p


def product_maps(p: FiniteGroup) -> tuple[GroupHom, GroupHom, GroupHom, GroupHom]:
    """Injections ``(i1, i2)`` and projections ``(p1, p2)`` of a direct product."""
    g, h = p.factors
    m = h.order
    ar = np.arange(p.order)
    return (GroupHom(g, p, np.arange(g.order) * m, check=False),
            GroupHom(h, p, np.arange(m), check=False),
            GroupHom(p, g, ar // m, check=False),
            GroupHom(p, h, ar % m, check=False))


def pullback(f: GroupHom, g: GroupHom) -> tuple[FiniteGroup, GroupHom, GroupHom]:
    """``{(a, b) : f(a) = g(b)}`` with its projections; pairs in lexicographic order."""
    if f.cod is not g.cod and not same_group(f.cod, g.cod):
        raise CodomainMismatch("pullback needs a shared codomain")
    a_idx, b_idx = np.nonzero(f.map[:, None] == g.map[None, :])
    prod = direct_product(f.dom, g.dom)
    sub = subgroup(prod, a_idx * g.dom.order + b_idx,
                   name=f"{f.dom.name}x_{f.cod.name}{g.dom.name}")
    p = sub.group
    attach_pairs(p, a_idx, b_idx, f.dom.order, g.dom.order)
    return p, GroupHom(p, f.dom, a_idx, check=False), GroupHom(p, g.dom, b_idx, check=False)


def attach_pairs(p, a_idx, b_idx, na: int, nb: int) -> None:
    """Record which pair each element of a pullback object is."""
    p.pair_of = (frozen(a_idx), frozen(b_idx))
    lookup = np.full(na * nb, -1, dtype=INDEX)
    lookup[np.asarray(a_idx) * nb + np.asarray(b_idx)] = np.arange(len(a_idx))
    p._pair_lookup = (lookup, nb)


def pair_index(p, a, b):
    """Index of the pair ``(a, b)`` in a pullback object, -1 if absent (vectorised)."""
    lookup, nb = p._pair_lookup
    return lookup[np.asarray(a) * nb + np.asarray(b)]


def same_group(g: FiniteGroup, h: FiniteGroup) -> bool:
    if g is h:
        return True
    return g.order == h.order and bool(np.array_equal(g.table, h.table))


# --------------------------------------------------------------------------
# actions and semidirect products


class GroupAction:
    """A left action of ``B`` on ``X`` by automorphisms; ``act[b][x] = b·x``.

    Stored either as a table or through a vectorised ``apply``; the table
    is materialised on demand.
    """

    def __init__(self, B: FiniteGroup, X: FiniteGroup, act=None, *, apply: Callable | None = None,
                 check: bool = True):
        self.B = B
        self.X = X
        if act is not None:
            t = frozen(act)
            if t.shape != (B.order, X.order):
                raise InvariantViolation("GroupAction", t.shape, "act must be |B| x |X|")
            self.__dict__["table"] = t
            self._apply = lambda b, x: t[b, x]
        elif apply is not None:
            self._apply = apply
        else:
            raise ValueError("need act table or apply")
        if check:
            self.validate()

    @classmethod
    def conjugation(cls, B: FiniteGroup) -> "GroupAction":
        return cls(B, B, apply=B.conj, check=False)

    @classmethod
    def trivial(cls, B: FiniteGroup, X: FiniteGroup) -> "GroupAction":
        return cls(B, X, apply=lambda b, x: np.broadcast_arrays(b, x)[1], check=False)

    def __repr__(self) -> str:
        return f"GroupAction({self.B.name} on {self.X.name})"

    def apply(self, b, x):
        return self._apply(b, x)

    @cached_property
    def table(self) -> np.ndarray:
        t = np.asarray(self._apply(np.arange(self.B.order)[:, None], np.arange(self.X.order)[None, :]),
                       dtype=INDEX)
        t = np.broadcast_to(t, (self.B.order, self.X.order)).copy()
        t.setflags(write=False)
        return t

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAction):
            return NotImplemented
        return (self.B.order == other.B.order and self.X.order == other.X.order
                and bool(np.array_equal(self.table, other.table)))

    __hash__ = None  # type: ignore[assignment]

    def is_trivial(self) -> bool:
        xs = np.arange(self.X.order)
        return all(np.array_equal(self.apply(b, xs), xs) for b in self.B.generators)

    def failure(self) -> tuple | None:
        """First violated action axiom as ``(name, witness)``, or None."""
        B, X = self.B, self.X
        xs = np.arange(X.order, dtype=INDEX)
        row0 = np.asarray(self.apply(0, xs))
        if not np.array_equal(row0, xs):
            return ("identity acts trivially", int(np.flatnonzero(row0 != xs)[0]))
        t = self.table
        if t.min() < 0 or t.max() >= X.order:
            return ("range", tuple(int(v) for v in np.argwhere((t < 0) | (t >= X.order))[0]))
        for b in range(B.order):
            if np.unique(t[b]).size != X.order:
                return ("automorphism", (b, "not bijective"))
        for b in B.generators:
            for g in X.generators:
                if not np.array_equal(t[b, X.mul(xs, g)], X.mul(t[b], t[b, g])):
                    bad = int(np.flatnonzero(t[b, X.mul(xs, g)] != X.mul(t[b], t[b, g]))[0])
                    return ("automorphism", (b, bad, g))
        bs = np.arange(B.order, dtype=INDEX)
        for g in B.generators:
            # act[b·g] = act[b] ∘ act[g]
            lhs = t[B.mul(bs, g)]
            rhs = t[bs[:, None], t[g][None, :]]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                return ("functoriality", (int(bad[0][0]), int(g), int(bad[0][1])))
        return None

    def validate(self) -> None:
        f = self.failure()
        if f is not None:
            raise InvariantViolation(f"GroupAction: {f[0]}", f[1])


def semidirect_product(A: GroupAction, name: str | None = None
                       ) -> tuple[FiniteGroup, GroupHom, GroupHom, GroupHom]:
    """``X ⋊ B`` with ``(x, b)(x', b') = (x · b·x', b b')``, plus ``k``, ``s``, ``p``."""
    B, X = A.B, A.X
    nb = B.order

    def mul(a, c):
        a = np.asarray(a)
        c = np.asarray(c)
        x, b = a // nb, a % nb
        x2, b2 = c // nb, c % nb
        return X.mul(x, A.apply(b, x2)) * nb + B.mul(b, b2)

    n = X.order * nb
    ar = np.arange(n, dtype=INDEX)
    binv = B.inv[ar % nb]
    inv = A.apply(binv, X.inv[ar // nb]) * nb + binv
    gens = [x * nb for x in X.generators] + list(B.generators)
    names = None
    if X.element_names is not None or B.element_names is not None:
        names = [f"({X.name_of(x)},{B.name_of(b)})" for x in range(X.order) for b in range(nb)]
    g = FiniteGroup(n, mul, inv, gens, names=names, name=name or f"{X.name}:{B.name}")
    g.semidirect_of = A
    k = GroupHom(X, g, np.arange(X.order) * nb, check=False)
    s = GroupHom(B, g, np.arange(nb), check=False)
    p = GroupHom(g, B, ar % nb, check=False)
    return g, k, s, p


def enumerate_actions(B: FiniteGroup, X: FiniteGroup) -> list[GroupAction]:
    """Every action of ``B`` on ``X``, in lexicographic order of the act table."""
    aut, perms = automorphism_group(X, bound=max(ISO_BOUND, X.order))
    tables = []
    for phi in enumerate_homs(B, aut):
        tables.append(tuple(tuple(perms[i].tolist()) for i in phi.map.tolist()))
    tables.sort()
    return [GroupAction(B, X, t, check=False) for t in tables]


# --------------------------------------------------------------------------
# a small library of groups, complete up to order 15


def cyclic(n: int) -> FiniteGroup:
    ar = np.arange(n)
    g = make_group((ar[:, None] + ar[None, :]) % n, names=[str(i) for i in range(n)], name=f"Z{n}")
    return g


def dihedral(n: int) -> FiniteGroup:
    """Order ``2n``: rotations ``Z_n`` inverted by a reflection."""
    zn = cyclic(n)
    act = [list(range(n)), [(-i) % n for i in range(n)]]
    g, *_ = semidirect_product(GroupAction(cyclic(2), zn, act))
    name = "S3" if n == 3 else f"D{n}"
    return as_table_group(g, name=name)


def quaternion() -> FiniteGroup:
    # units as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    units = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    basis = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
             (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
             (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
             (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2)}
    index = {u: i for i, u in enumerate(units)}
    table = []
    for s1, a1 in units:
        row = []
        for s2, a2 in units:
            s, a = basis[(a1, a2)]
            row.append(index[(s * s1 * s2, a)])
        table.append(row)
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return make_group(table, names=names, name="Q8")


def _named_product(*factors: FiniteGroup) -> FiniteGroup:
    g = factors[0]
    for h in factors[1:]:
        g = direct_product(g, h)
    return as_table_group(g, name="x".join(f.name for f in factors))


def _build_library() -> list[FiniteGroup]:
    z = {n: cyclic(n) for n in range(1, 16)}
    out = [z[n] for n in range(1, 16)]
    out += [
        _named_product(z[2], z[2]),
        dihedral(3),
        _named_product(z[4], z[2]),
        _named_product(z[2], z[2], z[2]),
        dihedral(4),
        quaternion(),
        _named_product(z[3], z[3]),
        dihedral(5),
        _named_product(z[6], z[2]),
        dihedral(6),
    ]
    v4 = out[15]
    # A4 = V4 ⋊ Z3, Z3 rotating the three involutions
    rot = [[0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]
    rot_act = GroupAction(z[3], v4, rot)
    a4, *_ = semidirect_product(rot_act)
    out.append(as_table_group(a4, name="A4"))
    # Dic3 = Z3 ⋊ Z4, generator inverting
    dic, *_ = semidirect_product(GroupAction(z[4], z[3], [[0, 1, 2], [0, 2, 1], [0, 1, 2], [0, 2, 1]]))
    out.append(as_table_group(dic, name="Dic3"))
    out.append(dihedral(7))
    out.sort(key=lambda g: (g.order, g.name))
    return out


_LIBRARY: list[FiniteGroup] | None = None


def small_groups(max_order: int = 15, *, abelian_only: bool = False) -> list[FiniteGroup]:
    """One group per isomorphism class of each order up to ``max_order`` (at most 15)."""
    global _LIBRARY
    if max_order > 15:
        raise OrderTooLarge("the bundled library is complete only up to order 15")
    if _LIBRARY is None:
        _LIBRARY = _build_library()
    return [g for g in _LIBRARY if g.order <= max_order and (not abelian_only or g.is_abelian())]


def group_by_name(name: str) -> FiniteGroup:
    for g in small_groups():
        if g.name.lower() == name.lower():
            return g
    raise KeyError(name)
