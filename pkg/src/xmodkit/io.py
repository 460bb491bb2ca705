"""JSON documents for every domain type.

A document is a JSON object with ``kind`` and ``version`` keys; the other
keys form the body.  Groups appear inline as ``{"order": n, "table": [...]}``
(pointed sets as ``{"order": n}``) or as a string naming another document
by path, relative to the referring file.  Maps are index arrays.

Canonical text is produced by :func:`dumps`: keys sorted, rows of tables on
one line each, trailing newline.  Equal values give identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import actionsys as ax
from . import fingroup as fg
from . import gpd
from . import pointedcat as pc
from . import simplicial as sx
from .errors import InvariantViolation, NotACrossedModule, ParseError, VersionMismatch, XmodError
from .fingroup import FiniteGroup, GroupAction, GroupHom
from .pointedcat import PointedMap, PointedSet
from .report import Report, _plain

VERSION = "1"
KINDS = ("group", "pset", "hom", "action", "xmod", "whitehead", "groupoid",
         "cospan", "truncation", "report")


@dataclass
class Document:
    kind: str
    version: str = VERSION
    body: dict = field(default_factory=dict)
    base: Path | None = field(default=None, compare=False, repr=False)

    def as_json(self) -> dict:
        d = dict(self.body)
        d["kind"] = self.kind
        d["version"] = self.version
        return d


# --------------------------------------------------------------------------
# text


def _scalar(v) -> bool:
    return v is None or isinstance(v, (int, float, str, bool))


def _fmt(v, level: int) -> str:
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_fmt(v[k], level + 1)}" for k in sorted(v, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(v, list):
        if all(_scalar(x) for x in v):
            return json.dumps(v)
        return "[\n" + ",\n".join(pad + _fmt(x, level + 1) for x in v) + "\n" + end + "]"
    return json.dumps(v)


def dumps(doc: Document) -> str:
    return _fmt(_plain(doc.as_json()), 0) + "\n"


def parse(text: str, base: Path | None = None) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", 1, 1)
    kind = data.pop("kind", None)
    version = data.pop("version", None)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", *_locate(text, "kind"))
    if version != VERSION:
        raise VersionMismatch(f"version {version!r}, expected {VERSION!r}")
    return Document(kind, version, data, base)


def _locate(text: str, key: str) -> tuple[int | None, int | None]:
    i = text.find(f'"{key}"')
    if i < 0:
        return None, None
    line = text.count("\n", 0, i) + 1
    return line, i - (text.rfind("\n", 0, i) + 1) + 1


def load(path, check: bool = True) -> Document:
    """Read a document; with ``check`` it is also decoded, which enforces its invariants."""
    path = Path(path)
    doc = parse(path.read_text(), path.parent)
    if check:
        to_value(doc)
    return doc


def save(doc: Document, path) -> None:
    Path(path).write_text(dumps(doc))


# --------------------------------------------------------------------------
# decoding


def _need(body: dict, key: str, where: str):
    if key not in body:
        raise ParseError(f"{where}: missing key {key!r}")
    return body[key]


def _int_array(v, where: str, ndim: int = 1) -> np.ndarray:
    try:
        a = np.array(v, dtype=np.int64)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: expected integers") from None
    if a.ndim != ndim:
        raise ParseError(f"{where}: expected a {ndim}-dimensional integer array")
    return a


def _object(v, base: Path | None, where: str):
    if isinstance(v, str):
        ref = Path(v) if base is None else base / v
        try:
            text = ref.read_text()
        except OSError as e:
            raise ParseError(f"{where}: cannot read reference {v!r} ({e.strerror})") from None
        sub = parse(text, ref.parent)
        if sub.kind not in ("group", "pset"):
            raise ParseError(f"{where}: reference {v!r} is a {sub.kind} document")
        return _object(sub.body, ref.parent, v)
    if not isinstance(v, dict):
        raise ParseError(f"{where}: expected a group object or a path")
    order = int(_need(v, "order", where))
    if "table" not in v:
        return PointedSet(order, v.get("name"))
    t = _int_array(v["table"], f"{where}.table", 2)
    if t.shape != (order, order):
        raise InvariantViolation("order", t.shape, f"{where}: table is not {order} x {order}")
    return fg.make_group(t, names=v.get("names"), name=v.get("name"))


def _map(dom, cod, v, where: str):
    a = _int_array(v, where)
    if a.shape != (dom.order,):
        raise InvariantViolation("map length", a.shape, f"{where}: expected {dom.order} entries")
    if isinstance(dom, PointedSet) != isinstance(cod, PointedSet):
        raise InvariantViolation("instance", None, f"{where}: mixes groups and pointed sets")
    if isinstance(dom, PointedSet):
        return PointedMap(dom, cod, a)
    return GroupHom(dom, cod, a)


def _action(body, B, X, where: str) -> GroupAction:
    act = _int_array(_need(body, "act", where), f"{where}.act", 2)
    return GroupAction(B, X, act)


def to_value(doc: Document):
    """Decode and validate; the result is cached on the document."""
    if "_value" in doc.__dict__:
        return doc.__dict__["_value"]
    v = _decode(doc)
    doc.__dict__["_value"] = v
    return v


def _decode(doc: Document):
    b, base, k = doc.body, doc.base, doc.kind
    obj = lambda key: _object(_need(b, key, k), base, f"{k}.{key}")  # noqa: E731
    if k in ("group", "pset"):
        o = _object(b, base, k)
        if (k == "group") != isinstance(o, FiniteGroup):
            raise ParseError(f"{k}: body does not match the kind")
        return o
    if k == "hom":
        return _map(obj("dom"), obj("cod"), _need(b, "map", k), "hom.map")
    if k in ("action", "xmod"):
        B, X = obj("B"), obj("X")
        act = _action(b, B, X, k)
        if k == "action":
            return act
        h = _map(X, B, _need(b, "h", k), "xmod.h")
        ok, wit = ax.xmod_check(act, h)
        if not ok:
            raise NotACrossedModule(wit[0], wit[1])
        return ax.CrossedModule(act, h)
    if k == "whitehead":
        system = _need(b, "system", k)
        if system not in ax.SYSTEMS:
            raise ParseError(f"whitehead: unknown system {system!r}")
        X, B = obj("X"), obj("B")
        act = _action(b, B, X, k) if system == "grp" else None
        A = ax.ActionObject(system, X, B, act)
        u, v = _need(b, "u", k), _need(b, "v", k)
        GB, GX = ax.functor_G(B, system), ax.functor_G(X, system)
        um = ax.ActionMorphism(A, GB, _map(X, B, _need(u, "f1", "u"), "u.f1"), _map(B, B, _need(u, "f2", "u"), "u.f2"))
        vm = ax.ActionMorphism(GX, A, _map(X, X, _need(v, "f1", "v"), "v.f1"), _map(X, B, _need(v, "f2", "v"), "v.f2"))
        w = ax.WhiteheadSequence(A, um, vm)
        w.validate()
        return w
    if k == "groupoid":
        C0, C1 = obj("C0"), obj("C1")
        d = _map(C1, C0, _need(b, "d", k), "groupoid.d")
        c = _map(C1, C0, _need(b, "c", k), "groupoid.c")
        e = _map(C0, C1, _need(b, "e", k), "groupoid.e")
        cat = gpd.InternalCategory(C0, C1, d, c, e, m=np.zeros(1, dtype=np.int64))
        m = _int_array(_need(b, "m", k), "groupoid.m")
        if m.shape != (cat.C2.order,):
            raise InvariantViolation("m length", m.shape, f"groupoid.m: C2 has {cat.C2.order} elements")
        cat.m = cat.map(cat.C2, C1, m)
        r = gpd.is_internal_category(cat)
        if not r.ok:
            bad = r.failures()[0]
            raise InvariantViolation(bad.name, bad.witness, "groupoid")
        gw = gpd.is_groupoid(cat)
        if gw is None:
            raise InvariantViolation("groupoid", None, "no inverse map")
        return gw
    if k == "cospan":
        X, Y, B = obj("X"), obj("Y"), obj("B")
        return pc.Cospan(_map(X, Y, _need(b, "k", k), "cospan.k"), _map(B, Y, _need(b, "s", k), "cospan.s"))
    if k == "truncation":
        objs = [_object(o, base, f"truncation.objects[{i}]") for i, o in enumerate(_need(b, "objects", k))]
        t = sx.SimplicialTruncation(objs)
        for key, table, shift in (("faces", t.faces, -1), ("degeneracies", t.degeneracies, 1)):
            for name, arr in _need(b, key, k).items():
                n, i = (int(x) for x in name.split(","))
                table[(n, i)] = _map(objs[n], objs[n + shift], arr, f"truncation.{key}.{name}")
        t.names = {v: ("d", *key) for key, v in sx.FACE_NAMES.items()}
        t.names.update({v: ("s", *key) for key, v in sx.DEGENERACY_NAMES.items()})
        t.names["m"] = ("d", 2, 1)
        return t
    if k == "report":
        r = Report(meta=dict(b.get("meta", {})))
        for row in _need(b, "checks", k):
            st = _need(row, "status", "report.checks")
            if st not in ("pass", "fail"):
                raise ParseError(f"report: bad status {st!r}")
            r.add(_need(row, "name", "report.checks"), st == "pass", row.get("witness"), row.get("tag", ""))
        return r
    raise ParseError(f"unknown kind {k!r}")


# --------------------------------------------------------------------------
# encoding


def _obj_body(o) -> dict:
    if isinstance(o, PointedSet):
        return {"order": o.order}
    return {"order": o.order, "table": o.table.tolist(), "name": o.name}


def from_value(v) -> Document:
    if isinstance(v, FiniteGroup):
        return Document("group", body=_obj_body(v))
    if isinstance(v, PointedSet):
        return Document("pset", body=_obj_body(v))
    if isinstance(v, (GroupHom, PointedMap)):
        return Document("hom", body={"dom": _obj_body(v.dom), "cod": _obj_body(v.cod), "map": v.map.tolist()})
    if isinstance(v, GroupAction):
        return Document("action", body={"B": _obj_body(v.B), "X": _obj_body(v.X), "act": v.table.tolist()})
    if isinstance(v, ax.CrossedModule):
        body = from_value(v.action).body
        body["h"] = v.h.map.tolist()
        return Document("xmod", body=body)
    if isinstance(v, ax.WhiteheadSequence):
        A = v.A
        body = {"system": A.system, "X": _obj_body(A.X), "B": _obj_body(A.B),
                "u": {"f1": v.u.f1.map.tolist(), "f2": v.u.f2.map.tolist()},
                "v": {"f1": v.v.f1.map.tolist(), "f2": v.v.f2.map.tolist()}}
        if A.system == "grp":
            body["act"] = A.action.table.tolist()
        return Document("whitehead", body=body)
    if isinstance(v, gpd.GroupoidWitness):
        v = v.cat
    if isinstance(v, gpd.InternalCategory):
        return Document("groupoid", body={
            "C0": _obj_body(v.C0), "C1": _obj_body(v.C1),
            "d": v.d.map.tolist(), "c": v.c.map.tolist(), "e": v.e.map.tolist(), "m": v.m.map.tolist()})
    if isinstance(v, pc.Cospan):
        return Document("cospan", body={"X": _obj_body(v.X), "Y": _obj_body(v.Y), "B": _obj_body(v.B),
                                        "k": v.k.map.tolist(), "s": v.s.map.tolist()})
    if isinstance(v, sx.SimplicialTruncation):
        return Document("truncation", body={
            "objects": [_obj_body(o) for o in v.objects],
            "faces": {f"{n},{i}": f.map.tolist() for (n, i), f in sorted(v.faces.items())},
            "degeneracies": {f"{n},{i}": f.map.tolist() for (n, i), f in sorted(v.degeneracies.items())}})
    if isinstance(v, Report):
        return report_document(v)
    raise TypeError(f"no document kind for {type(v).__name__}")


def report_document(r: Report, **meta: Any) -> Document:
    m = dict(r.meta)
    m.update(meta)
    body = {"checks": [c.as_dict() for c in r.checks]}
    if m:
        body["meta"] = _plain(m)
    return Document("report", body=body)


# --------------------------------------------------------------------------
# validation


def validate(doc: Document) -> Report:
    """Decode the document and re-run the owning module's checks, as report rows."""
    r = Report(meta={"kind": doc.kind})
    try:
        v = to_value(doc)
    except (XmodError, ValueError) as e:
        r.add("decode", False, f"{type(e).__name__}: {e}")
        return r
    r.add("decode", True)
    if isinstance(v, FiniteGroup):
        try:
            fg.check_group_table(v.table)
            r.add("group axioms", True)
        except InvariantViolation as e:
            r.add("group axioms", False, str(e))
    elif isinstance(v, (GroupHom, PointedMap)):
        w = v.hom_failure()
        r.add("homomorphism", w is None, w)
    elif isinstance(v, GroupAction):
        w = v.failure()
        r.add("action axioms", w is None, w)
    elif isinstance(v, ax.CrossedModule):
        ok, w = ax.xmod_check(v.action, v.h)
        r.add("crossed module (8)-(9)", ok, w)
    elif isinstance(v, ax.WhiteheadSequence):
        w = v.failure()
        r.add("whitehead sequence", w is None, w)
    elif isinstance(v, gpd.GroupoidWitness):
        r.extend(gpd.is_internal_category(v.cat), "category: ")
        r.add("groupoid", v.failure() is None, v.failure())
    elif isinstance(v, pc.Cospan):
        r.add("patch", pc.is_patch(v))
    elif isinstance(v, sx.SimplicialTruncation):
        r.extend(sx.verify_identities(v, full=False))
    elif isinstance(v, Report):
        r.add("report well-formed", True)
    return r
