"""Command-line entry point: ``xmodkit <subcommand> ...``.

Every subcommand writes a report document (JSON or text) to ``--out`` or
stdout and exits 0 exactly when all of its checks pass.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import actionsys as ax
from . import fingroup as fg
from . import gpd
from . import io
from . import pointedcat as pc
from . import simplicial as sx
from .errors import BoundExceeded, XmodError
from .report import Report

CAPS = {"order": 16, "depth": 4, "bound": 8}


def workers() -> int:
    try:
        n = int(os.environ.get("XMODKIT_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, min(n, os.cpu_count() or 1))


def _cap(args, key: str, value: int | None) -> None:
    if value is None or value <= CAPS[key]:
        return
    if not args.override_caps:
        raise BoundExceeded(f"{key} limit {value} exceeds cap {CAPS[key]} (use --override-caps)")
    print(f"xmodkit: warning: {key} limit {value} exceeds cap {CAPS[key]}", file=sys.stderr)


def render_text(r: Report) -> str:
    lines = []
    for c in r.checks:
        w = "" if c.witness is None else f"  witness={c.witness!r}"
        lines.append(f"{c.status.upper()}  {c.name}{w}")
    for k in sorted(r.meta):
        lines.append(f"# {k}: {r.meta[k]!r}")
    lines.append(f"# result: {'pass' if r.ok else 'fail'} ({len(r.failures())}/{len(r)} failed)")
    return "\n".join(lines) + "\n"


def emit(r: Report, args) -> int:
    text = io.dumps(io.report_document(r)) if args.format == "json" else render_text(r)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if r.ok else 1


# --------------------------------------------------------------------------
# subcommands


def _enumerate_pair(system, X, B):
    if system == "grp":
        items = ax.enumerate_crossed_modules(X, B)
        return [{"act": cm.action.table.tolist(), "h": cm.h.map.tolist()} for cm in items]
    inst = pc.INSTANCES[system]
    return [{"h": h.map.tolist()} for h in inst.maps(X, B)]


def cmd_enumerate(args) -> Report:
    _cap(args, "order", max(args.max_x, args.max_b))
    inst = pc.INSTANCES[args.instance]
    xs = inst.objects(args.max_x)
    bs = inst.objects(args.max_b)
    if args.x:
        xs = [g for g in xs if _label(g) == args.x]
    if args.b:
        bs = [g for g in bs if _label(g) == args.b]
    pairs = [(X, B) for X in xs for B in bs]
    with ThreadPoolExecutor(workers()) as pool:
        found = list(pool.map(lambda p: _enumerate_pair(args.instance, *p), pairs))
    r = Report()
    structures = []
    for (X, B), items in zip(pairs, found):
        r.add(f"{_label(X)} -> {_label(B)}: {len(items)}", True)
        structures.append({"X": _label(X), "B": _label(B), "count": len(items), "items": items})
    r.meta.update(instance=args.instance, total=sum(len(f) for f in found), structures=structures)
    return r


def _label(o) -> str:
    return o.name if isinstance(o, fg.FiniteGroup) else f"P{o.order}"


def cmd_verify(args) -> Report:
    return io.validate(io.load(args.document, check=False))


def cmd_roundtrip(args) -> Report:
    doc = io.load(args.document)
    v = io.to_value(doc)
    if isinstance(v, ax.CrossedModule):
        cert = gpd.roundtrip_check(v)
        phi_x, phi_b = cert.isos
        iso = {"phi_X": phi_x.map.tolist(), "phi_B": phi_b.map.tolist()}
    elif isinstance(v, gpd.GroupoidWitness):
        cert = gpd.roundtrip_check_gpd(v)
        phi0, phi1 = cert.isos
        iso = {"phi_0": phi0.map.tolist(), "phi_1": phi1.map.tolist()}
    else:
        raise XmodError(f"roundtrip needs an xmod or groupoid document, got {doc.kind}")
    r = cert.checks
    r.meta.update(kind=cert.kind, isomorphism=iso, recovered=io.from_value(cert.recovered).as_json())
    return r


def _whitehead_of(v):
    if isinstance(v, ax.CrossedModule):
        return ax.xmod_to_whitehead(v)
    if isinstance(v, ax.WhiteheadSequence):
        return v
    raise XmodError("simplicial needs an xmod or whitehead document")


def cmd_simplicial(args) -> Report:
    _cap(args, "depth", args.depth)
    if args.depth < 3:
        raise XmodError("the truncation needs depth >= 3")
    w = _whitehead_of(io.to_value(io.load(args.document)))
    tower = sx.build_tower(w, args.depth)
    t = sx.build_truncation(tower)
    r = sx.verify_identities(t)
    r.extend(sx.tower_report(tower), "tower: ")
    r.meta["depth"] = args.depth
    r.meta["tower orders"] = [L.F.obj.order for L in tower.levels]
    if args.truncation:
        io.save(io.from_value(t), args.truncation)
    return r


def cmd_patch(args) -> Report:
    _cap(args, "bound", args.bound)
    c = io.to_value(io.load(args.document))
    if not isinstance(c, pc.Cospan):
        raise XmodError("patch needs a cospan document")
    inst = pc.instance_of(c.k, c.s, instance=args.instance)
    _cap(args, "order", c.Y.order)
    r = Report()
    w = pc.make_patch(c, inst)
    r.add("patch", w is not None)
    if w is not None:
        r.add("exact patch", pc.is_exact_patch(w, inst))
        if args.stable:
            ok = pc.is_stable_patch(w, args.bound, inst)
            r.add(f"stable patch (bound {args.bound})", ok,
                  None if ok else repr(pc.stability_counterexample(w, args.bound, inst)))
        r.meta["retraction"] = w.p.map.tolist()
    r.meta["instance"] = inst.name
    return r


def cmd_report(args) -> Report:
    out = Report()
    for path in args.documents:
        v = io.to_value(io.load(path))
        if not isinstance(v, Report):
            raise XmodError(f"{path} is not a report document")
        out.extend(v, f"{Path(path).name}: ")
    return out


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--override-caps", action="store_true", help="allow limits above the hard caps")

    p = argparse.ArgumentParser(prog="xmodkit", description="Crossed modules, Whitehead sequences and internal groupoids.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="enumerate crossed modules / Whitehead data")
    e.add_argument("--instance", choices=("grp", "ab", "pset"), default="grp")
    e.add_argument("--max-x", type=int, default=4)
    e.add_argument("--max-b", type=int, default=4)
    e.add_argument("--x", help="only this fibre group (library name, or Pn)")
    e.add_argument("--b", help="only this base group (library name, or Pn)")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", parents=[common], help="validate a document")
    v.add_argument("document")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("roundtrip", parents=[common], help="crossed module <-> groupoid round trip")
    r.add_argument("document")
    r.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("simplicial", parents=[common], help="build the truncation and check its identities")
    s.add_argument("document")
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--truncation", help="also write the truncation document here")
    s.set_defaults(func=cmd_simplicial)

    c = sub.add_parser("patch", parents=[common], help="patch predicates for a cospan")
    c.add_argument("document")
    c.add_argument("--instance", choices=("grp", "ab", "pset"))
    c.add_argument("--stable", action="store_true")
    c.add_argument("--bound", type=int, default=4)
    c.set_defaults(func=cmd_patch)

    m = sub.add_parser("report", parents=[common], help="merge and render report documents")
    m.add_argument("documents", nargs="+")
    m.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        r = args.func(args)
    except (XmodError, ValueError, OSError) as e:
        r = Report(meta={"command": args.command})
        r.add("error", False, f"{type(e).__name__}: {e}")
        emit(r, args)
        return 2
    return emit(r, args)


if __name__ == "__main__":
    sys.exit(main())
