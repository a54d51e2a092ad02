"""Command line: ``rpog validate|check|example|census``.

Exit codes: 0 all verdicts as expected, 1 a verdict differs from its
expectation (or validation failed), 2 input did not parse, 3 a size guard
tripped, 4 a precondition of the requested check does not hold.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .verdict import GuardError, PreconditionError, StructuralError, Verdict

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_GUARD, EXIT_PRECONDITION = 0, 1, 2, 3, 4

CHECK_KINDS = ("preordered", "schreier", "category", "groupoid", "lattice", "modular", "action-rep",
               "s-center", "smith", "huq", "axioms", "effective")
ACTION_REP_GUARD = 64


class Report:
    """Collects rendered lines (text) or verdict dicts (json) in order."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.items: list[dict[str, Any]] = []
        self.ok = True

    def verdict(self, label: str, v: Verdict, expect: bool | None = None) -> None:
        self.lines.append(v.render(label))
        item = {"label": label, "verdict": v.to_json()}
        if expect is not None:
            item["expect"] = expect
            if v.holds != expect:
                self.ok = False
                self.lines[-1] += f"   <-- expected {'YES' if expect else 'NO'}"
        self.items.append(item)

    def text(self, line: str) -> None:
        self.lines.append(line)

    def emit(self, out=None, **extra) -> None:
        out = out or sys.stdout
        if self.fmt == "json":
            json.dump({"ok": self.ok, "results": self.items, **extra}, out, ensure_ascii=False, indent=2,
                      sort_keys=True)
            out.write("\n")
        else:
            for line in self.lines:
                out.write(line + "\n")


def _finite(obj, what: str):
    from .finite import FiniteRpoGroup

    if not isinstance(obj, FiniteRpoGroup):
        raise PreconditionError(f"{what} needs a finite rpo group, got {type(obj).__name__}")
    return obj


def _guard(obj, args) -> None:
    n = getattr(obj, "order", None)
    if n is not None and n > args.max_order:
        raise GuardError(f"{getattr(obj, 'name', 'object')} has order {n} > --max-order {args.max_order}")


def _pick(doc, kinds: tuple[str, ...], what: str, count: int = 1):
    from .io import ParseError

    found = doc.of_kind(*kinds)
    if len(found) < count:
        raise ParseError(f"{what}: need {count} object(s) of kind {'/'.join(kinds)}, found {len(found)}")
    return found[-count:] if count > 1 else found[-1]


def run_check(kind: str, doc, args, rep: Report) -> None:
    from . import finite, internal, quasivariety, schreier, subobjects

    seed, samples = args.seed, args.samples
    expect = None if args.expect is None else args.expect == "yes"
    if kind == "preordered":
        g = _finite(_pick(doc, ("group", "registry"), kind), kind)
        _guard(g, args)
        rep.verdict("preordered", finite.is_preordered(g), expect)
    elif kind in ("schreier", "category", "groupoid", "effective"):
        obj = _pick(doc, ("graph", "point", "group", "registry"), kind)
        if kind == "schreier" and isinstance(obj, schreier.SplitPoint):
            _guard(obj.total, args)
            rep.verdict("schreier", schreier.is_schreier(obj, seed, samples), expect)
            return
        if not isinstance(obj, internal.ReflexiveGraph):
            raise PreconditionError(f"{kind} needs a reflexive graph")
        if obj.finite:
            _guard(obj.apex, args)
        v = obj.check(seed, samples)
        if not v:
            raise PreconditionError(f"{obj.name} is not a reflexive graph: {v.detail}", v)
        if kind == "schreier":
            rep.verdict("schreier", schreier.is_schreier(obj.point(), seed, samples), expect)
        elif kind == "category":
            rep.verdict("category", internal.is_internal_category(obj, seed, samples), expect)
        elif kind == "groupoid":
            rep.verdict("groupoid", internal.is_groupoid(obj, seed, samples), expect)
        else:
            if not obj.finite:
                raise PreconditionError("effective is only decided for finite graphs")
            rep.verdict("effective", internal.is_effective(obj), expect)
    elif kind in ("lattice", "modular"):
        g = _finite(_pick(doc, ("group", "registry"), kind), kind)
        _guard(g, args)
        if kind == "lattice":
            rep.verdict("lattice", subobjects.check_lattice_iso(g), expect)
        else:
            rep.verdict("modular", subobjects.check_modular(subobjects.normal_lattice(g)), expect)
    elif kind == "action-rep":
        x, y = (_finite(o, kind) for o in _pick(doc, ("group", "registry"), kind, 2))
        # route two enumerates group laws on X×Y, so the product has its own cap below --max-order²
        guard = min(ACTION_REP_GUARD, args.max_order ** 2)
        rep.verdict("action-rep", schreier.check_action_rep(x, y, max_product=guard), expect)
    elif kind == "s-center":
        g = _pick(doc, ("group", "registry"), kind)
        _guard(g, args)
        res = schreier.s_center(g, seed, samples)
        rep.verdict("s-center", res.verdict, expect)
        if res.subgroup is not None:
            rep.text("center: {" + ",".join(g.fmt(a) for a in sorted(res.subgroup)) + "}"
                     + (" (whole object)" if res.whole else ""))
    elif kind == "smith":
        r, s = _pick(doc, ("relation",), kind, 2)
        _guard(r.carrier, args)
        rep.verdict("smith", subobjects.smith_commute(r, s), expect)
    elif kind == "huq":
        x, y = _pick(doc, ("subobject", "relation"), kind, 2)
        x, y = (subobjects.normalization(o) if isinstance(o, subobjects.EffEqRelation) else o for o in (x, y))
        if x.carrier is not y.carrier and x.carrier.name != y.carrier.name:
            raise PreconditionError("huq needs two subobjects of the same carrier")
        _guard(x.carrier, args)
        rep.verdict("huq", subobjects.huq_commute(x.carrier, x, y), expect)
    elif kind == "axioms":
        obj = _pick(doc, ("sigma", "group", "registry"), kind)
        if not isinstance(obj, quasivariety.SigmaAlgebra):
            obj = quasivariety.to_model(_finite(obj, kind))
        report = quasivariety.check_axioms(obj)
        for name, v in report.verdicts.items():
            rep.verdict(name, v, None)
        rep.verdict("axioms", Verdict(report.holds, "axioms", None if report.holds else {"failed": report.failed()},
                                      "" if report.holds else "failed: " + ",".join(report.failed())), expect)
    else:
        raise PreconditionError(f"unknown check kind {kind!r}; known: {', '.join(CHECK_KINDS)}")


def _validate(doc, args, rep: Report) -> None:
    from . import finite, internal, quasivariety, schreier

    for kind, name, obj in doc.objects:
        if kind in ("group", "registry") and isinstance(obj, finite.FiniteRpoGroup):
            _guard(obj, args)
            rep.verdict(f"{name}: rpo group", finite.validate(obj), True)
        elif kind in ("group", "registry") and hasattr(obj, "cone_pred"):
            from .symbolic import sampled_validate
            rep.verdict(f"{name}: rpo group", sampled_validate(obj, args.seed, args.samples), True)
        elif kind == "morphism":
            rep.verdict(f"{name}: morphism", finite.check_morphism(obj), True)
        elif kind == "point":
            rep.verdict(f"{name}: split point", obj.check_split(), True)
        elif kind == "action":
            rep.verdict(f"{name}: action", schreier.check_action(obj), True)
        elif kind == "graph" or isinstance(obj, internal.ReflexiveGraph):
            rep.verdict(f"{name}: reflexive graph", obj.check(args.seed, args.samples), True)
        elif kind == "pxmod":
            rep.verdict(f"{name}: precrossed module", internal.check_px(obj, args.seed, args.samples), True)
        elif kind == "sigma":
            r = quasivariety.check_axioms(obj)
            for law, v in r.verdicts.items():
                rep.verdict(f"{name}: {law}", v, True)
        else:
            rep.text(f"{name}: {kind} parsed")


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the flags without defaults so they do not undo flags given before them
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        f = argparse.ArgumentParser(add_help=False)
        f.add_argument("--seed", type=int, default=dflt(0), help="seed for every sampled check (default 0)")
        f.add_argument("--samples", type=int, default=dflt(1000), help="sample count for symbolic objects")
        f.add_argument("--max-order", type=int, default=dflt(24), help="refuse finite objects above this order")
        f.add_argument("--format", choices=("text", "json"), default=dflt("text"))
        return f

    common = flags(True)
    p = argparse.ArgumentParser(prog="rpog", description="Right-preordered groups: checks and examples.",
                                parents=[flags(False)])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", parents=[common], help="parse and validate objects")
    v.add_argument("files", nargs="+", help="JSON files or registry names")
    c = sub.add_parser("check", parents=[common], help="run one verdict")
    c.add_argument("kind", choices=CHECK_KINDS)
    c.add_argument("files", nargs="+", metavar="FILE", help="one or two JSON files or registry names")
    c.add_argument("--expect", choices=("yes", "no"), help="exit 1 unless the verdict matches")
    e = sub.add_parser("example", parents=[common], help="replay a registered example")
    e.add_argument("id", help="example id, or 'all', or 'list'")
    n = sub.add_parser("census", parents=[common], help="count rpo groups, points and internal structures")
    n.add_argument("n", type=int)
    return p


def _load(files: list[str], limit: int | None = None):
    from .io import Document, ParseError, load_source

    if limit is not None and len(files) > limit:
        raise ParseError(f"at most two input files, got {len(files)}")
    doc = Document()
    for f in files:
        load_source(f, doc)
    return doc


def main(argv: list[str] | None = None) -> int:
    from .bundles import BUNDLES, run_bundle
    from .census import census
    from .io import ParseError

    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples < 1 or args.max_order < 1:
        parser.error("--samples and --max-order must be positive")
    rep = Report(args.format)
    try:
        if args.command == "validate":
            _validate(_load(args.files), args, rep)
        elif args.command == "check":
            run_check(args.kind, _load(args.files, 2), args, rep)
        elif args.command == "example":
            if args.id == "list":
                for k, (desc, _) in BUNDLES.items():
                    rep.text(f"{k}: {desc}")
                rep.emit()
                return EXIT_OK
            ids = list(BUNDLES) if args.id == "all" else [args.id]
            if any(i not in BUNDLES for i in ids):
                raise ParseError(f"unknown example {args.id!r}; known: {', '.join(BUNDLES)}")
            results = [run_bundle(i, args.seed, args.samples) for i in ids]
            rep.ok = all(r.ok for r in results)
            if args.format == "json":
                json.dump({"ok": rep.ok, "examples": [r.to_json() for r in results]}, sys.stdout,
                          ensure_ascii=False, indent=2, sort_keys=True)
                sys.stdout.write("\n")
            else:
                for r in results:
                    if len(results) > 1:
                        sys.stdout.write(f"== {r.example_id}: {r.description}\n")
                    for line in r.lines():
                        sys.stdout.write(line + "\n")
                    sys.stdout.write(f"{r.example_id}: {'matches' if r.ok else 'MISMATCH'}\n")
            return EXIT_OK if rep.ok else EXIT_MISMATCH
        elif args.command == "census":
            c = census(args.n, guard=args.max_order)
            if args.format == "json":
                json.dump(c.to_json(), sys.stdout, indent=2, sort_keys=True)
                sys.stdout.write("\n")
            else:
                sys.stdout.write("\n".join(c.lines()) + "\n")
            return EXIT_OK
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except PreconditionError as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except StructuralError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    rep.emit()
    return EXIT_OK if rep.ok else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
