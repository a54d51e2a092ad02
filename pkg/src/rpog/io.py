"""JSON loading for every object kind, with path-based diagnostics.

A file holds one object, or ``{"objects": [...]}``.  Each object's kind is
read from an optional ``"kind"`` field or inferred from its keys.  Objects
refer to each other by name; unknown names fall back to the built-in
registries.  Identity is moved to index 0 on load and every map that
touches a relabelled group is relabelled with it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .finite import FiniteGroup, FiniteRpoGroup, RpoMorphism
from .groups import finite_registry
from .quasivariety import SigmaAlgebra
from .schreier import ActionMorphism, SplitPoint
from .symbolic import GRAPH_IDS, GROUP_REGISTRY, build_example
from .verdict import RpogError, StructuralError

KIND_KEYS = [
    ("graph", {"apex", "base", "d", "c", "e"}),
    ("pxmod", {"base", "ker", "boundary", "act"}),
    ("point", {"total", "base", "d", "e"}),
    ("action", {"base", "target", "act"}),
    ("morphism", {"dom", "cod", "map"}),
    ("sigma", {"carrier", "plus"}),
    ("relation", {"carrier", "partition"}),
    ("subobject", {"carrier", "subgroup"}),
    ("group", {"table"}),
    ("registry", {"registry"}),
]


class ParseError(RpogError):
    """Input that does not match a schema; the message carries a location."""


def _err(path: str, msg: str) -> ParseError:
    return ParseError(f"{path}: {msg}")


def _int_list(v: Any, path: str, n: int | None = None) -> list[int]:
    if not isinstance(v, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in v):
        raise _err(path, "expected a list of integers")
    if n is not None and len(v) != n:
        raise _err(path, f"expected {n} entries, got {len(v)}")
    return v


def _matrix(v: Any, path: str, n: int) -> list[list[int]]:
    if not isinstance(v, list) or len(v) != n:
        raise _err(path, f"expected {n} rows")
    return [_int_list(row, f"{path}[{i}]", n) for i, row in enumerate(v)]


def infer_kind(obj: dict, path: str) -> str:
    if not isinstance(obj, dict):
        raise _err(path, "expected a JSON object")
    if "kind" in obj:
        return obj["kind"]
    keys = set(obj)
    for kind, need in KIND_KEYS:
        if need <= keys:
            return kind
    raise _err(path, f"cannot tell the object kind from keys {sorted(keys)}")


@dataclass
class Document:
    """Objects of one or more files, by name and in order of appearance."""

    objects: list[tuple[str, str, Any]] = field(default_factory=list)   # (kind, name, value)
    relabel: dict[str, list[int]] = field(default_factory=dict)         # group name -> old index -> new

    def named(self, name: str):
        for kind, n, v in self.objects:
            if n == name:
                return v
        return resolve_registry(name)

    def of_kind(self, *kinds: str) -> list[Any]:
        return [v for k, n, v in self.objects if k in kinds]


def resolve_registry(name: str):
    if name in GROUP_REGISTRY or name in GRAPH_IDS:
        return build_example(name)
    try:
        return finite_registry(name)
    except KeyError:
        raise ParseError(f"unknown object name {name!r}") from None


def _load_group(obj: dict, path: str, doc: Document) -> FiniteRpoGroup:
    if not isinstance(obj.get("order"), int) or obj["order"] < 1:
        raise _err(f"{path}.order", "expected a positive integer (a group has an identity)")
    n = obj["order"]
    table = _matrix(obj.get("table"), f"{path}.table", n)
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise _err(f"{path}.table[{i}][{j}]", f"index {v} out of range 0..{n - 1}")
    ident = next((e for e in range(n) if table[e] == list(range(n))
                  and [table[r][e] for r in range(n)] == list(range(n))), None)
    if ident is None:
        raise _err(f"{path}.table", "no identity element")
    cone = _int_list(obj.get("cone", [ident]), f"{path}.cone")     # default: the trivial cone
    for i, v in enumerate(cone):
        if not 0 <= v < n:
            raise _err(f"{path}.cone[{i}]", f"index {v} out of range 0..{n - 1}")
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise _err(f"{path}.labels", f"expected {n} strings")
    perm = list(range(n))
    perm[0], perm[ident] = ident, 0        # perm: new index -> old index (a swap)
    new_of_old = perm[:]                   # a swap is its own inverse
    new_table = [[new_of_old[table[perm[a]][perm[b]]] for b in range(n)] for a in range(n)]
    new_labels = [str(labels[perm[a]]) if labels else str(perm[a]) for a in range(n)]
    name = obj.get("name", f"G{len(doc.objects)}")
    try:
        grp = FiniteGroup(new_table, new_labels, name)
    except StructuralError as exc:
        raise _err(f"{path}.table", str(exc)) from None
    doc.relabel[name] = new_of_old
    return FiniteRpoGroup(grp, [new_of_old[c] for c in cone], name)


def _group_ref(ref: Any, path: str, doc: Document):
    if isinstance(ref, dict):
        return _load_group(ref, path, doc)
    if not isinstance(ref, str):
        raise _err(path, "expected an object name")
    try:
        return doc.named(ref)
    except ParseError as exc:
        raise _err(path, str(exc)) from None


def _map(v: Any, path: str, dom, cod, doc: Document) -> list[int]:
    if not isinstance(dom, FiniteRpoGroup) or not isinstance(cod, FiniteRpoGroup):
        raise _err(path, "maps are only accepted between finite objects")
    m = _int_list(v, path, dom.order)
    for i, x in enumerate(m):
        if not 0 <= x < cod.order:
            raise _err(f"{path}[{i}]", f"index {x} out of range 0..{cod.order - 1}")
    rd = doc.relabel.get(dom.name, list(range(dom.order)))
    rc = doc.relabel.get(cod.name, list(range(cod.order)))
    out = [0] * dom.order
    for old, x in enumerate(m):
        out[rd[old]] = rc[x]
    return out


def _elems(v: Any, path: str, g: FiniteRpoGroup, doc: Document) -> list[int]:
    xs = _int_list(v, path)
    r = doc.relabel.get(g.name, list(range(g.order)))
    for i, x in enumerate(xs):
        if not 0 <= x < g.order:
            raise _err(f"{path}[{i}]", f"index {x} out of range")
    return [r[x] for x in xs]


def _load_sigma(obj: dict, path: str) -> SigmaAlgebra:
    n = obj.get("carrier")
    if not isinstance(n, int) or n < 1:
        raise _err(f"{path}.carrier", "expected a positive integer")
    plus = _matrix(obj.get("plus"), f"{path}.plus", n)
    ops = {}
    for op in ("neg", "proj0", "proj1", "inj"):
        ops[op] = _int_list(obj.get(op), f"{path}.{op}", n)
    if "tri" in obj:
        ops["tri"] = _int_list(obj["tri"], f"{path}.tri", n)
    zero = obj.get("zero", 0)
    try:
        return SigmaAlgebra(n, zero, plus, name=obj.get("name", "X"), **ops)
    except StructuralError as exc:
        raise _err(path, str(exc)) from None


def load_object(obj: dict, path: str, doc: Document):
    from .internal import PrecrossedModule, ReflexiveGraph
    from .subobjects import NormalSubobject, relation_from_partition

    kind = infer_kind(obj, path)
    try:
        if kind == "group":
            return kind, _load_group(obj, path, doc)
        if kind == "registry":
            return kind, resolve_registry(obj["registry"])
        if kind == "sigma":
            return kind, _load_sigma(obj, path)
        if kind == "morphism":
            dom, cod = _group_ref(obj["dom"], f"{path}.dom", doc), _group_ref(obj["cod"], f"{path}.cod", doc)
            return kind, RpoMorphism(dom, cod, _map(obj["map"], f"{path}.map", dom, cod, doc),
                                     obj.get("name", "f"))
        if kind == "relation":
            g = _group_ref(obj["carrier"], f"{path}.carrier", doc)
            if not isinstance(obj["partition"], list):
                raise _err(f"{path}.partition", "expected a list of classes")
            parts = [_elems(c, f"{path}.partition[{i}]", g, doc) for i, c in enumerate(obj["partition"])]
            return kind, relation_from_partition(g, parts)
        if kind == "subobject":
            g = _group_ref(obj["carrier"], f"{path}.carrier", doc)
            return kind, NormalSubobject(g, frozenset(g.group.closure(_elems(obj["subgroup"], f"{path}.subgroup", g, doc))))
        if kind == "point":
            t, b = _group_ref(obj["total"], f"{path}.total", doc), _group_ref(obj["base"], f"{path}.base", doc)
            d = RpoMorphism(t, b, _map(obj["d"], f"{path}.d", t, b, doc), "d")
            e = RpoMorphism(b, t, _map(obj["e"], f"{path}.e", b, t, doc), "e")
            return kind, SplitPoint(t, b, d, e, obj.get("name", "point"))
        if kind == "action":
            b, t = _group_ref(obj["base"], f"{path}.base", doc), _group_ref(obj["target"], f"{path}.target", doc)
            return kind, ActionMorphism(b, t, _action_rows(obj["act"], f"{path}.act", b, t, doc))
        if kind == "graph":
            a, b = _group_ref(obj["apex"], f"{path}.apex", doc), _group_ref(obj["base"], f"{path}.base", doc)
            d = RpoMorphism(a, b, _map(obj["d"], f"{path}.d", a, b, doc), "d")
            c = RpoMorphism(a, b, _map(obj["c"], f"{path}.c", a, b, doc), "c")
            e = RpoMorphism(b, a, _map(obj["e"], f"{path}.e", b, a, doc), "e")
            return kind, ReflexiveGraph(a, b, d, c, e, obj.get("name", "graph"))
        if kind == "pxmod":
            b, k = _group_ref(obj["base"], f"{path}.base", doc), _group_ref(obj["ker"], f"{path}.ker", doc)
            bd = RpoMorphism(k, b, _map(obj["boundary"], f"{path}.boundary", k, b, doc), "∂")
            act = ActionMorphism(b, k, _action_rows(obj["act"], f"{path}.act", b, k, doc), "μ")
            return kind, PrecrossedModule(b, k, bd, act, obj.get("name", "px"))
    except KeyError as exc:
        raise _err(path, f"missing field {exc.args[0]!r}") from None
    except StructuralError as exc:
        raise _err(path, str(exc)) from None
    raise _err(f"{path}.kind", f"unknown kind {kind!r}")


def _action_rows(v: Any, path: str, base: FiniteRpoGroup, target: FiniteRpoGroup, doc: Document):
    if not isinstance(v, list) or len(v) != base.order:
        raise _err(path, f"expected {base.order} rows")
    rb = doc.relabel.get(base.name, list(range(base.order)))
    rows = [None] * base.order
    for old, row in enumerate(v):
        rows[rb[old]] = _map(row, f"{path}[{old}]", target, target, doc)
    return rows


def load_text(text: str, source: str = "<input>", doc: Document | None = None) -> Document:
    doc = doc or Document()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and "objects" in data:
        items = data["objects"]
        if not isinstance(items, list):
            raise ParseError(f"{source}: objects must be a list")
        paths = [f"{source}:objects[{i}]" for i in range(len(items))]
    else:
        items, paths = [data], [source]
    for obj, path in zip(items, paths):
        kind, value = load_object(obj, path, doc)
        name = obj.get("name", getattr(value, "name", f"obj{len(doc.objects)}"))
        doc.objects.append((kind, name, value))
    return doc


def load_source(src: str, doc: Document | None = None) -> Document:
    """A path to a JSON file, or a registry name such as ``Ex3`` or ``S4_A4``."""
    p = Path(src)
    if p.exists():
        return load_text(p.read_text(), str(p), doc)
    doc = doc or Document()
    value = resolve_registry(src)
    kind = "graph" if src in GRAPH_IDS else "group"
    doc.objects.append((kind, src, value))
    return doc


def group_to_json(g: FiniteRpoGroup) -> dict:
    return {"name": g.name, "order": g.order, "table": g.group.table.tolist(), "cone": sorted(g.cone),
            "labels": list(g.group.labels)}
