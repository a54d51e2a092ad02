"""Normal subobjects, effective equivalence relations and their lattice.

A normal subobject of ``(G, P)`` is a normal subgroup ``N`` with the forced
cone ``N ∩ P``.  An effective relation is the kernel pair of a morphism: its
classes are cosets of a normal subgroup and its positive pairs are the
related pairs of positive elements.
"""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .finite import FiniteGroup, FiniteRpoGroup, RpoMorphism, kernel, subgroup_generators
from .schreier import SplitPoint, is_schreier
from .verdict import PreconditionError, StructuralError, Verdict, fail, ok


@dataclass(frozen=True)
class NormalSubobject:
    carrier: FiniteRpoGroup
    subgroup: frozenset[int]

    def __post_init__(self):
        if 0 not in self.subgroup or not self.carrier.group.is_normal(self.subgroup):
            raise PreconditionError("not a normal subgroup")
        if self.carrier.group.closure(self.subgroup) != self.subgroup:
            raise PreconditionError("not a subgroup")

    @property
    def cone(self) -> frozenset[int]:
        return self.subgroup & self.carrier.cone

    def label(self) -> str:
        g = self.carrier
        return "{" + ",".join(g.fmt(a) for a in sorted(self.subgroup)) + "}"


@dataclass(frozen=True)
class EffEqRelation:
    carrier: FiniteRpoGroup
    classes: tuple[frozenset[int], ...]

    @cached_property
    def block(self) -> dict[int, int]:
        return {a: i for i, c in enumerate(self.classes) for a in c}

    @cached_property
    def normal(self) -> frozenset[int]:
        return next(c for c in self.classes if 0 in c)

    def related(self, a: int, b: int) -> bool:
        blk = self.block
        return blk[a] == blk[b]

    @cached_property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for c in self.classes for a in c for b in c)

    @cached_property
    def cone_pairs(self) -> frozenset[tuple[int, int]]:
        p = self.carrier.cone
        return frozenset((a, b) for a, b in self.pairs if a in p and b in p)


def relation_from_partition(carrier: FiniteRpoGroup, partition: Sequence[Iterable[int]]) -> EffEqRelation:
    classes = tuple(frozenset(int(a) for a in c) for c in partition)
    flat = sorted(a for c in classes for a in c)
    if flat != list(carrier.elements()):
        raise StructuralError("partition must cover every element exactly once")
    n = next((c for c in classes if 0 in c))
    if not carrier.group.is_normal(n) or carrier.group.closure(n) != n:
        raise PreconditionError("class of 0 is not a normal subgroup")
    cosets = {frozenset(carrier.add(x, a) for a in n) for x in carrier.elements()}
    if cosets != set(classes):
        raise PreconditionError("classes are not the cosets of the class of 0")
    return EffEqRelation(carrier, tuple(sorted(classes, key=min)))


def relation_of_normal(carrier: FiniteRpoGroup, n: Iterable[int]) -> EffEqRelation:
    n = frozenset(n)
    cosets = {frozenset(carrier.add(x, a) for a in n) for x in carrier.elements()}
    return relation_from_partition(carrier, sorted(cosets, key=min))


def eff_rel_of(f: RpoMorphism) -> EffEqRelation:
    """Kernel pair of ``f``: fibres as classes."""
    fib: dict[int, set[int]] = {}
    for a in f.dom.elements():
        fib.setdefault(f(a), set()).add(a)
    return EffEqRelation(f.dom, tuple(sorted((frozenset(c) for c in fib.values()), key=min)))


def discrete(carrier: FiniteRpoGroup) -> EffEqRelation:
    return relation_of_normal(carrier, [0])


def indiscrete(carrier: FiniteRpoGroup) -> EffEqRelation:
    return relation_of_normal(carrier, carrier.elements())


def _same_carrier(r: EffEqRelation, s: EffEqRelation) -> None:
    if r.carrier != s.carrier:
        raise StructuralError("relations live on different carriers")


def rel_compose(r: EffEqRelation, s: EffEqRelation) -> tuple[frozenset, frozenset]:
    """s after r on group pairs and on cone pairs: {(a, c) : a r b, b s c}."""
    _same_carrier(r, s)

    def comp(x, y):
        by_src: dict[int, list[int]] = {}
        for b, c in y:
            by_src.setdefault(b, []).append(c)
        return frozenset((a, c) for a, b in x for c in by_src.get(b, ()))

    return comp(r.pairs, s.pairs), comp(r.cone_pairs, s.cone_pairs)


def permutes(r: EffEqRelation, s: EffEqRelation) -> Verdict:
    rs, rs_cone = rel_compose(r, s)
    sr, sr_cone = rel_compose(s, r)
    g = r.carrier
    for name, x, y in (("group-pairs", rs, sr), ("cone-pairs", rs_cone, sr_cone)):
        diff = sorted(x ^ y)
        if diff:
            a, c = diff[0]
            side = "s.r" if (a, c) in x else "r.s"
            return fail("permutes", {"a": g.fmt(a), "c": g.fmt(c)},
                        f"({g.fmt(a)},{g.fmt(c)}) lies only in {side} ({name})")
    return ok("permutes")


def normalization(r: EffEqRelation) -> NormalSubobject:
    sub = r.normal
    cone = frozenset(b for a, b in r.cone_pairs if a == 0)
    out = NormalSubobject(r.carrier, sub)
    if out.cone != cone:
        raise AssertionError("normalization cone disagrees with the intersected cone")
    return out


# -- lattices -----------------------------------------------------------------------------

class Lattice:
    """A finite lattice given by its order and its join/meet tables."""

    def __init__(self, labels: Sequence[str], leq, join, meet, elements: Sequence | None = None,
                 name: str = "L"):
        self.labels = list(labels)
        self.leq = np.asarray(leq, dtype=bool)
        self.join = np.asarray(join, dtype=np.int64)
        self.meet = np.asarray(meet, dtype=np.int64)
        self.elements = list(elements) if elements is not None else list(range(len(labels)))
        self.name = name
        n = len(self.labels)
        for arr in (self.leq, self.join, self.meet):
            if arr.shape != (n, n):
                raise StructuralError(f"lattice tables must be {n}x{n}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def check_laws(self) -> Verdict:
        """join and meet are the least upper and greatest lower bounds for leq."""
        n, le = self.size, self.leq
        for a, b in itertools.product(range(n), repeat=2):
            j, m = self.join[a, b], self.meet[a, b]
            ups = [u for u in range(n) if le[a, u] and le[b, u]]
            downs = [u for u in range(n) if le[u, a] and le[u, b]]
            if j not in ups or any(not le[j, u] for u in ups):
                return fail("join", {"a": self.labels[a], "b": self.labels[b]}, "join is not the least upper bound")
            if m not in downs or any(not le[u, m] for u in downs):
                return fail("meet", {"a": self.labels[a], "b": self.labels[b]}, "meet is not the greatest lower bound")
        return ok("lattice")


def lattice_from_order(labels: Sequence[str], leq) -> Lattice:
    le = np.asarray(leq, dtype=bool)
    n = len(labels)

    def best(cands, better):
        for u in cands:
            if all(better(u, v) for v in cands):
                return u
        raise PreconditionError("order is not a lattice")

    join = [[best([u for u in range(n) if le[a, u] and le[b, u]], lambda u, v: le[u, v]) for b in range(n)]
            for a in range(n)]
    meet = [[best([u for u in range(n) if le[u, a] and le[u, b]], lambda u, v: le[v, u]) for b in range(n)]
            for a in range(n)]
    return Lattice(labels, le, join, meet)


def pentagon() -> Lattice:
    """N5: 0 < a < b < 1 and 0 < c < 1 with c incomparable to a, b."""
    labels = ["0", "a", "b", "c", "1"]
    up = {("0", x) for x in labels} | {(x, "1") for x in labels} | {(x, x) for x in labels} | {("a", "b")}
    le = [[(x, y) in up for y in labels] for x in labels]
    return lattice_from_order(labels, le)


def normal_lattice(g: FiniteRpoGroup) -> Lattice:
    """Normal subobjects (N, N∩P); join (N·M, N·M∩P), meet (N∩M, N∩M∩P)."""
    subs = list(g.group.normal_subgroups)
    objs = [NormalSubobject(g, s) for s in subs]
    idx = {s: i for i, s in enumerate(subs)}
    n = len(subs)
    leq = [[subs[a] <= subs[b] for b in range(n)] for a in range(n)]
    join = [[idx[frozenset(g.add(x, y) for x in subs[a] for y in subs[b])] for b in range(n)] for a in range(n)]
    meet = [[idx[subs[a] & subs[b]] for b in range(n)] for a in range(n)]
    labels = [f"({o.label()},cone {len(o.cone)})" for o in objs]
    return Lattice(labels, leq, join, meet, objs, f"L({g.name})")


def check_modular(lat: Lattice) -> Verdict:
    """(a∧b)∨(c∧b) = ((a∧b)∨c)∧b for all triples."""
    J, M = lat.join, lat.meet
    n = lat.size
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    ab = M[a, b]
    lhs = J[ab, M[c, b]]
    rhs = M[J[ab, c], b]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y, z = (int(v) for v in bad[0])
        L = lat.labels
        return fail("modular", {"a": L[x], "b": L[y], "c": L[z]},
                    f"a={L[x]}, b={L[y]}, c={L[z]}: (a∧b)∨(c∧b)={L[int(lhs[x, y, z])]} but "
                    f"((a∧b)∨c)∧b={L[int(rhs[x, y, z])]}")
    return ok("modular", detail=f"{n}-element lattice", size=n)


def quotient(g: FiniteRpoGroup, n: frozenset[int]) -> RpoMorphism:
    """G -> G/N with the image cone."""
    cosets = sorted({frozenset(g.add(x, a) for a in n) for x in g.elements()}, key=min)
    pos = {a: i for i, c in enumerate(cosets) for a in c}
    reps = [min(c) for c in cosets]
    table = [[pos[g.add(x, y)] for y in reps] for x in reps]
    q = FiniteRpoGroup(FiniteGroup(table, [g.fmt(r) + "N" for r in reps], f"{g.name}/N"),
                       {pos[p] for p in g.cone})
    return RpoMorphism(g, q, [pos[a] for a in g.elements()], "q")


def check_lattice_iso(g: FiniteRpoGroup) -> Verdict:
    """N -> (N, N∩P) is a lattice isomorphism from the plain normal-subgroup lattice.

    The plain side is computed independently: normal subgroups by brute
    force over closures of normal generating sets, join as the subgroup
    generated by the union.  Each (N, N∩P) is confirmed to be a kernel by
    building the quotient.
    """
    grp = g.group
    plain = sorted({grp.closure(s) for s in grp.subgroups if grp.is_normal(s)}, key=lambda s: (len(s), sorted(s)))
    lat = normal_lattice(g)
    objs = lat.elements
    where = {o.subgroup: i for i, o in enumerate(objs)}
    if len(plain) != lat.size or set(plain) != set(where):
        return fail("lattice-iso", {"size": lat.size}, "subobjects and normal subgroups differ")
    for s in plain:
        kobj, kinc = kernel(quotient(g, s))
        if set(kinc.map) != s or {kinc(c) for c in kobj.cone} != (s & g.cone):
            return fail("lattice-iso", {"N": objs[where[s]].label()}, "(N, N∩P) is not a kernel")
    for s, t in itertools.product(plain, repeat=2):
        j = grp.closure(s | t)
        m = s & t
        i, k = where[s], where[t]
        if objs[lat.join[i, k]].subgroup != j:
            return fail("lattice-iso", {"N": objs[i].label(), "M": objs[k].label()}, "join not preserved")
        if objs[lat.meet[i, k]].subgroup != m:
            return fail("lattice-iso", {"N": objs[i].label(), "M": objs[k].label()}, "meet not preserved")
    return ok("lattice-iso", detail=f"{lat.size}-element lattice", size=lat.size)


# -- commutators -----------------------------------------------------------------------------

def _as_pair(x) -> tuple[frozenset[int], frozenset[int]]:
    if isinstance(x, NormalSubobject):
        return x.subgroup, x.cone
    sub, cone = x
    return frozenset(sub), frozenset(cone)


def huq_commute(carrier: FiniteRpoGroup, x, y) -> Verdict:
    """Elementwise commutation; the connector (a, b) -> a + b is then monotone."""
    xs, xc = _as_pair(x)
    ys, yc = _as_pair(y)
    if not xc <= xs & carrier.cone or not yc <= ys & carrier.cone:
        raise PreconditionError("subobject cones must lie in subgroup ∩ cone")
    for a in sorted(xs):
        for b in sorted(ys):
            if carrier.add(a, b) != carrier.add(b, a):
                return fail("huq", {"a": carrier.fmt(a), "b": carrier.fmt(b)},
                            f"{carrier.fmt(a)}+{carrier.fmt(b)} != {carrier.fmt(b)}+{carrier.fmt(a)}")
    for a in sorted(xc):
        for b in sorted(yc):
            if carrier.add(a, b) not in carrier.cone:
                return fail("huq", {"a": carrier.fmt(a), "b": carrier.fmt(b)}, "connector not monotone")
    return ok("huq")


def relation_point(r: EffEqRelation, leg: int) -> SplitPoint:
    """The relation as an rpo group of pairs, projected on ``leg`` and split by the diagonal."""
    g = r.carrier
    pairs = sorted(r.pairs)
    pos = {p: i for i, p in enumerate(pairs)}
    arr = np.asarray(pairs, dtype=np.int64)
    dense = np.full((g.order, g.order), -1, dtype=np.int64)
    dense[arr[:, 0], arr[:, 1]] = np.arange(len(pairs))
    t = g.group.table
    table = dense[t[arr[:, None, 0], arr[None, :, 0]], t[arr[:, None, 1], arr[None, :, 1]]]
    cone = [pos[p] for p in r.cone_pairs]
    obj = FiniteRpoGroup(FiniteGroup(table, [f"({g.fmt(a)},{g.fmt(b)})" for a, b in pairs], "R"), cone)
    d = RpoMorphism(obj, g, [p[leg] for p in pairs], f"p{leg}")
    e = RpoMorphism(g, obj, [pos[(a, a)] for a in g.elements()], "Δ")
    return SplitPoint(obj, g, d, e, f"R.p{leg}")


@lru_cache(maxsize=4096)
def is_s_relation(r: EffEqRelation) -> bool:
    """Both projections of the relation are Schreier points."""
    return bool(is_schreier(relation_point(r, 0))) and bool(is_schreier(relation_point(r, 1)))


def smith_commute(r: EffEqRelation, s: EffEqRelation) -> Verdict:
    """Candidate connector p(a, b, c) = a - b + c on R ×_X S."""
    _same_carrier(r, s)
    g = r.carrier
    t = g.group.table
    inv = np.asarray(g.group.inverse)
    rb, sb = r.block, s.block
    triples = [(a, b, c) for a in g.elements() for b in r.classes[rb[a]] for c in s.classes[sb[b]]]
    T = np.asarray(sorted(triples), dtype=np.int64)
    A, B, C = T[:, 0], T[:, 1], T[:, 2]
    p = t[t[A, inv[B]], C]
    dense = np.full((g.order,) * 3, -1, dtype=np.int64)
    dense[A, B, C] = np.arange(len(T))

    def mismatches(rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        sA = t[A[rows, None], A[None, cols]]
        sB = t[B[rows, None], B[None, cols]]
        sC = t[C[rows, None], C[None, cols]]
        lhs = p[dense[sA, sB, sC]]
        return np.argwhere(lhs != t[p[rows, None], p[None, cols]])

    # the pullback is generated by diagonals (x,x,x), (n,0,0) and (0,0,m)
    gens = [dense[x, x, x] for x in g.group.generators]
    gens += [dense[n, 0, 0] for n in subgroup_generators(g.group, r.normal)]
    gens += [dense[0, 0, m] for m in subgroup_generators(g.group, s.normal)]
    everything = np.arange(len(T))
    label = "smith" if (is_s_relation(r) and is_s_relation(s)) else "smith-candidate"
    fmt3 = lambda i: "(" + ",".join(g.fmt(int(v)) for v in T[i]) + ")"
    if mismatches(everything, np.asarray(gens, dtype=np.int64)).size:
        for start in range(0, len(T), 32):
            rows = everything[start:start + 32]
            bad = mismatches(rows, everything)
            if bad.size:
                i, j = int(rows[bad[0][0]]), int(bad[0][1])
                detail = f"p{fmt3(i)}+p{fmt3(j)} != p({fmt3(i)}+{fmt3(j)})"
                if label == "smith-candidate":
                    detail = "candidate connector fails: " + detail
                return fail(label, {"x": fmt3(i), "y": fmt3(j)}, detail)
    cone = np.zeros(g.order, dtype=bool)
    cone[list(g.cone)] = True
    bad = np.nonzero(cone[A] & cone[B] & cone[C] & ~cone[p])[0]
    if bad.size:
        i = int(bad[0])
        return fail(label, {"x": fmt3(i)}, f"p{fmt3(i)} not in cone")
    return ok(label)
