"""Split epimorphisms, semidirect products and the automorphism object ⟨X⟩_S.

A split point is ``d: total -> base`` with section ``e``.  It is Schreier
when ``a - e(d(a))`` stays positive for every positive ``a``.  All checks
accept finite objects (exhaustive) and symbolic ones (sampled).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .finite import (
    FiniteGroup,
    FiniteRpoGroup,
    RpoMorphism,
    automorphisms,
    check_morphism,
    kernel,
    monotone_homomorphisms,
    subobject,
    validate_group,
)
from .symbolic import SymbolicMorphism, SymbolicRpoGroup, SymbolicGroup, fmt as sfmt
from .verdict import GuardError, PreconditionError, StructuralError, Verdict, fail, ok


class SplitPoint:
    """``d: total -> base`` split by ``e``; ``kernel_incl`` is optional."""

    def __init__(self, total, base, d, e, name: str = "point", kernel_incl=None):
        self.total = total
        self.base = base
        self.d = d
        self.e = e
        self.name = name
        self.kernel_incl = kernel_incl

    @property
    def finite(self) -> bool:
        return isinstance(self.total, FiniteRpoGroup)

    def check_split(self, seed: int = 0, samples: int = 1000) -> Verdict:
        for x in self.base.domain(seed, samples):
            y = self.d(self.e(x))
            if y != x:
                return fail("split", {"x": self.base.fmt(x)},
                            f"d(e({self.base.fmt(x)}))={self.base.fmt(y)}",
                            sampled=not self.base.exhaustive)
        return ok("split", sampled=not self.base.exhaustive)

    def __repr__(self) -> str:
        return f"SplitPoint({self.name}: {self.total.name} -> {self.base.name})"


def is_schreier(p: SplitPoint, seed: int = 0, samples: int = 1000) -> Verdict:
    t = p.total
    for a in t.positives(seed, samples):
        ea = p.e(p.d(a))
        r = t.sub(a, ea)
        if not t.in_cone(r):
            return fail("schreier", {"a": t.fmt(a)},
                        f"{t.fmt(a)}-{t.fmt(ea)}={t.fmt(r)} not in cone", sampled=not t.exhaustive)
    return ok("schreier", sampled=not t.exhaustive)


# -- automorphism object ---------------------------------------------------------

def compose_perm(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    """f after g."""
    return tuple(f[i] for i in g)


@dataclass
class AutRpo:
    """Aut(G) with the monotone automorphisms as cone; element i is ``perms[i]``."""

    rpo: FiniteRpoGroup
    perms: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int] = field(default_factory=dict)


def aut_rpo(g: FiniteRpoGroup) -> AutRpo:
    ident = tuple(range(g.order))
    perms = sorted(automorphisms(g.group), key=lambda p: (p != ident, p))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[compose_perm(f, h)] for h in perms] for f in perms]
    labels = ["id" if p == ident else "[" + " ".join(g.fmt(v) for v in p) + "]" for p in perms]
    grp = FiniteGroup(table, labels, f"Aut({g.name})")
    cone = [i for i, p in enumerate(perms) if all(p[x] in g.cone for x in g.cone)]
    return AutRpo(FiniteRpoGroup(grp, cone, f"<{g.name}>_S"), perms, index)


# -- actions and semidirect products ---------------------------------------------

class ActionMorphism:
    """``act[x]`` is an automorphism of ``target``'s group, one per ``base`` element."""

    def __init__(self, base: FiniteRpoGroup, target: FiniteRpoGroup,
                 act: Sequence[Sequence[int]], name: str = "mu"):
        if len(act) != base.order:
            raise StructuralError(f"{name}: need one automorphism per base element ({base.order})")
        rows = []
        for row in act:
            r = tuple(int(v) for v in row)
            if len(r) != target.order or any(not 0 <= v < target.order for v in r):
                raise StructuralError(f"{name}: each action row must be a map on 0..{target.order - 1}")
            rows.append(r)
        self.base = base
        self.target = target
        self.act = tuple(rows)
        self.name = name

    def __call__(self, x: int) -> tuple[int, ...]:
        return self.act[x]


def _action_holds(mu: ActionMorphism) -> bool:
    """All of check_action's conditions at once, without witnesses."""
    x0, x1 = mu.base, mu.target
    acts = np.asarray(mu.act, dtype=np.int64)
    if acts.shape != (x0.order, x1.order):
        return False
    if not (np.sort(acts, axis=1) == np.arange(x1.order)).all():
        return False
    t1, t0 = x1.group.table, x0.group.table
    if not (acts[:, t1] == t1[acts[:, :, None], acts[:, None, :]]).all():
        return False
    # act[x+y][i] = act[x][act[y][i]]
    if not (acts[t0] == acts[np.arange(x0.order)[:, None, None], acts[None, :, :]]).all():
        return False
    c1 = np.zeros(x1.order, dtype=bool)
    c1[list(x1.cone)] = True
    return bool(c1[acts[np.ix_(sorted(x0.cone), sorted(x1.cone))]].all())


def check_action(mu: ActionMorphism) -> Verdict:
    if _action_holds(mu):
        return ok("action")
    return _action_witness(mu)


def _action_witness(mu: ActionMorphism) -> Verdict:
    """Element-by-element version of check_action that locates the first failure."""
    x0, x1 = mu.base, mu.target
    for x in x0.elements():
        f = RpoMorphism(x1, x1, mu.act[x], f"{mu.name}({x0.fmt(x)})")
        if len(set(f.map)) != x1.order:
            return fail("automorphism", {"x": x0.fmt(x)}, f"{f.name} is not bijective")
        v = check_morphism(RpoMorphism(FiniteRpoGroup(x1.group, range(x1.order)),
                                       FiniteRpoGroup(x1.group, range(x1.order)), f.map))
        if not v:
            return fail("automorphism", {"x": x0.fmt(x), **(v.witness or {})}, f"{f.name}: {v.detail}")
    for x in x0.elements():
        for y in x0.elements():
            lhs = mu.act[x0.add(x, y)]
            rhs = compose_perm(mu.act[x], mu.act[y])
            if lhs != rhs:
                return fail("action-homomorphism", {"x": x0.fmt(x), "y": x0.fmt(y)},
                            f"{mu.name}({x0.fmt(x)}+{x0.fmt(y)}) != {mu.name}({x0.fmt(x)}).{mu.name}({x0.fmt(y)})")
    for p in sorted(x0.cone):
        for a in sorted(x1.cone):
            b = mu.act[p][a]
            if b not in x1.cone:
                return fail("action-monotone", {"p": x0.fmt(p), "a": x1.fmt(a)},
                            f"{mu.name}({x0.fmt(p)})({x1.fmt(a)})={x1.fmt(b)} not in cone")
    return ok("action")


def semidirect_table(target: FiniteGroup, base: FiniteGroup, act: Sequence[Sequence[int]]):
    """Law (a,x)+(b,y) = (a + act[x](b), x+y) on index a*|base|+x."""
    n, k = target.order, base.order
    a = np.repeat(np.arange(n), k)
    x = np.tile(np.arange(k), n)
    acts = np.asarray(act, dtype=np.int64)                       # (k, n)
    first = target.table[a[:, None], acts[x[:, None], a[None, :]]]  # a + act[x](b)
    second = base.table[x[:, None], x[None, :]]
    table = first * k + second
    labels = [f"({target.labels[i]},{base.labels[j]})" for i in range(n) for j in range(k)]
    return table, labels


def semidirect(mu: ActionMorphism, name: str | None = None) -> SplitPoint:
    v = check_action(mu)
    if not v:
        raise PreconditionError(f"{mu.name} is not a monotone action: {v.detail}", v)
    x1, x0 = mu.target, mu.base
    n, k = x1.order, x0.order
    table, labels = semidirect_table(x1.group, x0.group, mu.act)
    nm = name or f"{x1.name}⋊{x0.name}"
    total = FiniteRpoGroup(FiniteGroup(table, labels, nm),
                           [a * k + x for a in sorted(x1.cone) for x in sorted(x0.cone)], nm)
    d = RpoMorphism(total, x0, [i % k for i in range(n * k)], "p1")
    e = RpoMorphism(x0, total, [x for x in range(k)], "i1")
    i0 = RpoMorphism(x1, total, [a * k for a in range(n)], "i0")
    return SplitPoint(total, x0, d, e, nm, kernel_incl=i0)


def trivial_action(base: FiniteRpoGroup, target: FiniteRpoGroup) -> ActionMorphism:
    return ActionMorphism(base, target, [tuple(range(target.order))] * base.order, "triv")


def conjugation_action(g: FiniteRpoGroup) -> ActionMorphism:
    return ActionMorphism(g, g, [tuple(g.group.conj(x, a) for a in g.elements()) for x in g.elements()],
                          "conj")


# -- classification ----------------------------------------------------------------

@dataclass
class PointClassification:
    kernel: Any
    transport: Callable[[Any], tuple]
    bounds: Verdict
    product: Verdict
    transported_cone: frozenset | None = None
    product_cone: frozenset | None = None
    lex_cone: frozenset | None = None
    action: ActionMorphism | None = None


def classify_point(p: SplitPoint, seed: int = 0, samples: int = 1000) -> PointClassification:
    """Transport the cone along x -> (x - ed(x), d(x)) and compare with P_prod and P_lex."""
    if p.finite:
        return _classify_finite(p)
    return _classify_symbolic(p, seed, samples)


def _classify_finite(p: SplitPoint) -> PointClassification:
    t, b = p.total, p.base
    dmor = p.d if isinstance(p.d, RpoMorphism) else RpoMorphism(t, b, [p.d(x) for x in t.elements()], "d")
    kobj, kinc = kernel(dmor)
    kpos = {v: i for i, v in enumerate(kinc.map)}
    act = [tuple(kpos[t.group.conj(p.e(y), kv)] for kv in kinc.map) for y in b.elements()]
    table, labels = semidirect_table(kobj.group, b.group, act)
    sd = FiniteGroup(table, labels, f"{kobj.name}⋊{b.name}")
    kk = b.order

    def transport(x: int) -> tuple[int, int]:
        return kpos[t.sub(x, p.e(p.d(x)))], p.d(x)

    phi = [transport(x)[0] * kk + transport(x)[1] for x in t.elements()]
    iso_ok = (len(set(phi)) == t.order and all(
        phi[t.add(x, y)] == sd.rows[phi[x]][phi[y]] for x in t.elements() for y in t.elements()))
    if not iso_ok:
        raise PreconditionError(f"{p.name}: decomposition map is not a group isomorphism")
    pk = kobj.cone
    p0 = b.cone
    p00 = frozenset(x for x in p0 if b.neg(x) in p0)
    tcone = frozenset(transport(x) for x in t.cone)
    prod = frozenset((a, x) for a in pk for x in p0)
    lex = frozenset((a, x) for a in pk for x in p00) | frozenset(
        (a, x) for a in range(kobj.order) for x in p0 - p00)
    name = lambda ax: f"({kobj.fmt(ax[0])},{b.fmt(ax[1])})"
    below = sorted(prod - tcone)
    above = sorted(tcone - lex)
    if below:
        bounds = fail("prod<=P<=lex", {"pair": name(below[0])}, f"{name(below[0])} in P_prod but not in P")
    elif above:
        bounds = fail("prod<=P<=lex", {"pair": name(above[0])}, f"{name(above[0])} in P but not in P_lex")
    else:
        bounds = ok("prod<=P<=lex")
    extra = sorted(tcone - prod)
    if extra:
        product = fail("P=P_prod", {"pair": name(extra[0])}, f"{name(extra[0])} in P but not in P_prod")
    else:
        product = ok("P=P_prod")
    action = ActionMorphism(b, kobj, act, "conj_e")
    return PointClassification(kobj, transport, bounds, product, tcone, prod, lex, action)


def _classify_symbolic(p: SplitPoint, seed: int, samples: int) -> PointClassification:
    t, b = p.total, p.base

    def transport(x):
        return t.sub(x, p.e(p.d(x))), p.d(x)

    def in_prod(k, y):
        return t.in_cone(k) and b.in_cone(y)

    def in_lex(k, y):
        if not b.in_cone(y):
            return False
        if b.in_cone(b.neg(y)):
            return t.in_cone(k)
        return True

    pts = list(dict.fromkeys([*t.positives(seed, samples), *t.domain(seed, samples)]))
    bounds = ok("prod<=P<=lex", sampled=True)
    product = ok("P=P_prod", sampled=True)
    for x in pts:
        k, y = transport(x)
        pair = f"({t.fmt(k)},{b.fmt(y)})"
        pos, pr, lx = t.in_cone(x), in_prod(k, y), in_lex(k, y)
        if bounds and pr and not pos:
            bounds = fail("prod<=P<=lex", {"x": t.fmt(x)}, f"{pair} in P_prod but {t.fmt(x)} not in P", sampled=True)
        if bounds and pos and not lx:
            bounds = fail("prod<=P<=lex", {"x": t.fmt(x)}, f"{t.fmt(x)} in P but {pair} not in P_lex", sampled=True)
        if product and pos != pr:
            product = fail("P=P_prod", {"x": t.fmt(x)},
                           f"{t.fmt(x)} {'in' if pos else 'not in'} P but {pair} "
                           f"{'in' if pr else 'not in'} P_prod", sampled=True)
    return PointClassification(None, transport, bounds, product)


def cones_between_prod_and_lex(p: SplitPoint) -> list[frozenset]:
    """All submonoids of the decomposed total group strictly between P_prod and P_lex."""
    c = _classify_finite(p)
    free = sorted(c.lex_cone - c.product_cone)
    k = p.base.order
    total_idx = lambda ax: ax[0] * k + ax[1]
    sd_table = semidirect_table(c.kernel.group, p.base.group, c.action.act)[0]
    found = []
    for mask in range(1, 1 << len(free)):
        chosen = {free[i] for i in range(len(free)) if mask >> i & 1}
        cand = {total_idx(ax) for ax in c.product_cone | chosen}
        if all(int(sd_table[u, v]) in cand for u in cand for v in cand):
            found.append(frozenset(c.product_cone | chosen))
    return found


# -- pullbacks -----------------------------------------------------------------------

def pullback_point(p: SplitPoint, f: RpoMorphism) -> SplitPoint:
    """Pull ``p`` back along ``f: Y -> base``; cone is the componentwise one."""
    t, y = p.total, f.dom
    elems = [(a, u) for a in t.elements() for u in y.elements() if p.d(a) == f(u)]
    pos = {e: i for i, e in enumerate(elems)}
    table = [[pos[(t.add(a, b), y.add(u, v))] for (b, v) in elems] for (a, u) in elems]
    labels = [f"({t.fmt(a)},{y.fmt(u)})" for a, u in elems]
    cone = [i for i, (a, u) in enumerate(elems) if t.in_cone(a) and y.in_cone(u)]
    obj = FiniteRpoGroup(FiniteGroup(table, labels, f"{t.name}x_{p.base.name}{y.name}"), cone)
    d = RpoMorphism(obj, y, [u for a, u in elems], "q")
    e = RpoMorphism(y, obj, [pos[(p.e(f(u)), u)] for u in y.elements()], "s")
    return SplitPoint(obj, y, d, e, f"pb({p.name})")


def split_points(total: FiniteRpoGroup, base: FiniteRpoGroup):
    """Every (d, e) with d, e monotone and d.e = id."""
    sections = [e for e in monotone_homomorphisms(base, total) if e.is_injective()]
    if not sections:
        return
    for d in monotone_homomorphisms(total, base):
        for e in sections:
            if all(d(e(x)) == x for x in base.elements()):
                yield SplitPoint(total, base, d, e)


# -- action representability ----------------------------------------------------------

def normal_form_key(p: SplitPoint, incl: RpoMorphism) -> tuple | None:
    """Group law and cone transported to pairs (a, y) via (a, y) -> incl(a) + e(y)."""
    x, y, t = incl.dom, p.base, p.total
    coords = [t.add(incl(a), p.e(u)) for a in x.elements() for u in y.elements()]
    if len(set(coords)) != t.order:
        return None
    pos = {c: i for i, c in enumerate(coords)}
    table = tuple(tuple(pos[t.add(c1, c2)] for c2 in coords) for c1 in coords)
    cone = frozenset(pos[c] for c in t.cone)
    return table, cone


def check_action_rep(x: FiniteRpoGroup, y: FiniteRpoGroup, max_product: int = 64) -> Verdict:
    """Compare classified Schreier extensions of y by x with monotone maps y -> ⟨x⟩_S.

    Route one builds a semidirect product for every monotone morphism into
    ⟨x⟩_S.  Route two brute-forces group laws of normal form on X×Y and
    every compatible cone, keeping the Schreier ones.  Both are reduced to
    normal-form keys; isomorphisms of split extensions fixing kernel and
    codomain are exactly equalities of keys.
    """
    if x.order * y.order > max_product:
        raise GuardError(f"|x|*|y| = {x.order * y.order} exceeds guard {max_product}")
    aut = aut_rpo(x)
    homs = list(monotone_homomorphisms(y, aut.rpo))
    route_a = []
    for mu in homs:
        act = ActionMorphism(y, x, [aut.perms[mu(u)] for u in y.elements()])
        pt = semidirect(act)
        key = normal_form_key(pt, pt.kernel_incl)
        if not is_schreier(pt):
            return fail("action-rep", {"mu": list(mu.map)}, "semidirect product is not Schreier")
        route_a.append(key)
    if len(set(route_a)) != len(route_a):
        return fail("action-rep", {"count": len(route_a)}, "two morphisms give isomorphic extensions")
    route_b = set(_brute_force_extensions(x, y))
    info = {"morphisms": len(homs), "classes": len(route_b)}
    if set(route_a) != route_b:
        missing = len(route_b - set(route_a))
        extra = len(set(route_a) - route_b)
        return fail("action-rep", {"unmatched_classes": missing, "unmatched_morphisms": extra},
                    f"{len(homs)} morphisms vs {len(route_b)} extension classes", **info)
    return ok("action-rep", detail=f"{len(homs)} classes = {len(homs)} morphisms", **info)


def _brute_force_extensions(x: FiniteRpoGroup, y: FiniteRpoGroup):
    n, k = x.order, y.order
    auts = automorphisms(x.group)
    yrows = y.group.rows
    ident = tuple(range(n))
    assign: list[tuple[int, ...] | None] = [None] * k
    assign[0] = ident

    def consistent(u: int) -> bool:
        for v in range(k):
            if assign[v] is None:
                continue
            for s, t in ((u, v), (v, u)):
                w = yrows[s][t]
                if assign[w] is not None and assign[w] != compose_perm(assign[s], assign[t]):
                    return False
        return True

    def rec(u: int):
        if u == k:
            yield tuple(assign)
            return
        for f in auts:
            assign[u] = f
            if consistent(u):
                yield from rec(u + 1)
            assign[u] = None

    xrows = x.group.rows
    for twist in rec(1):
        table = [[xrows[a][twist[u][b]] * k + yrows[u][v] for b in range(n) for v in range(k)]
                 for a in range(n) for u in range(k)]
        grp = FiniteGroup(table)
        if not validate_group(grp):
            continue
        for cone in _compatible_cones(grp, x, y):
            total = FiniteRpoGroup(grp, cone)
            d = RpoMorphism(total, y, [i % k for i in range(n * k)], "p1")
            e = RpoMorphism(y, total, list(range(k)), "i1")
            pt = SplitPoint(total, y, d, e)
            if is_schreier(pt):
                yield tuple(tuple(r) for r in grp.rows), frozenset(cone)


def _compatible_cones(grp: FiniteGroup, x: FiniteRpoGroup, y: FiniteRpoGroup):
    """Submonoids C with C ∩ i0(X) = i0(P_x), i1(P_y) ⊆ C and p1(C) ⊆ P_y."""
    k = y.order
    kernel_part = {a * k for a in range(x.order)}
    want_kernel = {a * k for a in x.cone}

    def good(c):
        return (c & kernel_part) == want_kernel and all(i % k in y.cone for i in c)

    start = grp.closure([a * k for a in x.cone] + [u for u in y.cone])
    if not good(start):
        return []
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for g in range(grp.order):
                if g in c:
                    continue
                bigger = grp.closure(sorted(c) + [g])
                if bigger not in found and good(bigger):
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=lambda c: (len(c), sorted(c)))


# -- S-center ------------------------------------------------------------------------

def indiscrete_point(g):
    """G ⋊ G under conjugation with cone {(a,b) : b ∈ P, a+b ∈ P}, split by (p1, i1)."""
    if isinstance(g, FiniteRpoGroup):
        act = conjugation_action(g)
        n = g.order
        table, labels = semidirect_table(g.group, g.group, act.act)
        cone = [a * n + b for a in range(n) for b in range(n) if b in g.cone and g.add(a, b) in g.cone]
        total = FiniteRpoGroup(FiniteGroup(table, labels, f"∇{g.name}"), cone)
        d = RpoMorphism(total, g, [i % n for i in range(n * n)], "p1")
        e = RpoMorphism(g, total, list(range(n)), "i1")
        return SplitPoint(total, g, d, e, f"∇{g.name}")
    grp = g.group

    def op(u, v):
        a, b = u
        c, d = v
        return grp.op(a, grp.op(grp.op(b, c), grp.inv(b))), grp.op(b, d)

    def inv(u):
        a, b = u
        nb = grp.inv(b)
        return grp.op(grp.op(nb, grp.inv(a)), b), nb

    from .symbolic import product_domain
    sg = SymbolicGroup(f"∇{g.name}", product_domain(grp.domain, grp.domain), op, inv,
                       (grp.zero, grp.zero), grp.abelian)
    boundary = [(g.neg(b), b) for b in g.boundary] + [(b, g.zero) for b in g.boundary]
    total = SymbolicRpoGroup(sg, lambda u: g.in_cone(u[1]) and g.in_cone(grp.op(u[0], u[1])),
                             f"∇{g.name}", boundary=boundary,
                             cone_draw=_indiscrete_draw(g))
    d = SymbolicMorphism(total, g, lambda u: u[1], "p1")
    e = SymbolicMorphism(g, total, lambda b: (grp.zero, b), "i1")
    return SplitPoint(total, g, d, e, f"∇{g.name}")


def _indiscrete_draw(g):
    def draw(rng, h):
        b = g.cone_draw(rng, h) if g.cone_draw else g.group.domain.draw(rng, h)
        p = g.cone_draw(rng, h) if g.cone_draw else g.group.domain.draw(rng, h)
        return g.sub(p, b), b
    return draw


@dataclass
class CenterResult:
    verdict: Verdict
    subgroup: frozenset | None = None
    cone: frozenset | None = None
    carrier: Any = None
    whole: bool = False

    @property
    def is_zero(self) -> bool:
        return self.subgroup is not None and len(self.subgroup) == 1


def s_center(g, seed: int = 0, samples: int = 1000) -> CenterResult:
    """Kernel of conjugation into ⟨G⟩_S, when the indiscrete point is Schreier."""
    pt = indiscrete_point(g)
    v = is_schreier(pt, seed, samples)
    if not v:
        a, b = _pair_of_witness(pt, v, seed, samples)
        nb = g.neg(b)
        detail = (f"{g.fmt(b)} is positive but -{g.fmt(b)}={g.fmt(nb)} is not"
                  if not g.in_cone(nb) else v.detail)
        return CenterResult(fail("s-center", {"b": g.fmt(b)}, "cone is not a group: " + detail,
                                 sampled=v.sampled))
    if isinstance(g, FiniteRpoGroup):
        aut = aut_rpo(g)
        conj = RpoMorphism(g, aut.rpo, [aut.index[tuple(g.group.conj(x, a) for a in g.elements())]
                                        for x in g.elements()], "mu")
        if not check_morphism(conj):
            raise PreconditionError("conjugation is not a monotone morphism into <G>_S")
        z = frozenset(x for x in g.elements() if conj(x) == 0)
        return CenterResult(ok("s-center", detail=f"|Z|={len(z)}"), z, z & g.cone, g,
                            whole=len(z) == g.order)
    if g.group.abelian and g.cone_is_group is not None:
        return CenterResult(ok("s-center", detail="abelian: whole object", sampled=True), carrier=g, whole=True)
    raise PreconditionError(f"{g.name}: center only computed for abelian registry objects")


def _pair_of_witness(pt: SplitPoint, v: Verdict, seed: int, samples: int):
    for a in pt.total.positives(seed, samples):
        if pt.total.fmt(a) == v.witness["a"]:
            return a
    raise AssertionError("witness not found in sample")
