"""Reflexive graphs, S-precrossed modules and internal categories.

A reflexive graph is ``d, c: X1 -> X0`` with a common section ``e``.  The
only candidate composition is ``m(a, b) = b - ec(b) + a`` on pairs with
``d(a) = c(b)``; the graph is an internal category when that map is a
monotone group morphism.  The inverse candidate is ``σ(a) = ec(a) - a + ed(a)``.

Graphs are kept in the caller's coordinates.  The semidirect presentation
``K ⋊ X0`` is computed on demand through ``η: a -> (a - ed(a), d(a))``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .finite import (
    subgroup_generators,
    FiniteGroup,
    FiniteRpoGroup,
    RpoMorphism,
    check_morphism,
    direct_product,
    kernel,
    monotone_automorphisms,
    monotone_homomorphisms,
    subobject,
)
from .schreier import ActionMorphism, AutRpo, SplitPoint, aut_rpo, check_action, is_schreier, semidirect
from .symbolic import Domain, SymbolicGroup, SymbolicMorphism, SymbolicRpoGroup, product_domain
from .verdict import PreconditionError, StructuralError, Verdict, fail, ok


class ReflexiveGraph:
    def __init__(self, apex, base, d, c, e, name: str = "graph"):
        self.apex = apex
        self.base = base
        self.d = d
        self.c = c
        self.e = e
        self.name = name

    @property
    def finite(self) -> bool:
        return isinstance(self.apex, FiniteRpoGroup)

    def point(self) -> SplitPoint:
        return SplitPoint(self.apex, self.base, self.d, self.e, f"{self.name}.(d,e)")

    def check(self, seed: int = 0, samples: int = 1000) -> Verdict:
        """Morphism checks (finite only) and d.e = c.e = id."""
        if self.finite:
            for f in (self.d, self.c, self.e):
                v = check_morphism(f)
                if not v:
                    return fail(f"{f.name}-morphism", v.witness or {}, v.detail)
        for x in self.base.domain(seed, samples):
            for leg, f in (("d", self.d), ("c", self.c)):
                y = f(self.e(x))
                if y != x:
                    return fail("reflexive", {"x": self.base.fmt(x)},
                                f"{leg}(e({self.base.fmt(x)}))={self.base.fmt(y)}",
                                sampled=not self.finite)
        return ok("reflexive-graph", sampled=not self.finite)

    def __repr__(self) -> str:
        return f"ReflexiveGraph({self.name}: {self.apex.name} => {self.base.name})"


def m_value(g: ReflexiveGraph, a, b):
    x1 = g.apex
    return x1.add(x1.sub(b, g.e(g.c(b))), a)


def unique_m(g: ReflexiveGraph) -> Callable[[Any, Any], Any]:
    """The set map m(a, b) = b - ec(b) + a on composable pairs d(a) = c(b)."""

    def m(a, b):
        if g.d(a) != g.c(b):
            raise PreconditionError(f"({g.apex.fmt(a)},{g.apex.fmt(b)}) is not composable")
        return m_value(g, a, b)

    return m


def sigma_of(g: ReflexiveGraph) -> Callable[[Any], Any]:
    x1 = g.apex

    def sigma(a):
        return x1.add(x1.sub(g.e(g.c(a)), a), g.e(g.d(a)))

    return sigma


# -- composable pairs -----------------------------------------------------------------

def _finite_pairs(g: ReflexiveGraph) -> tuple[np.ndarray, np.ndarray]:
    d = np.asarray(g.d.map)
    c = np.asarray(g.c.map)
    a, b = np.nonzero(d[:, None] == c[None, :])
    return a.astype(np.int64), b.astype(np.int64)


def _finite_m(g: ReflexiveGraph, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    t = g.apex.group.table
    inv = np.asarray(g.apex.group.inverse)
    ec = np.asarray(g.e.map)[np.asarray(g.c.map)]
    return t[t[b, inv[ec[b]]], a]


def symbolic_pairs(g: ReflexiveGraph, seed: int, samples: int, positive: bool = False) -> list[tuple]:
    """Composable pairs built as (a, k + ed(a)) with k in ker c, plus unit pairs."""
    x1 = g.apex
    src = x1.positives(seed, samples) if positive else x1.domain(seed, samples)
    rng = random.Random(f"{g.name}:pairs:{seed}:{positive}")
    head = src[: 1 + len(getattr(x1, "boundary", ()))]
    out = []

    def push(a, b):
        if g.d(a) == g.c(b) and (not positive or (x1.in_cone(a) and x1.in_cone(b))):
            out.append((a, b))

    for a in head:
        push(a, g.e(g.d(a)))
        push(g.e(g.c(a)), a)
        for y in head:
            push(a, x1.add(x1.sub(y, g.e(g.c(y))), g.e(g.d(a))))
    for _ in range(samples):
        a, y = rng.choice(src), rng.choice(src)
        push(a, x1.add(x1.sub(y, g.e(g.c(y))), g.e(g.d(a))))
    return list(dict.fromkeys(out))


def _pair_fmt(x1, p) -> str:
    return f"({x1.fmt(p[0])},{x1.fmt(p[1])})"


def is_internal_category(g: ReflexiveGraph, seed: int = 0, samples: int = 1000) -> Verdict:
    """m is (i) a group morphism on the pullback and (ii) monotone for its cone."""
    x1 = g.apex
    if g.finite:
        a, b = _finite_pairs(g)
        n = x1.order
        m = _finite_m(g, a, b)
        mtab = np.full((n, n), -1, dtype=np.int64)
        mtab[a, b] = m
        pidx = np.full((n, n), -1, dtype=np.int64)
        pidx[a, b] = np.arange(a.size)
        t = x1.group.table

        def mismatches(rows, cols):
            lhs = mtab[t[a[rows, None], a[None, cols]], t[b[rows, None], b[None, cols]]]
            rhs = t[m[rows, None], m[None, cols]]
            return np.argwhere(lhs != rhs), lhs, rhs

        # pairs are generated by (k, 0), k in ker d, and (ec(y), y)
        kd = frozenset(int(v) for v in np.nonzero(np.asarray(g.d.map) == 0)[0])
        gens = [pidx[k, 0] for k in subgroup_generators(x1.group, kd)]
        gens += [pidx[g.e(g.c(y)), y] for y in x1.group.generators]
        everything = np.arange(a.size)
        if mismatches(everything, np.asarray(gens, dtype=np.int64))[0].size:
            for start in range(0, a.size, 32):
                rows = everything[start:start + 32]
                bad, lhs, rhs = mismatches(rows, everything)
                if bad.size:
                    r, j = (int(v) for v in bad[0])
                    i = int(rows[r])
                    p, q = (int(a[i]), int(b[i])), (int(a[j]), int(b[j]))
                    return fail("category-homomorphism", {"x": _pair_fmt(x1, p), "y": _pair_fmt(x1, q)},
                                f"(i) m({_pair_fmt(x1, p)}+{_pair_fmt(x1, q)})={x1.fmt(int(lhs[r, j]))} but "
                                f"m{_pair_fmt(x1, p)}+m{_pair_fmt(x1, q)}={x1.fmt(int(rhs[r, j]))}")
        cone = np.zeros(n, dtype=bool)
        cone[list(x1.cone)] = True
        bad = np.nonzero(cone[a] & cone[b] & ~cone[m])[0]
        if bad.size:
            i = int(bad[0])
            p = (int(a[i]), int(b[i]))
            return fail("category-monotone", {"x": _pair_fmt(x1, p)},
                        f"(ii) m{_pair_fmt(x1, p)}={x1.fmt(int(m[i]))} not in cone")
        return ok("internal-category", pairs=int(a.size))
    pairs = symbolic_pairs(g, seed, samples)
    rng = random.Random(f"{g.name}:cat:{seed}")
    head = pairs[: min(len(pairs), 40)]
    checks = [(p, q) for p in head for q in head]
    checks += [(rng.choice(pairs), rng.choice(pairs)) for _ in range(samples)]
    for p, q in checks:
        s = (x1.add(p[0], q[0]), x1.add(p[1], q[1]))
        lhs = m_value(g, *s)
        rhs = x1.add(m_value(g, *p), m_value(g, *q))
        if lhs != rhs:
            return fail("category-homomorphism", {"x": _pair_fmt(x1, p), "y": _pair_fmt(x1, q)},
                        f"(i) m({_pair_fmt(x1, p)}+{_pair_fmt(x1, q)})={x1.fmt(lhs)} but "
                        f"m{_pair_fmt(x1, p)}+m{_pair_fmt(x1, q)}={x1.fmt(rhs)}", sampled=True)
    for p in symbolic_pairs(g, seed, samples, positive=True):
        r = m_value(g, *p)
        if not x1.in_cone(r):
            return fail("category-monotone", {"x": _pair_fmt(x1, p)},
                        f"(ii) m{_pair_fmt(x1, p)}={x1.fmt(r)} not in cone", sampled=True)
    return ok("internal-category", sampled=True)


def is_groupoid(g: ReflexiveGraph, seed: int = 0, samples: int = 1000) -> Verdict:
    cat = is_internal_category(g, seed, samples)
    if not cat:
        raise PreconditionError(f"{g.name} is not an internal category", cat)
    x1 = g.apex
    sigma = sigma_of(g)
    if g.finite:
        s = np.asarray([sigma(a) for a in x1.elements()])
        t = x1.group.table
        bad = np.argwhere(s[t] != t[s[:, None], s[None, :]])
        if bad.size:  # cannot happen for a category; reported rather than assumed
            a, b = (int(v) for v in bad[0])
            return fail("sigma-homomorphism", {"a": x1.fmt(a), "b": x1.fmt(b)},
                        f"σ({x1.fmt(a)}+{x1.fmt(b)}) != σ({x1.fmt(a)})+σ({x1.fmt(b)})")
    else:
        dom = x1.domain(seed, samples)
        rng = random.Random(f"{g.name}:sigma:{seed}")
        for _ in range(samples):
            a, b = rng.choice(dom), rng.choice(dom)
            if sigma(x1.add(a, b)) != x1.add(sigma(a), sigma(b)):
                return fail("sigma-homomorphism", {"a": x1.fmt(a), "b": x1.fmt(b)},
                            f"σ({x1.fmt(a)}+{x1.fmt(b)}) != σ({x1.fmt(a)})+σ({x1.fmt(b)})", sampled=True)
    for a in x1.positives(seed, samples):
        r = sigma(a)
        if not x1.in_cone(r):
            return fail("groupoid", {"a": x1.fmt(a)}, f"σ{_paren(x1.fmt(a))}={x1.fmt(r)} not in cone",
                        sampled=not x1.exhaustive)
    return ok("groupoid", sampled=not x1.exhaustive)


def _paren(s: str) -> str:
    return s if s.startswith("(") else f"({s})"


# -- precrossed modules -----------------------------------------------------------------

class PrecrossedModule:
    """``boundary: ker -> base`` with an action of ``base`` on ``ker``.

    Finite modules carry an :class:`ActionMorphism`; symbolic ones a callable
    ``act(x, a)``.
    """

    def __init__(self, base, ker, boundary, act, name: str = "px"):
        self.base = base
        self.ker = ker
        self.boundary = boundary
        self.name = name
        if isinstance(act, ActionMorphism):
            self.action = act
            self.act = lambda x, a: act.act[x][a]
        else:
            self.action = None
            self.act = act

    @property
    def finite(self) -> bool:
        return isinstance(self.ker, FiniteRpoGroup)

    def __repr__(self) -> str:
        return f"PrecrossedModule({self.name}: {self.ker.name} -> {self.base.name})"


def _pairs_over(x, y, seed, samples, tag):
    if x.exhaustive and y.exhaustive:
        return [(a, b) for a in x.elements() for b in y.elements()]
    dx, dy = x.domain(seed, samples), y.domain(seed, samples)
    hx, hy = dx[: 1 + len(getattr(x, "boundary", ()))], dy[: 1 + len(getattr(y, "boundary", ()))]
    rng = random.Random(f"{tag}:{seed}")
    return [(a, b) for a in hx for b in hy] + [(rng.choice(dx), rng.choice(dy)) for _ in range(samples)]


def check_px(px: PrecrossedModule, seed: int = 0, samples: int = 1000) -> Verdict:
    """(PX): ∂(μ(x)(a)) = x + ∂(a) - x."""
    x0, k = px.base, px.ker
    if px.finite:
        v = check_action(px.action)
        if not v:
            return v
        v = check_morphism(px.boundary)
        if not v:
            return fail("boundary-morphism", v.witness or {}, v.detail)
    for x, a in _pairs_over(x0, k, seed, samples, f"{px.name}:px"):
        lhs = px.boundary(px.act(x, a))
        rhs = x0.sub(x0.add(x, px.boundary(a)), x)
        if lhs != rhs:
            return fail("PX", {"x": x0.fmt(x), "a": k.fmt(a)},
                        f"∂(μ({x0.fmt(x)})({k.fmt(a)}))={x0.fmt(lhs)} but "
                        f"{x0.fmt(x)}+∂({k.fmt(a)})-{x0.fmt(x)}={x0.fmt(rhs)}", sampled=not px.finite)
    return ok("PX", sampled=not px.finite)


def check_peiffer(px: PrecrossedModule, seed: int = 0, samples: int = 1000) -> Verdict:
    """(P): μ(∂a)(b) = a + b - a."""
    k = px.ker
    for a, b in _pairs_over(k, k, seed, samples, f"{px.name}:peiffer"):
        lhs = px.act(px.boundary(a), b)
        rhs = k.sub(k.add(a, b), a)
        if lhs != rhs:
            return fail("peiffer", {"a": k.fmt(a), "b": k.fmt(b)},
                        f"μ(∂{_paren(k.fmt(a))})({k.fmt(b)})={k.fmt(lhs)} but "
                        f"{k.fmt(a)}+{k.fmt(b)}-{k.fmt(a)}={k.fmt(rhs)}", sampled=not px.finite)
    return ok("peiffer", sampled=not px.finite)


def _symbolic_kernel(g: ReflexiveGraph) -> SymbolicRpoGroup:
    x1 = g.apex
    proj = lambda v: x1.sub(v, g.e(g.d(v)))
    dom = x1.group.domain
    kdom = Domain(f"ker({dom.name})", lambda v: dom.contains(v) and g.d(v) == g.base.zero,
                  lambda rng, h: proj(dom.draw(rng, h)), dom.parse)
    grp = SymbolicGroup(f"ker({x1.group.name})", kdom, x1.group.op, x1.group.inv, x1.group.zero,
                        x1.group.abelian)
    boundary = list(dict.fromkeys(proj(b) for b in x1.boundary))
    draw = None
    if x1.cone_draw:
        def draw(rng, h):
            for _ in range(64):
                v = proj(x1.cone_draw(rng, h))
                if x1.in_cone(v):
                    return v
            return x1.zero
    return SymbolicRpoGroup(grp, x1.cone_pred, f"ker({g.d.name})", boundary=boundary, cone_draw=draw,
                            height=x1.height)


def graph_to_pxmod(g: ReflexiveGraph, seed: int = 0, samples: int = 1000) -> PrecrossedModule:
    """F: kernel of d, ∂ = c restricted, μ(y)(x) = e(y) + x - e(y)."""
    v = is_schreier(g.point(), seed, samples)
    if not v:
        raise PreconditionError(f"{g.name}: underlying point is not Schreier ({v.detail})", v)
    x1, x0 = g.apex, g.base
    if g.finite:
        kobj, kinc = kernel(g.d)
        pos = {v: i for i, v in enumerate(kinc.map)}
        act = ActionMorphism(x0, kobj, [[pos[x1.group.conj(g.e(y), kv)] for kv in kinc.map]
                                        for y in x0.elements()], "μ")
        boundary = RpoMorphism(kobj, x0, [g.c(kv) for kv in kinc.map], "∂")
        px = PrecrossedModule(x0, kobj, boundary, act, f"F({g.name})")
        px.inclusion = kinc
        return px
    kobj = _symbolic_kernel(g)
    boundary = SymbolicMorphism(kobj, x0, g.c, "∂")
    px = PrecrossedModule(x0, kobj, boundary, lambda y, a: x1.group.op(x1.group.op(g.e(y), a),
                                                                       x1.group.inv(g.e(y))),
                          f"F({g.name})")
    px.inclusion = SymbolicMorphism(kobj, x1, lambda a: a, "incl")
    return px


def pxmod_to_graph(px: PrecrossedModule, seed: int = 0, samples: int = 1000) -> ReflexiveGraph:
    """G: apex K ⋊ X0 with cone P_K × P0, d = p1, c = ∂p0 + p1, e = i1."""
    v = check_px(px, seed, samples)
    if not v:
        raise PreconditionError(f"{px.name}: (PX) fails ({v.detail})", v)
    x0, k = px.base, px.ker
    if px.finite:
        pt = semidirect(px.action, f"{k.name}⋊{x0.name}")
        apex = pt.total
        n0 = x0.order
        c = RpoMorphism(apex, x0, [x0.add(px.boundary(i // n0), i % n0) for i in apex.elements()], "∂p0+p1")
        gr = ReflexiveGraph(apex, x0, pt.d, c, pt.e, f"G({px.name})")
        gr.i0 = pt.kernel_incl
        return gr
    kg, bg = k.group, x0.group
    act = px.act

    def op(u, w):
        return kg.op(u[0], act(u[1], w[0])), bg.op(u[1], w[1])

    def inv(u):
        ni = bg.inv(u[1])
        return act(ni, kg.inv(u[0])), ni

    sg = SymbolicGroup(f"{kg.name}⋊{bg.name}", product_domain(kg.domain, bg.domain), op, inv,
                       (kg.zero, bg.zero))
    boundary = [(a, x0.zero) for a in k.boundary] + [(k.zero, x) for x in x0.boundary]
    draw = None
    if k.cone_draw and x0.cone_draw:
        draw = lambda rng, h: (k.cone_draw(rng, h), x0.cone_draw(rng, h))
    apex = SymbolicRpoGroup(sg, lambda u: k.in_cone(u[0]) and x0.in_cone(u[1]), f"{k.name}⋊{x0.name}",
                            boundary=boundary, cone_draw=draw)
    d = SymbolicMorphism(apex, x0, lambda u: u[1], "p1")
    c = SymbolicMorphism(apex, x0, lambda u: bg.op(px.boundary(u[0]), u[1]), "∂p0+p1")
    e = SymbolicMorphism(x0, apex, lambda x: (kg.zero, x), "i1")
    gr = ReflexiveGraph(apex, x0, d, c, e, f"G({px.name})")
    gr.i0 = SymbolicMorphism(k, apex, lambda a: (a, bg.zero), "i0")
    return gr


def is_crossed_iff_category(px: PrecrossedModule, seed: int = 0, samples: int = 1000,
                            graph: ReflexiveGraph | None = None) -> Verdict:
    """``graph`` may pass in an already built G(px)."""
    p = check_peiffer(px, seed, samples)
    cat = is_internal_category(graph or pxmod_to_graph(px, seed, samples), seed, samples)
    info = {"peiffer": p.holds, "category": cat.holds}
    if p.holds == cat.holds:
        return ok("crossed-iff-category", sampled=p.sampled or cat.sampled,
                  detail=f"peiffer={'yes' if p else 'no'}, category={'yes' if cat else 'no'}", **info)
    return fail("crossed-iff-category", {"peiffer": p.detail, "category": cat.detail},
                "implementation bug: Peiffer and category verdicts disagree", **info)


# -- natural isomorphisms ------------------------------------------------------------------

def eta(g: ReflexiveGraph, gfg: ReflexiveGraph | None = None, px: PrecrossedModule | None = None):
    """η: a -> (a - ed(a), d(a)) into G(F(g)); finite graphs get an RpoMorphism."""
    px = px or graph_to_pxmod(g)
    gfg = gfg or pxmod_to_graph(px)
    x1 = g.apex
    if g.finite:
        pos = {v: i for i, v in enumerate(px.inclusion.map)}
        n0 = g.base.order
        return RpoMorphism(x1, gfg.apex, [pos[x1.sub(a, g.e(g.d(a)))] * n0 + g.d(a)
                                          for a in x1.elements()], "η")
    return SymbolicMorphism(x1, gfg.apex, lambda a: (x1.sub(a, g.e(g.d(a))), g.d(a)), "η")


def eta_inverse(g: ReflexiveGraph, gfg: ReflexiveGraph, px: PrecrossedModule):
    """(k, x) -> k + e(x)."""
    x1 = g.apex
    if g.finite:
        n0 = g.base.order
        return RpoMorphism(gfg.apex, x1, [x1.add(px.inclusion(i // n0), g.e(i % n0))
                                          for i in gfg.apex.elements()], "η⁻¹")
    return SymbolicMorphism(gfg.apex, x1, lambda u: x1.add(u[0], g.e(u[1])), "η⁻¹")


def check_eta(g: ReflexiveGraph, seed: int = 0, samples: int = 1000,
              px: PrecrossedModule | None = None, gfg: ReflexiveGraph | None = None) -> Verdict:
    """η is an isomorphism of reflexive graphs g -> G(F(g)); F(g) and G(F(g)) may be passed in."""
    px = px or graph_to_pxmod(g, seed, samples)
    gfg = gfg or pxmod_to_graph(px, seed, samples)
    f, finv = eta(g, gfg, px), eta_inverse(g, gfg, px)
    x1, y1 = g.apex, gfg.apex
    if g.finite:
        for h in (f, finv):
            v = check_morphism(h)
            if not v:
                return fail("eta", v.witness or {}, f"{h.name}: {v.detail}")
    sampled = not g.finite
    for a in x1.domain(seed, samples):
        u = f(a)
        checks = (("inverse", finv(u) == a), ("d", gfg.d(u) == g.d(a)), ("c", gfg.c(u) == g.c(a)),
                  ("cone", y1.in_cone(u) == x1.in_cone(a)))
        for name, good in checks:
            if not good:
                return fail("eta", {"a": x1.fmt(a)}, f"η fails {name} at {x1.fmt(a)}", sampled=sampled)
    if not g.finite:
        dom = x1.domain(seed, samples)
        rng = random.Random(f"{g.name}:eta:{seed}")
        for _ in range(samples):
            a, b = rng.choice(dom), rng.choice(dom)
            if f(x1.add(a, b)) != y1.add(f(a), f(b)):
                return fail("eta", {"a": x1.fmt(a), "b": x1.fmt(b)}, "η is not additive", sampled=True)
    for x in g.base.domain(seed, samples):
        if f(g.e(x)) != gfg.e(x):
            return fail("eta", {"x": g.base.fmt(x)}, "η does not commute with e", sampled=sampled)
    return ok("eta", sampled=sampled)


def check_epsilon(px: PrecrossedModule, seed: int = 0, samples: int = 1000,
                  gr: ReflexiveGraph | None = None, fg: PrecrossedModule | None = None) -> Verdict:
    """ε = (id, i0): px -> F(G(px)) is an isomorphism of precrossed modules."""
    gr = gr or pxmod_to_graph(px, seed, samples)
    fg = fg or graph_to_pxmod(gr, seed, samples)
    k, x0 = px.ker, px.base
    sampled = not px.finite
    if px.finite:
        pos = {v: i for i, v in enumerate(fg.inclusion.map)}
        eps = RpoMorphism(k, fg.ker, [pos[gr.i0(a)] for a in k.elements()], "ε")
        if not eps.is_injective() or fg.ker.order != k.order:
            return fail("epsilon", {}, "ε is not bijective")
        v = check_morphism(eps)
        if not v:
            return fail("epsilon", v.witness or {}, v.detail)
        if {eps(p) for p in k.cone} != set(fg.ker.cone):
            return fail("epsilon", {}, "ε does not map the cone onto the cone")
    else:
        eps = gr.i0
    for a in k.domain(seed, samples):
        if fg.boundary(eps(a)) != px.boundary(a):
            return fail("epsilon", {"a": k.fmt(a)}, "ε does not commute with ∂", sampled=sampled)
    for x, a in _pairs_over(x0, k, seed, samples, f"{px.name}:eps"):
        if fg.act(x, eps(a)) != eps(px.act(x, a)):
            return fail("epsilon", {"x": x0.fmt(x), "a": k.fmt(a)}, "ε is not equivariant", sampled=sampled)
    return ok("epsilon", sampled=sampled)


@dataclass
class GraphMorphism:
    """(f1: apex -> apex', f0: base -> base') commuting with d, c, e."""

    src: ReflexiveGraph
    dst: ReflexiveGraph
    f1: RpoMorphism
    f0: RpoMorphism


def graph_morphisms(g: ReflexiveGraph, h: ReflexiveGraph):
    for f0 in monotone_homomorphisms(g.base, h.base):
        fixed = {g.e(x): h.e(f0(x)) for x in g.base.elements()}
        for f1 in monotone_homomorphisms(g.apex, h.apex, fixed):
            if all(h.d(f1(a)) == f0(g.d(a)) and h.c(f1(a)) == f0(g.c(a)) for a in g.apex.elements()):
                yield GraphMorphism(g, h, f1, f0)


def check_eta_naturality(f: GraphMorphism, pg: PrecrossedModule | None = None,
                         ph: PrecrossedModule | None = None, eg=None, eh=None) -> Verdict:
    """η_h . f1 = G(F(f)) . η_g, with G(F(f))(k, x) = (f1(k), f0(x)).

    F and η of either end may be passed in when checking many morphisms.
    """
    g, h = f.src, f.dst
    pg = graph_to_pxmod(g) if pg is None else pg
    ph = graph_to_pxmod(h) if ph is None else ph
    eg = eta(g, px=pg) if eg is None else eg
    eh = eta(h, px=ph) if eh is None else eh
    n0g, n0h = g.base.order, h.base.order
    posh = {v: i for i, v in enumerate(ph.inclusion.map)}
    for a in g.apex.elements():
        u = eg(a)
        k, x = pg.inclusion(u // n0g), u % n0g
        kk = f.f1(k)
        if kk not in posh:
            return fail("eta-naturality", {"a": g.apex.fmt(a)}, "f1 does not preserve kernels")
        gff = posh[kk] * n0h + f.f0(x)
        if eh(f.f1(a)) != gff:
            return fail("eta-naturality", {"a": g.apex.fmt(a)}, f"square fails at {g.apex.fmt(a)}")
    return ok("eta-naturality")


def reflexive_graphs(x1: FiniteRpoGroup, x0: FiniteRpoGroup):
    """Every reflexive graph with apex x1 and base x0 (labelled, not up to iso)."""
    sections = [e for e in monotone_homomorphisms(x0, x1) if e.is_injective()]
    if not sections:
        return
    retractions = list(monotone_homomorphisms(x1, x0))
    for e in sections:
        legs = [r for r in retractions if all(r(e(x)) == x for x in x0.elements())]
        for d in legs:
            for c in legs:
                yield ReflexiveGraph(x1, x0, d, c, e, f"({x1.name},{x0.name})")


# -- brute-force composition search -------------------------------------------------------------

def pullback_object(g: ReflexiveGraph) -> tuple[FiniteRpoGroup, list[tuple[int, int]]]:
    """X1 ×_X0 X1 as a subobject of X1 × X1 with the componentwise cone."""
    a, b = _finite_pairs(g)
    n = g.apex.order
    prod = direct_product(g.apex, g.apex)
    sub, incl = subobject(prod, [int(x) * n + int(y) for x, y in zip(a, b)], name=f"{g.name}_2")
    return sub, [(v // n, v % n) for v in incl.map]


def composition_morphisms(g: ReflexiveGraph) -> list[dict]:
    """Every monotone morphism on the pullback satisfying the category axioms.

    Independent of the closed formula: the unit laws prescribe values on the
    pairs (a, ed(a)) and (ec(a), a), a homomorphism search extends them, and
    the survivors are filtered by the source/target and associativity laws.
    """
    pb, pairs = pullback_object(g)
    idx = {p: i for i, p in enumerate(pairs)}
    x1 = g.apex
    fixed: dict[int, int] = {}
    for a in x1.elements():
        for p in ((a, g.e(g.d(a))), (g.e(g.c(a)), a)):
            if fixed.setdefault(idx[p], a) != a:
                return []
    found = []
    for h in monotone_homomorphisms(pb, x1, fixed):
        m = {p: h(i) for p, i in idx.items()}
        if any(m[(a, g.e(g.d(a)))] != a or m[(g.e(g.c(a)), a)] != a for a in x1.elements()):
            continue
        if any(g.d(m[p]) != g.d(p[1]) or g.c(m[p]) != g.c(p[0]) for p in pairs):
            continue
        assoc = True
        for (a, b) in pairs:
            for cc in x1.elements():
                if g.d(b) == g.c(cc):
                    if m[(m[(a, b)], cc)] != m[(a, m[(b, cc)])]:
                        assoc = False
                        break
            if not assoc:
                break
        if assoc:
            found.append(m)
    return found


# -- effective relations ------------------------------------------------------------------------

def effective_relation_cone(boundary: RpoMorphism) -> frozenset[tuple[int, int]]:
    """{(a, b) : b ∈ P0, ∂(a) + b ∈ P0} in coordinates of G × X0."""
    x0 = boundary.cod
    return frozenset((a, b) for a in boundary.dom.elements() for b in sorted(x0.cone)
                     if x0.add(boundary(a), b) in x0.cone)


def relation_graph(boundary: RpoMorphism, cone: frozenset[tuple[int, int]] | None = None,
                   name: str = "R") -> ReflexiveGraph:
    """Semidirect presentation of the relation of a normal mono ∂: G -> X0.

    The action is conjugation pulled back along ∂; the cone defaults to the
    formula cone.
    """
    g, x0 = boundary.dom, boundary.cod
    if not boundary.is_injective():
        raise PreconditionError(f"{boundary.name} is not injective")
    pos = {v: i for i, v in enumerate(boundary.map)}
    try:
        act = [[pos[x0.group.conj(x, boundary(a))] for a in g.elements()] for x in x0.elements()]
    except KeyError as exc:
        raise PreconditionError(f"image of {boundary.name} is not normal") from exc
    from .schreier import semidirect_table
    table, labels = semidirect_table(g.group, x0.group, act)
    n0 = x0.order
    cone = effective_relation_cone(boundary) if cone is None else cone
    apex = FiniteRpoGroup(FiniteGroup(table, labels, f"{g.name}⋊{x0.name}"), [a * n0 + b for a, b in cone])
    d = RpoMorphism(apex, x0, [i % n0 for i in apex.elements()], "p1")
    c = RpoMorphism(apex, x0, [x0.add(boundary(i // n0), i % n0) for i in apex.elements()], "∂p0+p1")
    e = RpoMorphism(x0, apex, list(x0.elements()), "i1")
    return ReflexiveGraph(apex, x0, d, c, e, name)


def kernel_pair_of_coequalizer(boundary: RpoMorphism) -> frozenset[tuple[int, int]]:
    """Cone of the kernel pair of X0 -> X0/∂(G) (image cone), as (a, b) with ∂(a)+b ~ b.

    Computed from cosets and the quotient directly, without the formula.
    """
    x0 = boundary.cod
    img = boundary.image()
    coset = {}
    for u in x0.elements():
        coset[u] = min(x0.add(n, u) for n in img)
    pos = {v: i for i, v in enumerate(boundary.map)}
    pairs = set()
    for u in x0.cone:
        for v in x0.cone:
            if coset[u] == coset[v]:
                pairs.add((u, v))
    # (source, target) = (b, ∂(a)+b)  <=>  a = ∂⁻¹(target - source)
    return frozenset((pos[x0.sub(v, u)], u) for u, v in pairs)


def is_effective(g: ReflexiveGraph) -> Verdict:
    """Compare the graph's cone with the formula cone in the η presentation."""
    x1, x0 = g.apex, g.base
    kobj, kinc = kernel(g.d)
    boundary = RpoMorphism(kobj, x0, [g.c(k) for k in kinc.map], "∂")
    if not boundary.is_injective():
        return fail("effective", {}, "d and c are not jointly monic: not a relation")
    pos = {v: i for i, v in enumerate(kinc.map)}
    transported = {(pos[x1.sub(a, g.e(g.d(a)))], g.d(a)) for a in x1.cone}
    formula = effective_relation_cone(boundary)
    fmt = lambda p: f"({kobj.fmt(p[0])},{x0.fmt(p[1])})"
    extra = sorted(transported - formula)
    missing = sorted(formula - transported)
    if extra:
        return fail("effective", {"pair": fmt(extra[0])}, f"{fmt(extra[0])} in P1 but not in the formula cone")
    if missing:
        return fail("effective", {"pair": fmt(missing[0])}, f"{fmt(missing[0])} in the formula cone but not in P1")
    return ok("effective")


def indiscrete_graph(g: FiniteRpoGroup) -> ReflexiveGraph:
    """Kernel pair of G -> 0 in user coordinates: apex G × G, d, c the projections."""
    prod = direct_product(g, g, f"{g.name}²")
    n = g.order
    d = RpoMorphism(prod, g, [i % n for i in prod.elements()], "p1")
    c = RpoMorphism(prod, g, [i // n for i in prod.elements()], "p0")
    e = RpoMorphism(g, prod, [x * n + x for x in g.elements()], "Δ")
    return ReflexiveGraph(prod, g, d, c, e, f"∇{g.name}")


# -- aggregate verdict ---------------------------------------------------------------------------

@dataclass
class InternalCategoryVerdict:
    is_schreier_graph: Verdict
    is_internal_category: Verdict
    is_groupoid: Verdict | None
    kernel_cone_group: Verdict | None = None
    m: Callable | None = None
    sigma: Callable | None = None

    def lines(self) -> list[str]:
        out = [self.is_schreier_graph.render("schreier"), self.is_internal_category.render("category")]
        if self.is_groupoid is not None:
            out.append(self.is_groupoid.render("groupoid"))
        if self.kernel_cone_group is not None:
            out.append(self.kernel_cone_group.render("kernel cone is a group"))
        return out


def kernel_cone_is_group(g: ReflexiveGraph, seed: int = 0, samples: int = 1000) -> Verdict:
    x1 = g.apex
    for a in x1.positives(seed, samples):
        k = x1.sub(a, g.e(g.d(a)))
        if x1.in_cone(k) and not x1.in_cone(x1.neg(k)):
            return fail("kernel-cone-group", {"a": x1.fmt(k)},
                        f"{x1.fmt(k)} in kernel cone but -{_paren(x1.fmt(k))}={x1.fmt(x1.neg(k))} is not",
                        sampled=not x1.exhaustive)
    return ok("kernel-cone-group", sampled=not x1.exhaustive)


def full_verdict(g: ReflexiveGraph, seed: int = 0, samples: int = 1000) -> InternalCategoryVerdict:
    s = is_schreier(g.point(), seed, samples)
    cat = is_internal_category(g, seed, samples)
    grp = is_groupoid(g, seed, samples) if cat else None
    kc = kernel_cone_is_group(g, seed, samples) if (s and cat) else None
    return InternalCategoryVerdict(s, cat, grp, kc, unique_m(g) if cat else None,
                                   sigma_of(g) if grp else None)


# -- enumeration of precrossed modules ----------------------------------------------------------

def precrossed_data(x0: FiniteRpoGroup, k: FiniteRpoGroup, aut: AutRpo | None = None):
    """Every (action rows, boundary map) making an S-precrossed module k -> x0.

    The action ranges over monotone morphisms x0 -> ⟨k⟩_S, the boundary over
    monotone morphisms k -> x0, filtered by (PX).
    """
    aut = aut or aut_rpo(k)
    conj = np.asarray([[x0.group.conj(x, y) for y in x0.elements()] for x in x0.elements()])
    ds = np.asarray([d.map for d in monotone_homomorphisms(k, x0)], dtype=np.int64)
    for mu in monotone_homomorphisms(x0, aut.rpo):
        act = np.asarray([aut.perms[mu(x)] for x in x0.elements()], dtype=np.int64)
        good = (ds[:, act] == conj[:, ds].transpose(1, 0, 2)).all(axis=(1, 2))
        for i in np.nonzero(good)[0]:
            yield act, ds[i]


def precrossed_classes(x0: FiniteRpoGroup, k: FiniteRpoGroup):
    """One (act, boundary, orbit size) per isomorphism class of modules k -> x0.

    Two modules on the same objects are isomorphic when an rpo automorphism
    α of x0 and β of k carry one to the other:
    ∂' = α ∂ β⁻¹ and μ'(x) = β μ(α⁻¹ x) β⁻¹.
    """
    A = np.asarray(monotone_automorphisms(x0), dtype=np.int64)
    B = np.asarray(monotone_automorphisms(k), dtype=np.int64)
    Ainv = np.argsort(A, axis=1)
    Binv = np.argsort(B, axis=1)
    nb = len(B)
    seen: set[bytes] = set()
    for act, d in precrossed_data(x0, k):
        key = act.tobytes() + d.tobytes()
        if key in seen:
            continue
        d2 = A[:, d[Binv]]                                               # (na, nb, |K|)
        inner = act[Ainv[:, :, None, None], Binv[None, None, :, :]]                # (na, |X0|, nb, |K|)
        act2 = B[np.arange(nb)[None, None, :, None], inner]
        orbit = {act2[i, :, j, :].tobytes() + d2[i, j].tobytes()
                 for i in range(len(A)) for j in range(nb)}
        seen |= orbit
        yield act, d, len(orbit)


def make_precrossed(x0: FiniteRpoGroup, k: FiniteRpoGroup, act, boundary, name: str = "px") -> PrecrossedModule:
    mu = ActionMorphism(x0, k, [tuple(int(v) for v in row) for row in act], "μ")
    return PrecrossedModule(x0, k, RpoMorphism(k, x0, [int(v) for v in boundary], "∂"), mu, name)
