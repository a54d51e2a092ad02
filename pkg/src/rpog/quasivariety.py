"""The Horn theory of right-preordered groups and its preordered extension.

A model has a monoid law ``+``, a unary ``-`` and unary ``p0``, ``p1``, ``i``
(written ``a0 = p0(a)``, ``a1 = p1(a)``).  Axioms:

* (M)   ``(0, +)`` is a monoid and ``p0``, ``p1``, ``i`` are monoid morphisms
* (P1)  ``a = a0 + a1 = a1 + a0``
* (P2)  ``-(a1) = (i(a))1 = (a1)0 = (a0)1 = 0``
* (P3)  ``i(a1) = (i(a))0``
* (G)   ``a - a = -a + a = a1``
* (Inj) ``i(a) = i(b)  =>  a1 = b1``

and for preordered groups a further ``▷`` with

* (C1)  ``i(▷a) = a0 + i(a1) - a0``
* (C2)  ``(▷a)0 = 0``.

``to_model`` builds the model on ``G × P`` with ``i(a, b) = (i(b), 1)``.  One
display of this functor reads ``(i(b), 0)``; the second coordinate has to be
the identity of the cone for (P3) to hold, which is what the verification
computations use.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .finite import (
    FiniteGroup,
    FiniteRpoGroup,
    first_associativity_violation,
    homomorphisms,
    is_preordered,
)
from .verdict import PreconditionError, StructuralError, Verdict, fail, ok

AXIOMS = ("M", "P1", "P2", "P3", "G", "Inj")
EXTRA_AXIOMS = ("C1", "C2")


def _vec(v, n: int, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=np.int64)
    if arr.shape != (n,):
        raise StructuralError(f"{name} must have length {n}")
    if n and (arr.min() < 0 or arr.max() >= n):
        raise StructuralError(f"{name} entries must lie in 0..{n - 1}")
    arr.setflags(write=False)
    return arr


class SigmaAlgebra:
    """A finite model: operations stored as index arrays on ``range(n)``."""

    def __init__(self, n: int, zero: int, plus, neg, proj0, proj1, inj, tri=None,
                 labels: Sequence[str] | None = None, name: str = "X"):
        if n < 1:
            raise StructuralError("a model needs a non-empty carrier")
        if not 0 <= zero < n:
            raise StructuralError("zero out of range")
        plus = np.asarray(plus, dtype=np.int64)
        if plus.shape != (n, n):
            raise StructuralError(f"plus must be {n}x{n}")
        if plus.min() < 0 or plus.max() >= n:
            raise StructuralError(f"plus entries must lie in 0..{n - 1}")
        plus.setflags(write=False)
        self.n = n
        self.zero = int(zero)
        self.plus = plus
        self.neg = _vec(neg, n, "neg")
        self.proj0 = _vec(proj0, n, "proj0")
        self.proj1 = _vec(proj1, n, "proj1")
        self.inj = _vec(inj, n, "inj")
        self.tri = None if tri is None else _vec(tri, n, "tri")
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self.name = name

    def fmt(self, a: int) -> str:
        return self.labels[a]

    def with_ops(self, **ops) -> "SigmaAlgebra":
        cur = dict(plus=self.plus, neg=self.neg, proj0=self.proj0, proj1=self.proj1, inj=self.inj,
                   tri=self.tri)
        cur.update(ops)
        return SigmaAlgebra(self.n, self.zero, labels=self.labels, name=self.name, **cur)

    def __repr__(self) -> str:
        return f"SigmaAlgebra({self.name}, n={self.n})"


@dataclass
class AxiomReport:
    verdicts: dict[str, Verdict] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.verdicts.values())

    def __bool__(self) -> bool:
        return self.holds

    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if not v]

    def lines(self) -> list[str]:
        return [v.render(k) for k, v in self.verdicts.items()]


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return None if not idx.size else tuple(int(v) for v in idx[0])


def _check_unary_eq(m: SigmaAlgebra, law: str, pairs) -> Verdict:
    """``pairs`` is a list of (description, lhs array, rhs array) over all a."""
    for desc, lhs, rhs in pairs:
        hit = _first(lhs != rhs)
        if hit is not None:
            a = hit[0]
            return fail(law, {"a": m.fmt(a)}, f"{desc} fails at a={m.fmt(a)}: "
                                              f"{m.fmt(int(lhs[a]))} != {m.fmt(int(rhs[a]))}")
    return ok(law)


def check_axioms(m: SigmaAlgebra) -> AxiomReport:
    """Evaluate every axiom over all tuples of the carrier."""
    P, z = m.plus, m.zero
    a = np.arange(m.n)
    p0, p1, inj, neg = m.proj0, m.proj1, m.inj, m.neg
    zeros = np.full(m.n, z)
    rep = AxiomReport()

    # (M)
    v = ok("M")
    if P[z, z] != z or (P[z] != a).any() or (P[:, z] != a).any():
        hit = _first((P[z] != a) | (P[:, z] != a))
        v = fail("M", {"a": m.fmt(hit[0] if hit else z)}, "0 is not a two-sided unit")
    else:
        t = first_associativity_violation(P)
        if t is not None:
            x, y, w = t
            v = fail("M", {"a": m.fmt(x), "b": m.fmt(y), "c": m.fmt(w)},
                     f"(a+b)+c != a+(b+c) at a={m.fmt(x)}, b={m.fmt(y)}, c={m.fmt(w)}")
        else:
            for name, f in (("p0", p0), ("p1", p1), ("i", inj)):
                if f[z] != z:
                    v = fail("M", {"f": name}, f"{name}(0) != 0")
                    break
                hit = _first(f[P] != P[f[:, None], f[None, :]])
                if hit is not None:
                    x, y = hit
                    v = fail("M", {"f": name, "a": m.fmt(x), "b": m.fmt(y)},
                             f"{name}(a+b) != {name}(a)+{name}(b) at a={m.fmt(x)}, b={m.fmt(y)}")
                    break
    rep.verdicts["M"] = v
    rep.verdicts["P1"] = _check_unary_eq(m, "P1", [("a = a0+a1", P[p0, p1], a), ("a = a1+a0", P[p1, p0], a)])
    rep.verdicts["P2"] = _check_unary_eq(m, "P2", [
        ("-(a1) = 0", neg[p1], zeros), ("(i(a))1 = 0", p1[inj], zeros),
        ("(a1)0 = 0", p0[p1], zeros), ("(a0)1 = 0", p1[p0], zeros)])
    rep.verdicts["P3"] = _check_unary_eq(m, "P3", [("i(a1) = (i(a))0", inj[p1], p0[inj])])
    rep.verdicts["G"] = _check_unary_eq(m, "G", [("a-a = a1", P[a, neg], p1), ("-a+a = a1", P[neg, a], p1)])
    hit = _first((inj[:, None] == inj[None, :]) & (p1[:, None] != p1[None, :]))
    if hit is not None:
        x, y = hit
        rep.verdicts["Inj"] = fail("Inj", {"a": m.fmt(x), "b": m.fmt(y)},
                                   f"i({m.fmt(x)}) = i({m.fmt(y)}) but a1={m.fmt(int(p1[x]))} != "
                                   f"b1={m.fmt(int(p1[y]))}")
    else:
        rep.verdicts["Inj"] = ok("Inj")
    if m.tri is not None:
        tri = m.tri
        c1 = P[P[p0, inj[p1]], neg[p0]]
        rep.verdicts["C1"] = _check_unary_eq(m, "C1", [("i(▷a) = a0+i(a1)-a0", inj[tri], c1)])
        rep.verdicts["C2"] = _check_unary_eq(m, "C2", [("(▷a)0 = 0", p0[tri], zeros)])
    return rep


def to_model(g: FiniteRpoGroup) -> SigmaAlgebra:
    """F: carrier G × P, element (a, x) at index a*|P| + j where x = cone[j]."""
    cone = sorted(g.cone)
    k = len(cone)
    cpos = {x: j for j, x in enumerate(cone)}
    n = g.order * k
    idx = lambda a, x: a * k + cpos[x]
    pairs = [(a, x) for a in g.elements() for x in cone]
    plus = [[idx(g.add(a, b), g.add(x, y)) for (b, y) in pairs] for (a, x) in pairs]
    return SigmaAlgebra(
        n, idx(0, 0), plus,
        neg=[idx(g.neg(a), 0) for a, x in pairs],
        proj0=[idx(a, 0) for a, x in pairs],
        proj1=[idx(0, x) for a, x in pairs],
        inj=[idx(x, 0) for a, x in pairs],
        labels=[f"({g.fmt(a)},{g.fmt(x)})" for a, x in pairs],
        name=f"F({g.name})")


@dataclass
class ModelDecomposition:
    """G(m) together with where its elements live in the model."""

    rpo: FiniteRpoGroup
    x0: list[int]          # group element i is model element x0[i]
    x1: list[int]          # model elements p1(m), sorted
    inj_on_x1: dict[int, int]


def decompose(m: SigmaAlgebra) -> ModelDecomposition:
    rep = check_axioms(m)
    if not rep:
        bad = rep.failed()[0]
        raise PreconditionError(f"{m.name}: axiom {bad} fails", rep.verdicts[bad])
    x0 = sorted(set(int(v) for v in m.proj0), key=lambda v: (v != m.zero, v))
    x1 = sorted(set(int(v) for v in m.proj1), key=lambda v: (v != m.zero, v))
    pos = {v: i for i, v in enumerate(x0)}
    table = [[pos[int(m.plus[a, b])] for b in x0] for a in x0]
    grp = FiniteGroup(table, [m.fmt(v) for v in x0], f"G({m.name})")
    cone = [pos[int(m.inj[v])] for v in x1]
    return ModelDecomposition(FiniteRpoGroup(grp, cone, f"G({m.name})"), x0, x1,
                              {v: pos[int(m.inj[v])] for v in x1})


def from_model(m: SigmaAlgebra) -> FiniteRpoGroup:
    """G: the group on p0(X) with cone i(p1(X))."""
    return decompose(m).rpo


def counit_map(m: SigmaAlgebra) -> tuple[SigmaAlgebra, list[int]]:
    """F(G(m)) and the map (x0, x1) -> x0 + x1 into m, indexed on F(G(m))."""
    dec = decompose(m)
    fg = to_model(dec.rpo)
    cone = sorted(dec.rpo.cone)
    k = len(cone)
    back = {dec.inj_on_x1[v]: v for v in dec.x1}
    mapping = [int(m.plus[dec.x0[i // k], back[cone[i % k]]]) for i in range(fg.n)]
    return fg, mapping


def check_sigma_morphism(src: SigmaAlgebra, dst: SigmaAlgebra, f: Sequence[int],
                         bijective: bool = True) -> Verdict:
    f = np.asarray(f, dtype=np.int64)
    if f.shape != (src.n,):
        raise StructuralError("map length must equal the source carrier size")
    if bijective and (src.n != dst.n or len(set(f.tolist())) != src.n):
        return fail("sigma-iso", {}, "map is not a bijection")
    if f[src.zero] != dst.zero:
        return fail("sigma-morphism", {"op": "0"}, "zero not preserved")
    hit = _first(f[src.plus] != dst.plus[f[:, None], f[None, :]])
    if hit is not None:
        return fail("sigma-morphism", {"op": "+", "a": src.fmt(hit[0]), "b": src.fmt(hit[1])},
                    "+ not preserved")
    ops = ["neg", "proj0", "proj1", "inj"] + (["tri"] if src.tri is not None and dst.tri is not None else [])
    for op in ops:
        hit = _first(f[getattr(src, op)] != getattr(dst, op)[f])
        if hit is not None:
            return fail("sigma-morphism", {"op": op, "a": src.fmt(hit[0])}, f"{op} not preserved")
    return ok("sigma-iso" if bijective else "sigma-morphism")


def find_sigma_isomorphism(m1: SigmaAlgebra, m2: SigmaAlgebra) -> list[int] | None:
    """Search all Σ-isomorphisms; each is fixed by its restriction to G(m1)."""
    if m1.n != m2.n:
        return None
    d1, d2 = decompose(m1), decompose(m2)
    g1, g2 = d1.rpo, d2.rpo
    if g1.order != g2.order or len(g1.cone) != len(g2.cone):
        return None
    x1_of = {d1.inj_on_x1[v]: v for v in d1.x1}
    x2_of = {d2.inj_on_x1[v]: v for v in d2.x1}
    for h in homomorphisms(g1.group, g2.group):
        if len(set(h)) != g1.order or {h[c] for c in g1.cone} != set(g2.cone):
            continue
        f = [0] * m1.n
        for a in range(m1.n):
            a0 = d1.x0.index(int(m1.proj0[a]))
            a1 = d1.inj_on_x1[int(m1.proj1[a])]
            f[a] = int(m2.plus[d2.x0[h[a0]], x2_of[h[a1]]])
        if check_sigma_morphism(m1, m2, f):
            return f
    return None


@dataclass
class Extension:
    verdict: Verdict
    model: SigmaAlgebra | None = None


def extend_to_pog(m: SigmaAlgebra) -> Extension:
    """Add the unique candidate ▷ when the cone is conjugation-closed."""
    rep = check_axioms(m)
    if not rep:
        bad = rep.failed()[0]
        raise PreconditionError(f"{m.name}: axiom {bad} fails", rep.verdicts[bad])
    P = m.plus
    x1 = sorted(set(int(v) for v in m.proj1))
    by_inj = {int(m.inj[v]): v for v in x1}
    tri = []
    for a in range(m.n):
        a0, a1 = int(m.proj0[a]), int(m.proj1[a])
        target = int(P[P[a0, m.inj[a1]], m.neg[a0]])
        if target not in by_inj:
            return Extension(fail("preordered", {"x": m.fmt(a0), "p": m.fmt(int(m.inj[a1]))},
                                  f"{m.fmt(a0)}+i({m.fmt(a1)})-{m.fmt(a0)}={m.fmt(target)} is not in i(X1)"))
        tri.append(by_inj[target])
    ext = m.with_ops(tri=tri)
    rep = check_axioms(ext)
    if not rep:
        bad = rep.failed()[0]
        return Extension(rep.verdicts[bad])
    return Extension(ok("preordered"), ext)


def pog_model(g: FiniteRpoGroup) -> SigmaAlgebra:
    """F(g) with ▷(a, b) = (0, a + b - a); the input must be preordered."""
    v = is_preordered(g)
    if not v:
        raise PreconditionError(f"{g.name} is not preordered", v)
    m = to_model(g)
    cone = sorted(g.cone)
    k = len(cone)
    cpos = {x: j for j, x in enumerate(cone)}
    tri = [cpos[g.group.conj(i // k, cone[i % k])] for i in range(m.n)]
    return m.with_ops(tri=tri)


def model_to_json(m: SigmaAlgebra) -> dict:
    out = {"carrier": m.n, "zero": m.zero, "plus": m.plus.tolist(), "neg": m.neg.tolist(),
           "proj0": m.proj0.tolist(), "proj1": m.proj1.tolist(), "inj": m.inj.tolist()}
    if m.tri is not None:
        out["tri"] = m.tri.tolist()
    return out
