"""Exact-arithmetic right-preordered groups on infinite carriers.

Elements are ints, ``Fraction``s or tuples of those.  Infinite objects
cannot be checked exhaustively, so every check draws a deterministic sample
that always starts with the object's designated boundary elements.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .verdict import PreconditionError, StructuralError, SymbolicDomainError, Verdict, fail, ok

DEFAULT_HEIGHT = 10


def fmt(v: Any) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(fmt(x) for x in v) + ")"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_rat(v: Any) -> bool:
    return isinstance(v, Fraction) or _is_int(v)


def _rand_rat(rng: random.Random, h: int, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-h, h), rng.randint(1, h))
        if v or not nonzero:
            return v


@dataclass(frozen=True)
class Domain:
    """Element domain: a membership test and a seeded draw of small-height elements."""

    name: str
    contains: Callable[[Any], bool]
    draw: Callable[[random.Random, int], Any]
    parse: Callable[[Any], Any]


def _parse_rat(v: Any) -> Fraction:
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise SymbolicDomainError(f"not a rational: {v!r}") from exc
    if _is_int(v):
        return Fraction(v)
    raise StructuralError(f"expected an int or 'p/q' string, got {v!r}")


def _parse_int(v: Any) -> int:
    if _is_int(v):
        return v
    if isinstance(v, str) and v.strip().lstrip("+-").isdigit():
        return int(v)
    raise StructuralError(f"expected an integer, got {v!r}")


def _parse_nonzero(v: Any) -> Fraction:
    r = _parse_rat(v)
    if r == 0:
        raise SymbolicDomainError("0 is not an element of Q*")
    return r


ZZ = Domain("Z", _is_int, lambda rng, h: rng.randint(-h, h), _parse_int)
QQ = Domain("Q", _is_rat, lambda rng, h: _rand_rat(rng, h), _parse_rat)
QSTAR = Domain("Q*", lambda v: _is_rat(v) and v != 0, lambda rng, h: _rand_rat(rng, h, True),
               _parse_nonzero)


def product_domain(*parts: Domain) -> Domain:
    def contains(v):
        return isinstance(v, tuple) and len(v) == len(parts) and all(
            d.contains(x) for d, x in zip(parts, v))

    def parse(v):
        if not isinstance(v, (list, tuple)) or len(v) != len(parts):
            raise StructuralError(f"expected a {len(parts)}-tuple, got {v!r}")
        return tuple(d.parse(x) for d, x in zip(parts, v))

    return Domain("x".join(d.name for d in parts), contains,
                  lambda rng, h: tuple(d.draw(rng, h) for d in parts), parse)


@dataclass(frozen=True)
class SymbolicGroup:
    name: str
    domain: Domain
    op: Callable[[Any, Any], Any]
    inv: Callable[[Any], Any]
    zero: Any
    abelian: bool = False


def integers() -> SymbolicGroup:
    return SymbolicGroup("Z", ZZ, lambda a, b: a + b, lambda a: -a, 0, True)


def rationals() -> SymbolicGroup:
    return SymbolicGroup("Q", QQ, lambda a, b: Fraction(a) + b, lambda a: -Fraction(a), Fraction(0), True)


def nonzero_rationals() -> SymbolicGroup:
    """Q* under multiplication, written additively."""
    return SymbolicGroup("Q*", QSTAR, lambda a, b: Fraction(a) * b, lambda a: 1 / Fraction(a),
                         Fraction(1), True)


def direct(g: SymbolicGroup, h: SymbolicGroup) -> SymbolicGroup:
    return SymbolicGroup(
        f"{g.name}x{h.name}", product_domain(g.domain, h.domain),
        lambda a, b: (g.op(a[0], b[0]), h.op(a[1], b[1])),
        lambda a: (g.inv(a[0]), h.inv(a[1])),
        (g.zero, h.zero), g.abelian and h.abelian)


def affine_rationals() -> SymbolicGroup:
    """Q ⋊ Q* for the multiplication action: (a,x)+(b,y) = (a+xb, xy)."""
    return SymbolicGroup(
        "Q⋊Q*", product_domain(QQ, QSTAR),
        lambda a, b: (a[0] + a[1] * b[0], a[1] * b[1]),
        lambda a: (-a[0] / a[1], 1 / a[1]),
        (Fraction(0), Fraction(1)), False)


class SymbolicRpoGroup:
    """A symbolic group with a cone predicate and a seeded sampler.

    ``boundary`` elements are always checked first, in the given order, so
    known witnesses are reported as the first violation.  ``cone_draw``
    draws random positive elements when the cone is too thin to hit by
    chance.
    """

    exhaustive = False

    def __init__(self, group: SymbolicGroup, cone: Callable[[Any], bool], name: str,
                 boundary: Sequence[Any] = (), cone_draw: Callable | None = None,
                 height: int = DEFAULT_HEIGHT, cone_is_group: bool | None = None,
                 cone_desc: str = ""):
        self.group = group
        self.cone_pred = cone
        self.name = name
        self.boundary = tuple(boundary)
        self.cone_draw = cone_draw
        self.height = height
        self.cone_is_group = cone_is_group
        self.cone_desc = cone_desc
        for b in self.boundary:
            if not group.domain.contains(b):
                raise StructuralError(f"{name}: boundary element {fmt(b)} outside {group.domain.name}")

    @property
    def zero(self):
        return self.group.zero

    def add(self, a, b):
        return self.group.op(a, b)

    def neg(self, a):
        return self.group.inv(a)

    def sub(self, a, b):
        return self.group.op(a, self.group.inv(b))

    def in_cone(self, a) -> bool:
        return bool(self.cone_pred(a))

    def contains(self, a) -> bool:
        return self.group.domain.contains(a)

    def fmt(self, a) -> str:
        return fmt(a)

    def domain(self, seed: int = 0, samples: int = 1000) -> list:
        rng = random.Random(f"{self.name}:{seed}")
        out = list(dict.fromkeys([self.zero, *self.boundary]))
        seen = set(out)
        for _ in range(samples):
            v = self.group.domain.draw(rng, self.height)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out

    def positives(self, seed: int = 0, samples: int = 1000) -> list:
        rng = random.Random(f"{self.name}:cone:{seed}")
        out = [v for v in dict.fromkeys([self.zero, *self.boundary]) if self.in_cone(v)]
        seen = set(out)
        for _ in range(samples):
            v = self.cone_draw(rng, self.height) if self.cone_draw else self.group.domain.draw(rng, self.height)
            if v not in seen and self.in_cone(v):
                seen.add(v)
                out.append(v)
        return out

    def __repr__(self) -> str:
        return f"SymbolicRpoGroup({self.name})"


class SymbolicMorphism:
    def __init__(self, dom, cod, fn: Callable[[Any], Any], name: str = "f"):
        self.dom = dom
        self.cod = cod
        self.fn = fn
        self.name = name

    def __call__(self, a):
        return self.fn(a)

    def then(self, other: "SymbolicMorphism") -> "SymbolicMorphism":
        return SymbolicMorphism(self.dom, other.cod, lambda a: other(self(a)), f"{other.name}.{self.name}")

    def __repr__(self) -> str:
        return f"SymbolicMorphism({self.name}: {self.dom.name} -> {self.cod.name})"


def sample_pairs(g, seed: int, samples: int) -> list[tuple]:
    """All pairs of boundary elements, then ``samples`` seeded random pairs."""
    dom = g.domain(seed, samples)
    head = dom[: 1 + len(getattr(g, "boundary", ()))]
    pairs = [(a, b) for a in head for b in head]
    rng = random.Random(f"{g.name}:pairs:{seed}")
    pairs += [(rng.choice(dom), rng.choice(dom)) for _ in range(samples)]
    return list(dict.fromkeys(pairs))


def sampled_validate(g: SymbolicRpoGroup, seed: int = 0, samples: int = 1000) -> Verdict:
    """Group laws and cone-submonoid laws on boundary elements plus a seeded sample."""
    if samples < 1:
        raise ValueError("need at least one sample")
    dom = g.domain(seed, samples)
    for a in dom:
        if not g.contains(a):
            raise StructuralError(f"sampler produced {fmt(a)} outside {g.group.domain.name}")
    z = g.zero
    for a in dom:
        if g.add(z, a) != a or g.add(a, z) != a:
            return fail("identity", {"a": fmt(a)}, f"0+{fmt(a)} != {fmt(a)}", sampled=True)
        if g.add(a, g.neg(a)) != z or g.add(g.neg(a), a) != z:
            return fail("inverse", {"a": fmt(a)}, f"{fmt(a)}-{fmt(a)} != 0", sampled=True)
    rng = random.Random(f"{g.name}:assoc:{seed}")
    head = dom[: 1 + len(g.boundary)]
    triples = [(a, b, c) for a in head for b in head for c in head]
    triples += [(rng.choice(dom), rng.choice(dom), rng.choice(dom)) for _ in range(samples)]
    for a, b, c in triples:
        if g.add(g.add(a, b), c) != g.add(a, g.add(b, c)):
            return fail("associativity", {"a": fmt(a), "b": fmt(b), "c": fmt(c)},
                        f"({fmt(a)}+{fmt(b)})+{fmt(c)} != {fmt(a)}+({fmt(b)}+{fmt(c)})", sampled=True)
    if not g.in_cone(z):
        return fail("cone-identity", {"a": fmt(z)}, "identity is not in the cone", sampled=True)
    pos = g.positives(seed, samples)
    phead = [p for p in head if g.in_cone(p)]
    ppairs = [(p, q) for p in phead for q in phead]
    ppairs += [(rng.choice(pos), rng.choice(pos)) for _ in range(samples)]
    for p, q in ppairs:
        r = g.add(p, q)
        if not g.in_cone(r):
            return fail("cone-closure", {"p": fmt(p), "q": fmt(q)},
                        f"{fmt(p)}+{fmt(q)}={fmt(r)} not in cone", sampled=True)
    return ok("rpo-group", sampled=True)


def eval_expr(expr: Any, g: SymbolicRpoGroup) -> Any:
    """Evaluate ``["add", e, e]``, ``["sub", e, e]``, ``["neg", e]`` or ``["elem", value]``."""
    if not isinstance(expr, (list, tuple)) or not expr:
        raise StructuralError(f"bad expression {expr!r}")
    head, *args = expr
    if head == "elem" and len(args) == 1:
        return g.group.domain.parse(args[0])
    if head == "neg" and len(args) == 1:
        return g.neg(eval_expr(args[0], g))
    if head in ("add", "sub") and len(args) == 2:
        a, b = (eval_expr(x, g) for x in args)
        return g.add(a, b) if head == "add" else g.sub(a, b)
    raise StructuralError(f"bad expression {expr!r}")


@dataclass(frozen=True)
class WitnessValue:
    value: Any
    in_cone: bool
    text: str = field(default="")

    def __str__(self) -> str:
        return f"{fmt(self.value)} ({'in' if self.in_cone else 'not in'} cone)"


def eval_witness(expr: Any, g: SymbolicRpoGroup) -> WitnessValue:
    try:
        v = eval_expr(expr, g)
    except ZeroDivisionError as exc:
        raise SymbolicDomainError("division by zero in a Q* component") from exc
    return WitnessValue(v, g.in_cone(v), fmt(v))


# -- cones used by the registry ------------------------------------------------

def _nat(v) -> bool:
    return _is_rat(v) and Fraction(v).denominator == 1 and v >= 0


def _posint(v) -> bool:
    return _nat(v) and v >= 1


def ex1_cone(v) -> bool:
    """(2N ⋊ N*) ∪ ((2N+1) ⋊ 2N*)"""
    a, x = v
    if not (_nat(a) and _posint(x)):
        return False
    return a % 2 == 0 or x % 2 == 0


def ex1_cone_all_odd_multipliers(v) -> bool:
    """(2N ⋊ N*) ∪ ((2N+1) ⋊ N*) = N ⋊ N*"""
    a, x = v
    return _nat(a) and _posint(x)


def ex1_cone_odd_multipliers_only(v) -> bool:
    """(2N ⋊ N*) ∪ ((2N+1) ⋊ (2N+1)): odd parts allowed only with odd multipliers."""
    a, x = v
    if not (_nat(a) and _posint(x)):
        return False
    return a % 2 == 0 or x % 2 == 1


def _c2(v) -> bool:
    return v == 1 or v == -1


def ex3_cone(v) -> bool:
    """(C2 × Q*_{|.|<=1}) ∪ ((Q* \\ C2) × Q*_{|.|<1})"""
    a, b = v
    if _c2(a):
        return abs(b) <= 1
    return abs(b) < 1


def ex4_cone(v) -> bool:
    """(C2 × Q*_{|.|<=1}) ∪ (Q*_{|.|<1})^2"""
    a, b = v
    if _c2(a):
        return abs(b) <= 1
    return abs(a) < 1 and abs(b) < 1


def _draw_unit_ball(rng: random.Random, h: int, strict: bool) -> Fraction:
    while True:
        q = rng.randint(1, h)
        p = rng.randint(-q, q)
        if p and (not strict or abs(p) < q):
            return Fraction(p, q)


def _draw_ex1(rng, h):
    if rng.random() < 0.5:
        return (Fraction(2 * rng.randint(0, h)), Fraction(rng.randint(1, h)))
    return (Fraction(2 * rng.randint(0, h) + 1), Fraction(2 * rng.randint(1, h)))


def _draw_ex3(rng, h):
    if rng.random() < 0.5:
        return (Fraction(rng.choice((1, -1))), _draw_unit_ball(rng, h, False))
    return (_rand_rat(rng, h, True), _draw_unit_ball(rng, h, True))


def _draw_ex4(rng, h):
    if rng.random() < 0.5:
        return (Fraction(rng.choice((1, -1))), _draw_unit_ball(rng, h, False))
    return (_draw_unit_ball(rng, h, True), _draw_unit_ball(rng, h, True))


F = Fraction


def z_n() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(integers(), lambda v: v >= 0, "Z_N", boundary=[1, -1, 2, -2],
                            cone_draw=lambda rng, h: rng.randint(0, h), cone_is_group=False,
                            cone_desc="N")


def z_triv() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(integers(), lambda v: v == 0, "Z_triv", boundary=[1, -1],
                            cone_draw=lambda rng, h: 0, cone_is_group=True, cone_desc="0")


def z_full() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(integers(), lambda v: True, "Z_Z", boundary=[1, -1],
                            cone_is_group=True, cone_desc="Z")


def zxz_diag_n() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(direct(integers(), integers()), lambda v: v[0] == v[1] and v[0] >= 0,
                            "ZxZ_diagN", boundary=[(1, 1), (2, 2), (2, 3), (-1, -1), (1, 0), (0, 1)],
                            cone_draw=lambda rng, h: (lambda n: (n, n))(rng.randint(0, h)),
                            cone_is_group=False, cone_desc="Δ(N)")


def q_even() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(rationals(), lambda v: _nat(v) and v % 2 == 0, "Q_2N",
                            boundary=[F(2), F(1), F(-2), F(1, 2)],
                            cone_draw=lambda rng, h: F(2 * rng.randint(0, h)), cone_is_group=False,
                            cone_desc="2N")


def qstar_posint() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(nonzero_rationals(), _posint, "Q*_N*",
                            boundary=[F(2), F(3), F(1, 2), F(-1)],
                            cone_draw=lambda rng, h: F(rng.randint(1, h)), cone_is_group=False,
                            cone_desc="N*")


def qstar_unit_ball() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(nonzero_rationals(), lambda v: abs(v) <= 1, "Q*_<=1",
                            boundary=[F(1, 2), F(-1), F(2), F(-1, 3)],
                            cone_draw=lambda rng, h: _draw_unit_ball(rng, h, False), cone_is_group=False,
                            cone_desc="Q*_{|.|<=1}")


def qstar_c2() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(nonzero_rationals(), _c2, "Q*_C2", boundary=[F(-1), F(2)],
                            cone_draw=lambda rng, h: F(rng.choice((1, -1))), cone_is_group=True,
                            cone_desc="C2")


EX1_BOUNDARY = [(F(3), F(2)), (F(0), F(2)), (F(2), F(1)), (F(1), F(2)), (F(2), F(3)),
                (F(0), F(1, 2)), (F(1), F(1)), (F(4), F(2)), (F(5), F(4)), (F(-2), F(1))]


def ex1_apex(cone=ex1_cone, name: str = "Ex1_apex") -> SymbolicRpoGroup:
    return SymbolicRpoGroup(affine_rationals(), cone, name, boundary=EX1_BOUNDARY,
                            cone_draw=_draw_ex1, cone_is_group=False,
                            cone_desc="(2N⋊N*)∪((2N+1)⋊2N*)")


def ex2_apex() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(direct(integers(), integers()), lambda v: v[0] >= 0, "Ex2_apex",
                            boundary=[(1, 0), (0, 1), (2, -3), (-1, 1), (3, 5), (0, -2)],
                            cone_draw=lambda rng, h: (rng.randint(0, h), rng.randint(-h, h)),
                            cone_is_group=False, cone_desc="NxZ")


def ex3_apex() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(direct(nonzero_rationals(), nonzero_rationals()), ex3_cone, "Ex3_apex",
                            boundary=[(F(5), F(1, 2)), (F(1), F(1, 2)), (F(-1), F(1)), (F(1, 2), F(1, 2)),
                                      (F(2), F(-1, 3)), (F(-1), F(1, 2)), (F(3), F(1))],
                            cone_draw=_draw_ex3, cone_is_group=False,
                            cone_desc="(C2xQ*_{<=1})∪((Q*\\C2)xQ*_{<1})")


def ex4_apex() -> SymbolicRpoGroup:
    return SymbolicRpoGroup(direct(nonzero_rationals(), nonzero_rationals()), ex4_cone, "Ex4_apex",
                            boundary=[(F(1, 2), F(1, 2)), (F(1), F(1, 2)), (F(5), F(1, 2)), (F(-1), F(1)),
                                      (F(2), F(1, 2)), (F(1, 3), F(-1, 2))],
                            cone_draw=_draw_ex4, cone_is_group=False,
                            cone_desc="(C2xQ*_{<=1})∪(Q*_{<1})^2")


GROUP_REGISTRY: dict[str, Callable[[], SymbolicRpoGroup]] = {
    "Z_N": z_n,
    "Z_triv": z_triv,
    "Z_Z": z_full,
    "ZxZ_diagN": zxz_diag_n,
    "Q_2N": q_even,
    "Q*_N*": qstar_posint,
    "Q*_<=1": qstar_unit_ball,
    "Q*_C2": qstar_c2,
}

GRAPH_IDS = ("Ex1", "Ex2", "Ex3", "Ex4")
EXAMPLE_IDS = ("Z_N", "Z_triv", "ZxZ_diagN", *GRAPH_IDS)


def build_example(example_id: str):
    """A registry object: a symbolic rpo group or a symbolic reflexive graph."""
    if example_id in GROUP_REGISTRY:
        return GROUP_REGISTRY[example_id]()
    if example_id in GRAPH_IDS:
        from .internal import ReflexiveGraph

        if example_id == "Ex1":
            apex, base = ex1_apex(), qstar_posint()
            d = SymbolicMorphism(apex, base, lambda v: v[1], "p1")
            e = SymbolicMorphism(base, apex, lambda x: (F(0), x), "i1")
            return ReflexiveGraph(apex, base, d, d, e, name="Ex1")
        if example_id == "Ex2":
            apex, base = ex2_apex(), z_full()
            d = SymbolicMorphism(apex, base, lambda v: v[1], "p1")
            c = SymbolicMorphism(apex, base, lambda v: v[0] + v[1], "p0+p1")
            e = SymbolicMorphism(base, apex, lambda x: (0, x), "i1")
            return ReflexiveGraph(apex, base, d, c, e, name="Ex2")
        apex = ex3_apex() if example_id == "Ex3" else ex4_apex()
        base = qstar_unit_ball()
        d = SymbolicMorphism(apex, base, lambda v: v[1], "p1")
        e = SymbolicMorphism(base, apex, lambda x: (F(1), x), "i1")
        return ReflexiveGraph(apex, base, d, d, e, name=example_id)
    raise KeyError(f"unknown example id {example_id!r}; known: {', '.join(EXAMPLE_IDS)}")


# -- normal monomorphisms ------------------------------------------------------

def is_normal_mono_symbolic(f: SymbolicMorphism, preimage: Callable[[Any], Any],
                            seed: int = 0, samples: int = 1000) -> Verdict:
    """Sampled normal-mono test for an injective ``f`` with partial inverse ``preimage``.

    ``preimage(y)`` returns the unique x with f(x) = y, or None when y is
    outside the image.  The image must be normal and the domain cone must
    map onto image ∩ P.
    """
    dom, cod = f.dom, f.cod
    for a in dom.domain(seed, samples):
        if preimage(f(a)) != a:
            raise PreconditionError(f"{f.name} is not injective with the given preimage at {fmt(a)}")
    if not cod.group.abelian:
        for x in cod.domain(seed, samples)[: 1 + len(cod.boundary)]:
            for s in dom.domain(seed, samples):
                r = cod.sub(cod.add(x, f(s)), x)
                if preimage(r) is None:
                    return fail("normal-image", {"x": fmt(x), "s": fmt(f(s))},
                                f"{fmt(x)}+{fmt(f(s))}-{fmt(x)}={fmt(r)} leaves the image", sampled=True)
    for p in cod.positives(seed, samples):
        a = preimage(p)
        if a is not None and not dom.in_cone(a):
            img = f"{dom.cone_desc}" if dom.cone_desc else "f(P)"
            return fail("cone-equality", {"a": fmt(p)},
                        f"{fmt(p)} lies in image ∩ P but not in f(P); {img} is not "
                        f"{cod.group.name}∩{cod.cone_desc}", sampled=True)
    return ok("normal-mono", sampled=True)


def ideal_square(seed: int = 0, samples: int = 1000):
    """The commutative square (Z,0) = (Z,0) over p1: (ZxZ, Δ(N)) -> (Z,N).

    Returns (w, v, commutes) where w = ker p0 and v is the induced
    monomorphism (Z,0) -> (Z,N).
    """
    z0, zn, zz = z_triv(), z_n(), zxz_diag_n()
    w = SymbolicMorphism(z0, zz, lambda x: (0, x), "ker p0")
    p1 = SymbolicMorphism(zz, zn, lambda v: v[1], "p1")
    q = SymbolicMorphism(z0, z0, lambda x: x, "id")
    v = SymbolicMorphism(z0, zn, lambda x: x, "v")
    commutes = all(p1(w(a)) == v(q(a)) for a in z0.domain(seed, samples))
    return w, v, commutes
