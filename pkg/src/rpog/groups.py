"""Constructors for small groups and the test corpus of rpo groups.

The library is complete up to isomorphism for orders 1..15; S4 is added
for the conjugation counterexample.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .finite import FiniteGroup, FiniteRpoGroup, direct_product

LIBRARY_MAX_ORDER = 15


def from_operation(elements: Sequence[Hashable], op: Callable, labels: Sequence[str] | None = None,
                   name: str = "G") -> FiniteGroup:
    """Cayley table of ``op`` on ``elements``; ``elements[0]`` must be the identity."""
    pos = {e: i for i, e in enumerate(elements)}
    table = [[pos[op(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, labels or [str(e) for e in elements], name)


def cyclic(n: int) -> FiniteGroup:
    return from_operation(list(range(n)), lambda a, b: (a + b) % n, name=f"C{n}")


def product_group(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    return direct_product(FiniteRpoGroup(g, [0]), FiniteRpoGroup(h, [0]), name or f"{g.name}x{h.name}").group


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; elements r^k s^e."""
    elems = [(k, e) for e in (0, 1) for k in range(n)]

    def op(a, b):
        k1, e1 = a
        k2, e2 = b
        return ((k1 + (-k2 if e1 else k2)) % n, (e1 + e2) % 2)

    labels = [("r%d" % k if k else "1") if not e else ("r%ds" % k if k else "s") for k, e in elems]
    return from_operation(elems, op, labels, f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>, order 4n (Q8 for n=2)."""
    m = 2 * n
    elems = [(k, e) for e in (0, 1) for k in range(m)]

    def op(a, b):
        k1, e1 = a
        k2, e2 = b
        if not e1:
            return ((k1 + k2) % m, e2)
        if not e2:
            return ((k1 - k2) % m, 1)
        return ((k1 - k2 + n) % m, 0)

    labels = [("a%d" % k if k else "1") if not e else ("a%dx" % k if k else "x") for k, e in elems]
    return from_operation(elems, op, labels, "Q8" if n == 2 else f"Dic{n}")


def cycle_label(p: Sequence[int]) -> str:
    """Cycle notation with 1-based points; the identity is ``Id``."""
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        parts.append("(" + "".join(map(str, cyc)) + ")")
    return "".join(parts) or "Id"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Inverse of :func:`cycle_label`; products of cycles compose right to left."""
    perm = list(range(degree))
    text = text.strip()
    if text in ("Id", "()", ""):
        return tuple(perm)
    cycles = [c for c in text.replace(")", ")|").split("|") if c.strip()]
    for c in reversed(cycles):
        pts = [int(ch) - 1 for ch in c.strip().strip("()")]
        step = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a] = b
        perm = [step[perm[i]] for i in range(degree)]
    return tuple(perm)


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """a after b."""
    return tuple(a[b[i]] for i in range(len(b)))


def symmetric(n: int, even_only: bool = False) -> FiniteGroup:
    from .finite import sign_of

    perms = sorted(itertools.permutations(range(n)))
    if even_only:
        perms = [p for p in perms if sign_of(p) == 0]
    return from_operation(perms, compose, [cycle_label(p) for p in perms],
                          f"A{n}" if even_only else f"S{n}")


@lru_cache(maxsize=None)
def small_groups(max_order: int = LIBRARY_MAX_ORDER) -> tuple[FiniteGroup, ...]:
    """One group per isomorphism class of order <= max_order (<= 15)."""
    if max_order > LIBRARY_MAX_ORDER:
        raise ValueError(f"library is complete only up to order {LIBRARY_MAX_ORDER}")
    c = cyclic
    out = [c(1), c(2), c(3), c(4), product_group(c(2), c(2), "V4"), c(5), c(6), dihedral(3), c(7),
           c(8), product_group(c(4), c(2), "C4xC2"),
           product_group(product_group(c(2), c(2)), c(2), "C2^3"), dihedral(4), dicyclic(2),
           c(9), product_group(c(3), c(3), "C3xC3"), c(10), dihedral(5), c(11),
           c(12), product_group(c(6), c(2), "C6xC2"), dihedral(6), symmetric(4, True), dicyclic(3),
           c(13), c(14), dihedral(7), c(15)]
    return tuple(g for g in out if g.order <= max_order)


def rpo_corpus(max_order: int) -> list[FiniteRpoGroup]:
    """Every cone on every library group of order <= max_order."""
    out = []
    for g in small_groups(min(max_order, LIBRARY_MAX_ORDER)):
        for i, cone in enumerate(g.subgroups):
            out.append(FiniteRpoGroup(g, cone, f"{g.name}/P{i}"))
    return out


def s4() -> FiniteGroup:
    return symmetric(4)


def s4_rpo(cone_cycles: Sequence[str], name: str) -> FiniteRpoGroup:
    g = s4()
    idx = {lab: i for i, lab in enumerate(g.labels)}
    members = [idx[cycle_label(parse_cycles(c, 4))] for c in cone_cycles]
    return FiniteRpoGroup(g, g.closure(members), name)


def alternating_cone_s4() -> FiniteRpoGroup:
    g = s4()
    from .finite import sign_of
    perms = sorted(itertools.permutations(range(4)))
    return FiniteRpoGroup(g, [i for i, p in enumerate(perms) if sign_of(p) == 0], "S4_A4")


def cone_representatives(g: FiniteGroup) -> list[frozenset[int]]:
    """One cone per orbit of Aut(g) acting on subgroups."""
    from .finite import automorphisms

    auts = automorphisms(g)
    seen: set[frozenset[int]] = set()
    out = []
    for s in g.subgroups:
        if s in seen:
            continue
        seen |= {frozenset(a[x] for x in s) for a in auts}
        out.append(s)
    return out


def rpo_iso_corpus(max_order: int) -> list[FiniteRpoGroup]:
    """One rpo group per isomorphism class with order <= max_order."""
    out = []
    for g in small_groups(min(max_order, LIBRARY_MAX_ORDER)):
        for c in cone_representatives(g):
            out.append(FiniteRpoGroup(g, c, f"{g.name}/|P|={len(c)}" + ("" if _unique_size(g, c) else f"#{min(c - {0}, default=0)}")))
    return out


def _unique_size(g: FiniteGroup, c: frozenset[int]) -> bool:
    return sum(1 for s in cone_representatives(g) if len(s) == len(c)) == 1


ALIASES = {"S3": "D3", "Z2": "C2", "Z3": "C3", "Klein": "V4"}


def library_group(name: str) -> FiniteGroup:
    name = ALIASES.get(name, name)
    for g in small_groups():
        if g.name == name:
            return g
    if name == "S4":
        return s4()
    raise KeyError(name)


FINITE_NAMED = {
    "zero": lambda: FiniteRpoGroup(cyclic(1), [0], "zero"),
    "S4_A4": alternating_cone_s4,
    "S4_12_34": lambda: s4_rpo(["(12)(34)"], "S4_12_34"),
    "V4_a": lambda: FiniteRpoGroup(product_group(cyclic(2), cyclic(2), "V4"), [0, 1], "V4_a"),
}


def finite_registry(name: str) -> FiniteRpoGroup:
    """Named finite objects: the entries of FINITE_NAMED, or ``G/full`` and ``G/triv``
    for any library group ``G`` (``S3/triv``, ``C4/full``, ``S4/full``...)."""
    if name in FINITE_NAMED:
        return FINITE_NAMED[name]()
    base, sep, kind = name.partition("/")
    if sep and kind in ("full", "triv"):
        g = library_group(base)
        return FiniteRpoGroup(g, g.elements() if kind == "full" else [0], name)
    raise KeyError(name)
