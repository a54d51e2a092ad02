"""Finite groups as Cayley tables, finite right-preordered groups and their morphisms.

Elements are integer indices ``0..n-1`` and index 0 is always the identity.
Subsets (cones, subgroups) are frozensets of indices.  Every check is
exhaustive and reports the first violation in lexicographic element order.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .verdict import PreconditionError, StructuralError, Verdict, fail, ok


class FiniteGroup:
    """A finite magma given by its table, meant to be a group.

    Construction only checks the table's shape and index range; the group
    laws are checked by :func:`validate_group`.
    """

    zero = 0
    exhaustive = True

    def __init__(self, table, labels: Sequence[str] | None = None, name: str = "G"):
        try:
            arr = np.asarray(table)
        except (ValueError, TypeError) as exc:  # ragged rows
            raise StructuralError(f"{name}: table is not a square array") from exc
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise StructuralError(f"{name}: table must be n x n, got shape {arr.shape}")
        n = arr.shape[0]
        if n == 0:
            raise StructuralError(f"{name}: a group has an identity, order 0 is rejected")
        if arr.dtype == object or not np.issubdtype(arr.dtype, np.integer):
            raise StructuralError(f"{name}: table entries must be integers")
        if arr.min() < 0 or arr.max() >= n:
            raise StructuralError(f"{name}: table entries must lie in 0..{n - 1}")
        self.table = arr.astype(np.int64)
        self.table.setflags(write=False)
        self.order = n
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise StructuralError(f"{name}: {len(labels)} labels for {n} elements")
        self.labels = tuple(str(x) for x in labels)
        self.name = name
        self.rows = tuple(map(tuple, self.table.tolist()))

    # -- element arithmetic ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return self.rows[a][b]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        inv = []
        for a in range(self.order):
            hits = [b for b in range(self.order) if self.rows[a][b] == 0 and self.rows[b][a] == 0]
            inv.append(hits[0] if hits else -1)
        return tuple(inv)

    def neg(self, a: int) -> int:
        b = self.inverse[a]
        if b < 0:
            raise PreconditionError(f"{self.name}: element {self.labels[a]} has no inverse")
        return b

    def sub(self, a: int, b: int) -> int:
        return self.rows[a][self.neg(b)]

    def conj(self, x: int, a: int) -> int:
        """x + a - x"""
        return self.sub(self.rows[x][a], x)

    def fmt(self, a: int) -> str:
        return self.labels[a]

    def elements(self) -> range:
        return range(self.order)

    def domain(self, seed: int = 0, samples: int = 0) -> range:
        return range(self.order)

    # -- structure -----------------------------------------------------------
    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.rows[x][a]
            k += 1
            if k > self.order:
                raise PreconditionError(f"{self.name}: {self.labels[a]} has no finite order")
        return k

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        """Submonoid generated by ``gens`` (a subgroup, since the group is finite)."""
        gens = list(dict.fromkeys(gens))
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                row = self.rows[x]
                for g in gens:
                    y = row[g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        by_order = sorted(range(1, self.order), key=lambda a: (-self.element_order(a), a))
        gens: list[int] = []
        cur = frozenset({0})
        for a in by_order:
            if a not in cur:
                gens.append(a)
                cur = self.closure(gens)
            if len(cur) == self.order:
                break
        return tuple(gens)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_normal(self, sub: Iterable[int]) -> bool:
        s = frozenset(sub)
        return all(self.conj(x, a) in s for x in range(self.order) for a in s)

    @cached_property
    def subgroups(self) -> tuple[frozenset[int], ...]:
        return _closure_lattice(self)

    @cached_property
    def normal_subgroups(self) -> tuple[frozenset[int], ...]:
        return tuple(s for s in self.subgroups if self.is_normal(s))

    @cached_property
    def center(self) -> frozenset[int]:
        return frozenset(
            a for a in range(self.order)
            if all(self.rows[a][b] == self.rows[b][a] for b in range(self.order))
        )

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())


def subgroup_generators(grp: "FiniteGroup", sub) -> list[int]:
    """A generating set of ``sub``, picked greedily in index order."""
    gens: list[int] = []
    span = frozenset([0])
    for x in sorted(sub):
        if x not in span:
            gens.append(x)
            span = grp.closure(gens)
    return gens


def _closure_lattice(g: FiniteGroup) -> tuple[frozenset[int], ...]:
    """All closed subsets, found by joining cyclic closures until nothing new appears."""
    cyclic = {g.closure([a]) for a in range(g.order)}
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        nxt = []
        for s in frontier:
            for c in cyclic:
                if c <= s:
                    continue
                j = g.closure(sorted(s | c))
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))


def validate_group(g: FiniteGroup) -> Verdict:
    """Identity, associativity, then inverse laws; first violation wins."""
    t = g.table
    n = g.order
    idx = np.arange(n)
    bad = np.nonzero((t[0] != idx) | (t[:, 0] != idx))[0]
    if bad.size:
        a = int(bad[0])
        return fail("identity", {"a": g.fmt(a)}, f"0+{g.fmt(a)} or {g.fmt(a)}+0 differs from {g.fmt(a)}")
    trip = first_associativity_violation(t)
    if trip is not None:
        a, b, c = trip
        return fail("associativity", {"a": g.fmt(a), "b": g.fmt(b), "c": g.fmt(c)},
                    f"({g.fmt(a)}+{g.fmt(b)})+{g.fmt(c)} != {g.fmt(a)}+({g.fmt(b)}+{g.fmt(c)})")
    for a in range(n):
        if g.inverse[a] < 0:
            return fail("inverse", {"a": g.fmt(a)}, f"{g.fmt(a)} has no two-sided inverse")
    return ok("group")


def first_associativity_violation(t: np.ndarray, chunk: int = 64) -> tuple[int, int, int] | None:
    n = t.shape[0]
    for start in range(0, n, chunk):
        a = np.arange(start, min(n, start + chunk))
        lhs = t[t[a][:, :, None], np.arange(n)[None, None, :]]   # (a+b)+c
        rhs = t[a[:, None, None], t[None, :, :]]                   # a+(b+c)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, b, c = (int(v) for v in bad[0])
            return int(a[i]), b, c
    return None


class FiniteRpoGroup:
    """A finite group with a positive cone (a set of element indices)."""

    exhaustive = True
    zero = 0

    def __init__(self, group: FiniteGroup, cone: Iterable[int], name: str | None = None):
        try:
            members = frozenset(int(c) for c in cone)
        except (TypeError, ValueError) as exc:
            raise StructuralError("cone must be a list of element indices") from exc
        bad = [c for c in members if not 0 <= c < group.order]
        if bad:
            raise StructuralError(f"cone index {bad[0]} out of range for order {group.order}")
        self.group = group
        self.cone = members
        self.name = name or group.name

    # arithmetic delegates, so checkers can treat finite and symbolic objects alike
    @property
    def order(self) -> int:
        return self.group.order

    def add(self, a: int, b: int) -> int:
        return self.group.rows[a][b]

    def neg(self, a: int) -> int:
        return self.group.neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.group.sub(a, b)

    def fmt(self, a: int) -> str:
        return self.group.labels[a]

    def in_cone(self, a: int) -> bool:
        return a in self.cone

    def elements(self) -> range:
        return range(self.group.order)

    def domain(self, seed: int = 0, samples: int = 0) -> range:
        return range(self.group.order)

    def positives(self, seed: int = 0, samples: int = 0) -> list[int]:
        return sorted(self.cone)

    def contains(self, a) -> bool:
        return isinstance(a, (int, np.integer)) and 0 <= a < self.group.order

    def __repr__(self) -> str:
        return f"FiniteRpoGroup({self.name}, order={self.order}, |cone|={len(self.cone)})"

    def key(self) -> tuple:
        return (self.group.table.tobytes(), tuple(sorted(self.cone)))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRpoGroup) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


def zero_object() -> FiniteRpoGroup:
    return FiniteRpoGroup(FiniteGroup([[0]], ["0"], "0"), [0], "0")


def validate(g: FiniteRpoGroup) -> Verdict:
    v = validate_group(g.group)
    if not v:
        return v
    if 0 not in g.cone:
        return fail("cone-identity", {"a": g.fmt(0)}, "identity is not in the cone")
    for p in sorted(g.cone):
        for q in sorted(g.cone):
            r = g.add(p, q)
            if r not in g.cone:
                return fail("cone-closure", {"p": g.fmt(p), "q": g.fmt(q)},
                            f"{g.fmt(p)}+{g.fmt(q)}={g.fmt(r)} not in cone")
    return ok("rpo-group")


def is_preordered(g: FiniteRpoGroup) -> Verdict:
    """Cone closed under conjugation: x + p - x in P for all x, p in P."""
    for x in g.elements():
        for p in sorted(g.cone):
            r = g.group.conj(x, p)
            if r not in g.cone:
                return fail("preordered", {"x": g.fmt(x), "p": g.fmt(p), "x+p-x": g.fmt(r)},
                            f"{g.fmt(x)}+{g.fmt(p)}-{g.fmt(x)}={g.fmt(r)} not in cone")
    return ok("preordered")


class RpoMorphism:
    """A map between finite rpo groups, stored as an index array."""

    def __init__(self, dom: FiniteRpoGroup, cod: FiniteRpoGroup, mapping: Sequence[int],
                 name: str = "f"):
        m = [int(v) for v in mapping]
        if len(m) != dom.order:
            raise StructuralError(f"{name}: map has length {len(m)}, domain order is {dom.order}")
        if any(not 0 <= v < cod.order for v in m):
            raise StructuralError(f"{name}: map entries must lie in 0..{cod.order - 1}")
        self.dom = dom
        self.cod = cod
        self.map = tuple(m)
        self.name = name

    def __call__(self, a: int) -> int:
        return self.map[a]

    def then(self, other: "RpoMorphism") -> "RpoMorphism":
        """``other`` after ``self``."""
        return RpoMorphism(self.dom, other.cod, [other.map[x] for x in self.map],
                           f"{other.name}.{self.name}")

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def __repr__(self) -> str:
        return f"RpoMorphism({self.name}: {self.dom.name} -> {self.cod.name})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, RpoMorphism) and self.map == other.map
                and self.dom == other.dom and self.cod == other.cod)

    def __hash__(self) -> int:
        return hash(self.map)


def identity_morphism(g: FiniteRpoGroup) -> RpoMorphism:
    return RpoMorphism(g, g, range(g.order), "id")


def check_morphism(f: RpoMorphism) -> Verdict:
    dom, cod = f.dom, f.cod
    m = np.asarray(f.map, dtype=np.int64)
    lhs = m[dom.group.table]
    rhs = cod.group.table[m[:, None], m[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b = (int(v) for v in bad[0])
        return fail("homomorphism", {"a": dom.fmt(a), "b": dom.fmt(b)},
                    f"{f.name}({dom.fmt(a)}+{dom.fmt(b)})={cod.fmt(int(lhs[a, b]))} but "
                    f"{f.name}({dom.fmt(a)})+{f.name}({dom.fmt(b)})={cod.fmt(int(rhs[a, b]))}")
    for p in sorted(dom.cone):
        if f.map[p] not in cod.cone:
            return fail("monotone", {"p": dom.fmt(p)},
                        f"{dom.fmt(p)} is positive but {f.name}({dom.fmt(p)})={cod.fmt(f.map[p])} is not")
    return ok("morphism")


def subobject(g: FiniteRpoGroup, elements: Iterable[int], cone: Iterable[int] | None = None,
              name: str | None = None) -> tuple[FiniteRpoGroup, RpoMorphism]:
    """Restrict ``g`` to a subgroup; the cone defaults to the intersection."""
    elems = sorted(set(elements))
    if not elems or elems[0] != 0:
        raise PreconditionError("a subgroup must contain the identity")
    pos = {e: i for i, e in enumerate(elems)}
    try:
        table = [[pos[g.add(a, b)] for b in elems] for a in elems]
    except KeyError as exc:
        raise PreconditionError("subset is not closed under the group law") from exc
    cone_set = set(g.cone) & set(elems) if cone is None else set(cone)
    grp = FiniteGroup(table, [g.fmt(e) for e in elems], name or f"sub({g.name})")
    sub = FiniteRpoGroup(grp, [pos[c] for c in cone_set], grp.name)
    return sub, RpoMorphism(sub, g, elems, "incl")


def kernel(f: RpoMorphism) -> tuple[FiniteRpoGroup, RpoMorphism]:
    """Kernel ``(ker f, ker f ∩ P)`` with its inclusion."""
    ks = [a for a in f.dom.elements() if f.map[a] == 0]
    return subobject(f.dom, ks, name=f"ker({f.name})")


def is_normal_mono(f: RpoMorphism) -> Verdict:
    if not f.is_injective():
        raise PreconditionError(f"{f.name} is not injective")
    v = check_morphism(f)
    if not v:
        raise PreconditionError(f"{f.name} is not a morphism", v)
    cod = f.cod
    img = f.image()
    for x in cod.elements():
        for s in sorted(img):
            r = cod.group.conj(x, s)
            if r not in img:
                return fail("normal-image", {"x": cod.fmt(x), "s": cod.fmt(s)},
                            f"{cod.fmt(x)}+{cod.fmt(s)}-{cod.fmt(x)}={cod.fmt(r)} leaves the image")
    pushed = frozenset(f.map[p] for p in f.dom.cone)
    target = img & cod.cone
    diff = sorted(target - pushed)
    if diff:
        a = diff[0]
        return fail("cone-equality", {"a": cod.fmt(a)},
                    f"{cod.fmt(a)} lies in image ∩ P but not in the image of the domain cone")
    return ok("normal-mono")


def enumerate_cones(g: FiniteGroup) -> list[frozenset[int]]:
    """All submonoids, each once, ordered by size then members."""
    return list(_closure_lattice(g))


def homomorphisms(g: FiniteGroup, h: FiniteGroup,
                  fixed: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """All group homomorphisms ``g -> h`` as index tuples (deterministic order).

    ``fixed`` restricts the search to maps taking the given values; generators
    are then drawn from its keys first, so a generating set of prescribed
    values leaves a single candidate.
    """
    fixed = fixed or {}
    if fixed:
        gens = _spanning_generators(g, sorted(fixed))
    else:
        gens = list(g.generators)
    if not gens:
        if all(v == 0 for v in fixed.values()):
            yield (0,) * g.order
        return
    h_orders = [h.element_order(b) for b in range(h.order)]
    cands = []
    for a in gens:
        if a in fixed:
            cands.append([fixed[a]])
            continue
        k = g.element_order(a)
        cands.append([b for b in range(h.order) if k % h_orders[b] == 0])
    grows, hrows = g.rows, h.rows
    for imgs in itertools.product(*cands):
        m = [-1] * g.order
        m[0] = 0
        queue = [0]
        good = True
        for x in queue:
            fx = m[x]
            gx, hx = grows[x], hrows[fx]
            for a, b in zip(gens, imgs):
                y, fy = gx[a], hx[b]
                if m[y] < 0:
                    m[y] = fy
                    queue.append(y)
                elif m[y] != fy:
                    good = False
                    break
            if not good:
                break
        if good and all(m[a] == b for a, b in fixed.items()):
            yield tuple(m)


def _spanning_generators(g: FiniteGroup, first: list[int]) -> list[int]:
    """A generating set of ``g`` taken greedily from ``first``, then from all elements."""
    out: list[int] = []
    span = frozenset([0])
    for a in list(first) + list(g.elements()):
        if len(span) == g.order:
            break
        if a not in span:
            out.append(a)
            span = g.closure(out)
    return out


def monotone_homomorphisms(g: FiniteRpoGroup, h: FiniteRpoGroup,
                           fixed: dict[int, int] | None = None) -> Iterator[RpoMorphism]:
    for m in homomorphisms(g.group, h.group, fixed):
        if all(m[p] in h.cone for p in g.cone):
            yield RpoMorphism(g, h, m)


def automorphisms(g: FiniteGroup) -> list[tuple[int, ...]]:
    return [m for m in homomorphisms(g, g) if len(set(m)) == g.order]


def monotone_automorphisms(g: FiniteRpoGroup) -> list[tuple[int, ...]]:
    return [m for m in automorphisms(g.group) if all(m[p] in g.cone for p in g.cone)]


def find_isomorphism(g: FiniteRpoGroup, h: FiniteRpoGroup) -> RpoMorphism | None:
    """A group isomorphism carrying the cone of ``g`` onto the cone of ``h``."""
    if g.order != h.order or len(g.cone) != len(h.cone):
        return None
    for m in homomorphisms(g.group, h.group):
        if len(set(m)) == g.order and frozenset(m[p] for p in g.cone) == h.cone:
            return RpoMorphism(g, h, m, "iso")
    return None


def is_rpo_isomorphism(f: RpoMorphism) -> Verdict:
    v = check_morphism(f)
    if not v:
        return v
    if not f.is_injective() or f.dom.order != f.cod.order:
        return fail("bijective", {"map": list(f.map)}, f"{f.name} is not a bijection")
    pushed = frozenset(f.map[p] for p in f.dom.cone)
    missing = sorted(f.cod.cone - pushed)
    if missing:
        a = missing[0]
        return fail("cone-onto", {"a": f.cod.fmt(a)}, f"{f.cod.fmt(a)} positive but has no positive preimage")
    return ok("isomorphism")


def direct_product(g: FiniteRpoGroup, h: FiniteRpoGroup, name: str | None = None) -> FiniteRpoGroup:
    """Product with componentwise law and cone; element (a, b) has index a*|h|+b."""
    n, k = g.order, h.order
    table = [[g.add(a, c) * k + h.add(b, d) for c in range(n) for d in range(k)]
             for a in range(n) for b in range(k)]
    labels = [f"({g.fmt(a)},{h.fmt(b)})" for a in range(n) for b in range(k)]
    cone = [a * k + b for a in sorted(g.cone) for b in sorted(h.cone)]
    nm = name or f"{g.name}x{h.name}"
    return FiniteRpoGroup(FiniteGroup(table, labels, nm), cone, nm)


def sign_of(mapping: Sequence[int]) -> int:
    """Parity of a permutation given in one-line form (0 even, 1 odd)."""
    seen, parity = set(), 0
    for i in range(len(mapping)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = mapping[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity
