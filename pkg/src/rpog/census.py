"""Census of small rpo groups and the internal structures they carry.

Counts are over isomorphism-class representatives of rpo groups (one per
orbit of cones under group automorphisms) and, for points and graphs, over
all labelled (d, c, e) between two representatives.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .finite import monotone_homomorphisms
from .groups import LIBRARY_MAX_ORDER, rpo_iso_corpus, small_groups
from .internal import ReflexiveGraph, is_groupoid, is_internal_category
from .schreier import SplitPoint, is_schreier
from .verdict import GuardError


@dataclass
class CensusRow:
    order: int
    groups: int = 0
    cones: int = 0
    rpo_classes: int = 0
    preordered: int = 0
    points: int = 0
    schreier: int = 0
    graphs: int = 0
    categories: int = 0
    groupoids: int = 0

    FIELDS = ("order", "groups", "cones", "rpo_classes", "preordered", "points", "schreier", "graphs",
              "categories", "groupoids")

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, f) for f in self.FIELDS)


@dataclass
class Census:
    max_order: int
    rows: list[CensusRow] = field(default_factory=list)

    def lines(self) -> list[str]:
        head = CensusRow.FIELDS
        widths = [max(len(h), 6) for h in head]
        out = ["  ".join(h.rjust(w) for h, w in zip(head, widths))]
        for r in self.rows:
            out.append("  ".join(str(v).rjust(w) for v, w in zip(r.as_tuple(), widths)))
        return out

    def to_json(self) -> dict:
        return {"max_order": self.max_order, "rows": [dict(zip(CensusRow.FIELDS, r.as_tuple())) for r in self.rows]}


def census(max_order: int, guard: int = LIBRARY_MAX_ORDER) -> Census:
    """Points and reflexive graphs are counted by the order of their apex."""
    from .finite import is_preordered

    if max_order < 1:
        raise GuardError("census needs max_order >= 1")
    if max_order > min(guard, LIBRARY_MAX_ORDER):
        raise GuardError(f"census is limited to order {min(guard, LIBRARY_MAX_ORDER)}, got {max_order}")
    rows = {n: CensusRow(n) for n in range(1, max_order + 1)}
    for g in small_groups(max_order):
        rows[g.order].groups += 1
        rows[g.order].cones += len(g.subgroups)
    corpus = rpo_iso_corpus(max_order)
    for x1 in corpus:
        row = rows[x1.order]
        row.rpo_classes += 1
        row.preordered += bool(is_preordered(x1))
        for x0 in corpus:
            if x1.order % x0.order:
                continue
            sections = [e for e in monotone_homomorphisms(x0, x1) if e.is_injective()]
            if not sections:
                continue
            retractions = list(monotone_homomorphisms(x1, x0))
            for e in sections:
                legs = [r for r in retractions if all(r(e(x)) == x for x in x0.elements())]
                for d in legs:
                    row.points += 1
                    row.schreier += bool(is_schreier(SplitPoint(x1, x0, d, e)))
                    for c in legs:
                        gr = ReflexiveGraph(x1, x0, d, c, e)
                        row.graphs += 1
                        if is_internal_category(gr):
                            row.categories += 1
                            row.groupoids += bool(is_groupoid(gr))
    return Census(max_order, [rows[n] for n in sorted(rows)])
