import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rpog.finite import (FiniteGroup, FiniteRpoGroup, RpoMorphism, automorphisms, check_morphism,
                         direct_product, enumerate_cones, find_isomorphism, homomorphisms,
                         identity_morphism, is_normal_mono, is_preordered, kernel, monotone_automorphisms,
                         monotone_homomorphisms, sign_of, subobject, validate, zero_object)
from rpog.groups import (alternating_cone_s4, cyclic, finite_registry, product_group, rpo_iso_corpus, s4,
                         s4_rpo, small_groups)
from rpog.verdict import PreconditionError, StructuralError

LIBRARY = small_groups()


def idx(g, label):
    return g.labels.index(label)


def brute_force_submonoids(g):
    """Every subset containing 0 and closed under the table."""
    n = g.order
    out = []
    for mask in range(1 << (n - 1)):
        s = {0} | {i + 1 for i in range(n - 1) if mask >> i & 1}
        if all(g.rows[a][b] in s for a in s for b in s):
            out.append(frozenset(s))
    return out


# -- validate --------------------------------------------------------------------

def test_zero_object_validates():
    assert validate(zero_object())


def test_s4_with_a4_cone_validates():
    g = alternating_cone_s4()
    assert g.order == 24 and len(g.cone) == 12
    assert validate(g)


def test_mutated_s4_table_fails_associativity_with_real_witness():
    t = s4().table.copy()
    t[1, 2], t[1, 3] = t[1, 3], t[1, 2]          # swap one row entry, rows stay permutations
    g = FiniteGroup(t, s4().labels, "S4'")
    v = validate(FiniteRpoGroup(g, [0]))
    assert not v and v.law == "associativity"
    a, b, c = (idx(g, v.witness[k]) for k in "abc")
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_ragged_or_out_of_range_tables_are_structural_errors():
    with pytest.raises(StructuralError):
        FiniteGroup([[0, 1], [1]])
    with pytest.raises(StructuralError):
        FiniteGroup([[0, 1], [1, 2]])
    with pytest.raises(StructuralError):
        FiniteGroup(np.zeros((0, 0), dtype=int))
    with pytest.raises(StructuralError):
        FiniteRpoGroup(cyclic(2), [0, 5])


def test_cone_without_identity_or_closure_fails():
    c3 = cyclic(3)
    v = validate(FiniteRpoGroup(c3, [1]))
    assert not v and v.law == "cone-identity"
    v = validate(FiniteRpoGroup(c3, [0, 1]))
    assert not v and v.law == "cone-closure"


# -- is_preordered ---------------------------------------------------------------

def test_a4_cone_is_preordered():
    assert is_preordered(alternating_cone_s4())


def test_cone_generated_by_double_transposition_is_not_preordered():
    g = s4_rpo(["(12)(34)"], "S4_12_34")
    v = is_preordered(g)
    assert not v
    # first violation in index order; the witness re-evaluates
    x, p, r = (idx(g.group, v.witness[k]) for k in ("x", "p", "x+p-x"))
    assert g.group.conj(x, p) == r and r not in g.cone and p in g.cone
    assert v.witness == {"x": "(23)", "p": "(12)(34)", "x+p-x": "(13)(24)"}


def test_recorded_s4_witness_recomputes():
    g = s4_rpo(["(12)(34)"], "S4_12_34")
    x, p = idx(g.group, "(13)"), idx(g.group, "(12)(34)")
    r = g.group.conj(x, p)
    assert g.fmt(r) == "(14)(23)"   # written (32)(14) in cycle notation with another start point
    assert r not in g.cone


@given(st.sampled_from(LIBRARY))
def test_trivial_cone_is_preordered(grp):
    assert is_preordered(FiniteRpoGroup(grp, [0]))


@given(st.sampled_from(LIBRARY), st.data())
def test_preordered_iff_cone_is_normal(grp, data):
    cone = data.draw(st.sampled_from(enumerate_cones(grp)))
    assert bool(is_preordered(FiniteRpoGroup(grp, cone))) == grp.is_normal(cone)


# -- morphisms -------------------------------------------------------------------

def test_identity_on_s4_a4_is_a_morphism():
    assert check_morphism(identity_morphism(alternating_cone_s4()))


def test_sign_map_is_monotone():
    g = alternating_cone_s4()
    c2 = FiniteRpoGroup(cyclic(2), [0], "C2")
    perms = sorted(itertools.permutations(range(4)))
    sign = RpoMorphism(g, c2, [sign_of(p) for p in perms], "sign")
    assert check_morphism(sign)


def test_transposition_inclusion_is_not_monotone_into_a4():
    g = alternating_cone_s4()
    t = idx(g.group, "(12)")
    sub, incl = subobject(FiniteRpoGroup(g.group, range(24)), [0, t], cone=[0, t])
    f = RpoMorphism(sub, g, incl.map, "incl")
    v = check_morphism(f)
    assert not v and v.law == "monotone" and v.witness == {"p": "(12)"}


def test_wrong_length_map_is_structural():
    with pytest.raises(StructuralError):
        RpoMorphism(zero_object(), zero_object(), [0, 0])


# -- kernels and normal monos ------------------------------------------------------

def test_kernel_of_sign_is_a4_with_full_cone():
    g = alternating_cone_s4()
    c2 = FiniteRpoGroup(cyclic(2), [0], "C2")
    perms = sorted(itertools.permutations(range(4)))
    k, incl = kernel(RpoMorphism(g, c2, [sign_of(p) for p in perms], "sign"))
    assert k.order == 12 and len(k.cone) == 12
    assert set(incl.map) == set(g.cone)


def test_kernel_of_identity_is_zero_and_of_zero_map_is_whole():
    g = alternating_cone_s4()
    k, _ = kernel(identity_morphism(g))
    assert k.order == 1
    z = zero_object()
    k, incl = kernel(RpoMorphism(g, z, [0] * 24, "0"))
    assert k.order == 24 and set(incl.map[c] for c in k.cone) == set(g.cone)


def test_trivial_cone_into_full_cone_is_not_normal_mono():
    c2 = cyclic(2)
    f = RpoMorphism(FiniteRpoGroup(c2, [0]), FiniteRpoGroup(c2, [0, 1]), [0, 1], "id")
    v = is_normal_mono(f)
    assert not v and v.law == "cone-equality" and v.witness == {"a": "1"}


def test_transposition_subgroup_is_not_normal_in_s4():
    g = alternating_cone_s4()
    sub, incl = subobject(FiniteRpoGroup(g.group, range(24)), [0, idx(g.group, "(12)")], cone=[0])
    v = is_normal_mono(RpoMorphism(sub, g, incl.map, "incl"))
    assert not v and v.law == "normal-image"


def test_non_injective_map_is_a_precondition_error():
    g = FiniteRpoGroup(cyclic(2), [0])
    with pytest.raises(PreconditionError):
        is_normal_mono(RpoMorphism(g, zero_object(), [0, 0]))


TARGETS = rpo_iso_corpus(4)
SOURCES = rpo_iso_corpus(4)


@pytest.mark.parametrize("g", rpo_iso_corpus(12), ids=lambda g: g.name)
def test_kernels_are_normal_monos_and_universal(g):
    for h in TARGETS:
        for f in monotone_homomorphisms(g, h):
            k, incl = kernel(f)
            assert all(f(incl(a)) == 0 for a in k.elements())
            assert is_normal_mono(incl)
            for t in SOURCES:
                for u in monotone_homomorphisms(t, g):
                    if any(f(u(a)) for a in t.elements()):
                        continue
                    lifts = [h_ for h_ in monotone_homomorphisms(t, k)
                             if all(incl(h_(a)) == u(a) for a in t.elements())]
                    assert len(lifts) == 1


# -- enumeration -----------------------------------------------------------------

def test_cone_counts():
    assert [len(c) for c in enumerate_cones(cyclic(2))] == [1, 2]
    assert enumerate_cones(cyclic(1)) == [frozenset({0})]
    d3 = next(g for g in LIBRARY if g.name == "D3")
    assert len(enumerate_cones(d3)) == 6


@pytest.mark.parametrize("grp", [g for g in LIBRARY if g.order <= 8], ids=lambda g: g.name)
def test_cones_match_brute_force_submonoids(grp):
    assert sorted(map(sorted, enumerate_cones(grp))) == sorted(map(sorted, brute_force_submonoids(grp)))


@pytest.mark.parametrize("grp", [g for g in LIBRARY if g.order <= 12], ids=lambda g: g.name)
def test_finite_cones_are_subgroups(grp):
    for c in enumerate_cones(grp):
        assert all(grp.neg(a) in c for a in c)


def test_automorphism_counts():
    assert len(automorphisms(cyclic(3))) == 2
    assert automorphisms(cyclic(1)) == [(0,)]
    v4 = product_group(cyclic(2), cyclic(2), "V4")
    assert len(automorphisms(v4)) == 6
    mono = monotone_automorphisms(FiniteRpoGroup(v4, [0, 1]))
    assert len(mono) == 2 and all(a[1] == 1 for a in mono)


@given(st.sampled_from([g for g in LIBRARY if g.order <= 8]), st.sampled_from([g for g in LIBRARY if g.order <= 6]))
def test_homomorphisms_are_homomorphisms(g, h):
    for m in homomorphisms(g, h):
        assert all(m[g.rows[a][b]] == h.rows[m[a]][m[b]] for a in range(g.order) for b in range(g.order))


def test_homomorphism_count_matches_brute_force_for_small_pairs():
    c4, v4 = cyclic(4), product_group(cyclic(2), cyclic(2), "V4")
    for g, h in [(c4, v4), (v4, c4), (c4, c4), (v4, v4)]:
        brute = sum(1 for m in itertools.product(range(h.order), repeat=g.order)
                    if all(m[g.rows[a][b]] == h.rows[m[a]][m[b]] for a in range(g.order) for b in range(g.order)))
        assert brute == len(list(homomorphisms(g, h)))


@given(st.sampled_from([g for g in LIBRARY if g.order <= 8]), st.sampled_from([g for g in LIBRARY if g.order <= 6]),
       st.data())
def test_fixed_values_filter_the_full_search(g, h, data):
    everything = list(homomorphisms(g, h))
    pick = data.draw(st.sampled_from(everything))
    keys = data.draw(st.lists(st.sampled_from(range(g.order)), max_size=3, unique=True))
    fixed = {a: pick[a] for a in keys}
    if keys and data.draw(st.booleans()):
        fixed[keys[0]] = data.draw(st.sampled_from(range(h.order)))
    want = [m for m in everything if all(m[a] == b for a, b in fixed.items())]
    assert sorted(homomorphisms(g, h, fixed)) == sorted(want)


def test_isomorphism_search_respects_cones():
    v4 = product_group(cyclic(2), cyclic(2), "V4")
    a, b = FiniteRpoGroup(v4, [0, 1]), FiniteRpoGroup(v4, [0, 2])
    assert find_isomorphism(a, b) is not None
    assert find_isomorphism(a, FiniteRpoGroup(v4, [0])) is None
    assert find_isomorphism(FiniteRpoGroup(cyclic(4), [0]), FiniteRpoGroup(v4, [0])) is None


def test_direct_product_has_product_cone():
    a = finite_registry("C2/full")
    b = finite_registry("C3/triv")
    p = direct_product(a, b)
    assert p.order == 6 and validate(p)
    assert p.cone == {x * 3 for x in range(2)}


def test_library_has_every_group_up_to_order_15():
    # number of groups of each order 1..15, up to isomorphism
    counts = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]
    assert [sum(1 for g in LIBRARY if g.order == n) for n in range(1, 16)] == counts
    for a, b in itertools.combinations(LIBRARY, 2):
        if a.order == b.order:
            assert find_isomorphism(FiniteRpoGroup(a, [0]), FiniteRpoGroup(b, [0])) is None
