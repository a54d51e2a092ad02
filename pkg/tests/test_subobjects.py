import itertools

import pytest
from hypothesis import given, strategies as st

from rpog.finite import FiniteRpoGroup, direct_product, kernel, monotone_homomorphisms, zero_object
from rpog.groups import alternating_cone_s4, cyclic, finite_registry, product_group, rpo_corpus, rpo_iso_corpus
from rpog.subobjects import (NormalSubobject, check_lattice_iso, check_modular, discrete, eff_rel_of,
                             huq_commute, indiscrete, is_s_relation, lattice_from_order, normal_lattice,
                             normalization, pentagon, permutes, quotient, rel_compose, relation_from_partition,
                             relation_of_normal, smith_commute)
from rpog.verdict import PreconditionError, StructuralError

CORPUS8 = rpo_corpus(8)


def relations(g):
    return [relation_of_normal(g, n) for n in g.group.normal_subgroups]


# -- lattices ----------------------------------------------------------------------

def test_s4_a4_lattice():
    lat = normal_lattice(alternating_cone_s4())
    assert lat.size == 4
    assert [len(o.subgroup) for o in lat.elements] == [1, 4, 12, 24]
    assert [len(o.cone) for o in lat.elements] == [1, 4, 12, 12]
    v = check_modular(lat)
    assert v and v.render("modular") == "modular: YES (4-element lattice)"
    assert lat.check_laws()


def test_small_lattices():
    assert normal_lattice(zero_object()).size == 1
    assert check_modular(normal_lattice(zero_object()))
    v4 = FiniteRpoGroup(product_group(cyclic(2), cyclic(2), "V4"), range(4))
    assert normal_lattice(v4).size == 5


def test_pentagon_is_not_modular():
    lat = pentagon()
    assert lat.check_laws()
    v = check_modular(lat)
    assert not v
    L = lat.labels
    a, b, c = (L.index(v.witness[k]) for k in "abc")
    J, M = lat.join, lat.meet
    assert J[M[a, b], M[c, b]] != M[J[M[a, b], c], b]
    assert v.witness == {"a": "a", "b": "b", "c": "c"}


def test_diamond_is_modular():
    labels = ["0", "x", "y", "z", "1"]
    le = [[a == b or a == "0" or b == "1" for b in labels] for a in labels]
    assert check_modular(lattice_from_order(labels, le))


def test_non_lattice_order_is_refused():
    labels = ["a", "b"]
    with pytest.raises(PreconditionError):
        lattice_from_order(labels, [[True, False], [False, True]])


@pytest.mark.parametrize("g", [alternating_cone_s4(), zero_object()] + CORPUS8, ids=lambda g: g.name)
def test_lattice_iso_and_modularity(g):
    assert check_lattice_iso(g)
    lat = normal_lattice(g)
    assert lat.check_laws() and check_modular(lat)


@pytest.mark.parametrize("g", CORPUS8[::5], ids=lambda g: g.name)
def test_modularity_by_naive_loops(g):
    lat = normal_lattice(g)
    J, M, n = lat.join, lat.meet, lat.size
    assert all(J[M[a, b], M[c, b]] == M[J[M[a, b], c], b] for a in range(n) for b in range(n) for c in range(n))


def test_quotient_has_image_cone():
    g = finite_registry("C4/full")
    q = quotient(g, frozenset({0, 2}))
    assert q.cod.order == 2 and q.cod.cone == {0, 1}


# -- relations ----------------------------------------------------------------------

def test_partition_must_be_cosets():
    g = finite_registry("S3/full")
    with pytest.raises(StructuralError):
        relation_from_partition(g, [[0, 1]])
    with pytest.raises(PreconditionError):
        relation_from_partition(g, [[0, 1], [2, 3], [4, 5]])


@pytest.mark.parametrize("g", CORPUS8[::3], ids=lambda g: g.name)
def test_composition_laws(g):
    rels = relations(g)
    d = discrete(g)
    for r in rels:
        assert rel_compose(r, r) == (r.pairs, r.cone_pairs)
        assert rel_compose(d, r) == (r.pairs, r.cone_pairs)


def test_normalizations():
    g = finite_registry("S3/full")
    z = normalization(discrete(g))
    assert z.subgroup == {0} and z.cone == {0}
    whole = normalization(indiscrete(g))
    assert whole.subgroup == set(g.elements()) and whole.cone == g.cone


@pytest.mark.parametrize("g", rpo_iso_corpus(8), ids=lambda g: g.name)
def test_normalization_of_kernel_pair_is_kernel(g):
    for h in rpo_iso_corpus(4):
        for f in monotone_homomorphisms(g, h):
            n = normalization(eff_rel_of(f))
            k, incl = kernel(f)
            assert n.subgroup == frozenset(incl.map)
            assert n.cone == frozenset(incl(c) for c in k.cone)


def test_cone_pairs_are_forced():
    g = FiniteRpoGroup(cyclic(4), [0, 2])
    r = relation_of_normal(g, [0, 2])
    assert r.cone_pairs == {(a, b) for a in (0, 2) for b in (0, 2)}


@pytest.mark.parametrize("g", rpo_corpus(12), ids=lambda g: g.name)
def test_effective_relations_permute_up_to_order_12(g):
    # exhaustive search for a cone-pair permutability failure finds none
    rels = relations(g)
    for r, s in itertools.combinations_with_replacement(rels, 2):
        assert permutes(r, s)


# -- Huq and Smith -------------------------------------------------------------------

def test_center_commutes_with_itself():
    g = finite_registry("D4/full")
    z = NormalSubobject(g, g.group.center)
    assert huq_commute(g, z, z)


def test_two_reflections_do_not_commute():
    g = finite_registry("S3/full")
    grp = g.group
    invols = [a for a in g.elements() if a and grp.add(a, a) == 0]
    x, y = (frozenset({0, a}) for a in invols[:2])
    v = huq_commute(g, (x, frozenset({0})), (y, frozenset({0})))
    assert not v
    a, b = (grp.labels.index(v.witness[k]) for k in "ab")
    assert grp.add(a, b) != grp.add(b, a)


def test_huq_cone_precondition():
    g = FiniteRpoGroup(cyclic(2), [0])
    with pytest.raises(PreconditionError):
        huq_commute(g, (frozenset({0, 1}), frozenset({0, 1})), (frozenset({0}), frozenset({0})))


def test_smith_on_discrete_relations():
    g = finite_registry("S3/full")
    assert smith_commute(discrete(g), discrete(g))


def test_smith_for_product_projections():
    a, b = finite_registry("S3/full"), FiniteRpoGroup(cyclic(2), [0])
    p = direct_product(a, b)
    n1 = frozenset(x * 2 for x in range(6))        # kernel of the projection to C2
    n2 = frozenset(range(2))                       # kernel of the projection to S3
    assert smith_commute(relation_of_normal(p, n1), relation_of_normal(p, n2))


def test_smith_fails_on_indiscrete_s3():
    g = finite_registry("S3/full")
    r = indiscrete(g)
    v = smith_commute(r, r)
    assert not v and v.law == "smith"
    assert not huq_commute(g, normalization(r), normalization(r))


def test_relations_on_finite_cones_are_s_relations():
    for g in CORPUS8[::4]:
        for r in relations(g):
            assert is_s_relation(r)


@given(st.sampled_from([g for g in CORPUS8 if g.order <= 8]), st.data())
def test_smith_iff_huq(g, data):
    rels = relations(g)
    r = data.draw(st.sampled_from(rels))
    s = data.draw(st.sampled_from(rels))
    assert bool(smith_commute(r, s)) == bool(huq_commute(g, normalization(r), normalization(s)))
