from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rpog.internal import ReflexiveGraph
from rpog.symbolic import (EXAMPLE_IDS, GROUP_REGISTRY, build_example, eval_witness, ex1_apex, ex1_cone,
                           ex1_cone_all_odd_multipliers, ex1_cone_odd_multipliers_only, ex3_apex, ex4_apex,
                           fmt, ideal_square, is_normal_mono_symbolic, sampled_validate, z_n, z_triv,
                           zxz_diag_n)
from rpog.verdict import StructuralError, SymbolicDomainError


def elem(*xs):
    return ["elem", list(xs)]


@given(st.integers(min_value=0, max_value=10_000))
def test_z_n_validates_for_any_seed(seed):
    assert sampled_validate(z_n(), seed, 100)


@pytest.mark.parametrize("name", sorted(GROUP_REGISTRY))
@pytest.mark.parametrize("seed", [0, 1, 7])
def test_registry_objects_validate(name, seed):
    assert sampled_validate(GROUP_REGISTRY[name](), seed, 300)


@pytest.mark.parametrize("name", ["Ex1", "Ex2", "Ex3", "Ex4"])
def test_example_apexes_and_graphs_validate(name):
    g = build_example(name)
    assert isinstance(g, ReflexiveGraph)
    assert sampled_validate(g.apex, 0, 300)
    assert sampled_validate(g.base, 0, 300)
    assert g.check(0, 300)


@pytest.mark.parametrize("a,b", [((0, 1), (2, 3)), ((2, 4), (0, 5)), ((3, 2), (1, 4)), ((3, 2), (2, 1)),
                                 ((0, 3), (1, 2)), ((5, 4), (7, 6))])
def test_ex1_cone_closed_on_the_four_parity_cases(a, b):
    g = ex1_apex()
    a, b = tuple(map(F, a)), tuple(map(F, b))
    assert g.in_cone(a) and g.in_cone(b)
    assert g.in_cone(g.add(a, b))


def test_ex1_cone_with_odd_multipliers_only_is_not_closed():
    g = ex1_apex(ex1_cone_odd_multipliers_only, "Ex1_odd_only")
    v = sampled_validate(g)
    assert not v and v.law == "cone-closure"
    assert v.witness == {"p": "(1,1)", "q": "(0,2)"}
    s = g.add((F(1), F(1)), (F(0), F(2)))
    assert fmt(s) == "(1,2)" and not g.in_cone(s)


def test_recorded_odd_witness_lies_in_both_relaxed_cones():
    # (1,2)+(0,3)=(1,6) stays positive under either reading of the dropped restriction
    g = ex1_apex(ex1_cone_all_odd_multipliers, "Ex1_all")
    s = g.add((F(1), F(2)), (F(0), F(3)))
    assert s == (F(1), F(6))
    assert ex1_cone_all_odd_multipliers(s) and ex1_cone(s)
    assert sampled_validate(g)


def test_eval_ex1_witness():
    w = eval_witness(["sub", elem(3, 2), elem(0, 2)], ex1_apex())
    assert w.value == (F(3), F(1)) and not w.in_cone
    assert eval_witness(["neg", elem(0, 2)], ex1_apex()).value == (F(0), F(1, 2))


def test_eval_ex3_witness():
    w = eval_witness(["sub", elem(5, "1/2"), elem(1, "1/2")], ex3_apex())
    assert w.value == (F(5), F(1)) and not w.in_cone
    assert eval_witness(elem(5, "1/2"), ex3_apex()).in_cone


def test_eval_ex4_witnesses():
    g = ex4_apex()
    w = eval_witness(["sub", elem("1/2", "1/2"), elem(1, "1/2")], g)
    assert w.value == (F(1, 2), F(1)) and not w.in_cone
    assert eval_witness(elem(2, "1/2"), g).in_cone is False


def test_identity_minus_identity():
    for g in (z_n(), ex1_apex(), ex3_apex()):
        w = eval_witness(["sub", ["elem", _raw(g.zero)], ["elem", _raw(g.zero)]], g)
        assert w.value == g.zero and w.in_cone


def _raw(v):
    if isinstance(v, tuple):
        return [_raw(x) for x in v]
    return str(v)


def test_zero_in_q_star_is_a_domain_error():
    with pytest.raises(SymbolicDomainError):
        eval_witness(elem(0, 1), ex3_apex())
    with pytest.raises(StructuralError):
        eval_witness(["mul", elem(1, 1)], ex3_apex())


def test_build_example_shapes():
    ex2 = build_example("Ex2")
    assert ex2.apex.name == "Ex2_apex" and ex2.base.name == "Z_Z"
    assert ex2.apex.in_cone((0, -5)) and not ex2.apex.in_cone((-1, 0))
    assert ex2.c((2, 3)) == 5 and ex2.d((2, 3)) == 3
    zt = build_example("Z_triv")
    assert zt.in_cone(0) and not zt.in_cone(1)
    zz = zxz_diag_n()
    assert zz.in_cone((2, 2)) and not zz.in_cone((2, 3))
    with pytest.raises(KeyError):
        build_example("Ex9")
    assert set(EXAMPLE_IDS) >= {"Z_N", "Z_triv", "ZxZ_diagN", "Ex1", "Ex2", "Ex3", "Ex4"}


def test_arithmetic_is_exact():
    g = ex3_apex()
    for a in g.domain(0, 200):
        assert all(isinstance(x, F) for x in a)
        assert g.add(a, g.neg(a)) == g.zero


def test_samplers_are_deterministic_and_include_boundary():
    a, b = ex1_apex().domain(3, 50), ex1_apex().domain(3, 50)
    assert a == b
    assert (F(3), F(2)) in a


def test_ideal_square_and_normal_monos():
    w, v, commutes = ideal_square()
    assert commutes
    assert is_normal_mono_symbolic(w, lambda y: y[1] if y[0] == 0 else None)
    r = is_normal_mono_symbolic(v, lambda y: y)
    assert not r and r.law == "cone-equality" and r.witness == {"a": "1"}
    assert "0 is not Z∩N" in r.detail


def test_trivial_cone_identity_into_itself_is_normal():
    from rpog.symbolic import SymbolicMorphism
    f = SymbolicMorphism(z_triv(), z_triv(), lambda x: x)
    assert is_normal_mono_symbolic(f, lambda y: y)
