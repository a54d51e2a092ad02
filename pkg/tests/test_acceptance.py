"""The twelve acceptance criteria, each printing one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines appear even
without ``-s``.  Criterion 7 takes about ten minutes on one core, criterion 6 about one.
"""
import itertools
import time

import pytest

from rpog.bundles import run_bundle, s4_recorded_witness
from rpog.cli import main
from rpog.finite import RpoMorphism, find_isomorphism, is_preordered, monotone_homomorphisms, subobject
from rpog.groups import (LIBRARY_MAX_ORDER, alternating_cone_s4, finite_registry, rpo_corpus, rpo_iso_corpus,
                         s4_rpo)
from rpog.internal import (check_epsilon, check_eta, check_eta_naturality, composition_morphisms,
                           effective_relation_cone, eta, graph_morphisms, graph_to_pxmod, is_crossed_iff_category,
                           is_internal_category, kernel_pair_of_coequalizer, make_precrossed, precrossed_classes,
                           precrossed_data, pxmod_to_graph, reflexive_graphs, unique_m)
from rpog.quasivariety import check_axioms, check_sigma_morphism, counit_map, extend_to_pog, from_model, to_model
from rpog.schreier import (ActionMorphism, aut_rpo, check_action_rep, classify_point, is_schreier,
                           pullback_point, s_center, semidirect, split_points)
from rpog.subobjects import (check_lattice_iso, check_modular, huq_commute, is_s_relation, normal_lattice,
                             normalization, relation_of_normal, smith_commute)
from rpog.symbolic import ideal_square, is_normal_mono_symbolic

pytestmark = pytest.mark.acceptance


class Tally:
    """Counts checks and keeps the first failure for the report line."""

    def __init__(self):
        self.checked = 0
        self.failures = []
        self.start = time.perf_counter()

    def check(self, good, what):
        self.checked += 1
        if not good and len(self.failures) < 5:
            self.failures.append(what)

    def report(self, capsys, n, summary):
        status = "FAIL" if self.failures else "PASS"
        secs = time.perf_counter() - self.start
        line = f"criterion {n}: {status} {summary} ({self.checked} checks, {secs:.1f}s)"
        if self.failures:
            line += f"; first failure: {self.failures[0]}"
        with capsys.disabled():
            print("\n" + line)
        assert not self.failures, line


def all_actions(x0, k, aut=None):
    aut = aut or aut_rpo(k)
    for mu in monotone_homomorphisms(x0, aut.rpo):
        yield ActionMorphism(x0, k, [aut.perms[mu(x)] for x in x0.elements()])


def test_criterion_01_axiomatization(capsys):
    t = Tally()
    corpus = rpo_corpus(8)
    for g in corpus:
        m = to_model(g)
        t.check(check_axioms(m), f"{g.name}: axioms")
        t.check(find_isomorphism(g, from_model(m)) is not None, f"{g.name}: G(F(g)) not isomorphic to g")
        fg, mapping = counit_map(m)
        t.check(check_sigma_morphism(fg, m, mapping) and sorted(mapping) == list(range(m.n)),
                f"{g.name}: counit not an isomorphism")
    t.report(capsys, 1, f"axioms and both round trips on {len(corpus)} rpo groups of order <= 8")


def test_criterion_02_preordered_extension(capsys):
    t = Tally()
    corpus = rpo_corpus(8)
    for g in corpus:
        t.check(bool(extend_to_pog(to_model(g)).verdict) == bool(is_preordered(g)), g.name)
    t.check(extend_to_pog(to_model(alternating_cone_s4())).verdict, "(S4,A4) does not extend")
    bad = extend_to_pog(to_model(s4_rpo(["(12)(34)"], "S4_12_34"))).verdict
    t.check(not bad, "(S4,{Id,(12)(34)}) extends")
    w = s4_recorded_witness()
    t.check(w.render("preordered") == "preordered: NO (witness (13)(12)(34)(13)=(32)(14))", w.render("preordered"))
    t.check(run_bundle("S4_counterexample").ok, "S4 bundle mismatch")
    t.report(capsys, 2, f"extend <=> preordered on {len(corpus)} rpo groups; S4 pair verbatim")


def test_criterion_03_lattices(capsys):
    t = Tally()
    corpus = rpo_corpus(12)
    for g in corpus:
        t.check(check_lattice_iso(g), f"{g.name}: lattice iso")
        t.check(check_modular(normal_lattice(g)), f"{g.name}: not modular")
    t.check(normal_lattice(alternating_cone_s4()).size == 4, "(S4,A4) lattice size")
    t.report(capsys, 3, f"lattice iso and modularity on {len(corpus)} rpo groups of order <= 12; (S4,A4) has 4")


def test_criterion_04_ideal_determined_failure(capsys):
    t = Tally()
    w, v, commutes = ideal_square()
    t.check(commutes, "square does not commute")
    t.check(is_normal_mono_symbolic(w, lambda y: y[1] if y[0] == 0 else None), "ker p0 not normal")
    r = is_normal_mono_symbolic(v, lambda y: y)
    t.check(not r and r.law == "cone-equality" and "0 is not Z∩N" in r.detail, r.render("normal mono"))
    t.report(capsys, 4, f"(Z,0) -> (Z,N) is not a normal mono: {r.detail}")


def test_criterion_05_schreier_equivalence(capsys):
    t = Tally()
    corpus = rpo_iso_corpus(8)
    points = 0
    for total in corpus:
        for base in corpus:
            if total.order % base.order:
                continue
            for p in split_points(total, base):
                points += 1
                t.check(bool(is_schreier(p)) == bool(classify_point(p).product), f"{total.name} over {base.name}")
    semis = pullbacks = 0
    small = rpo_iso_corpus(4)
    for x0 in corpus:
        for k in corpus:
            if x0.order * k.order > 16:
                continue
            for mu in all_actions(x0, k):
                p = semidirect(mu)
                semis += 1
                t.check(is_schreier(p), f"semidirect {mu.name} over {x0.name}")
                if k.order > 4:
                    continue
                for y in small:
                    for f in monotone_homomorphisms(y, x0):
                        q = pullback_point(p, f)
                        pullbacks += 1
                        t.check(q.check_split() and is_schreier(q), f"pullback of {p.name} along {f.name}")
    t.report(capsys, 5, f"{points} points, {semis} semidirect products, {pullbacks} pullbacks")


def test_criterion_06_action_representability(capsys):
    t = Tally()
    corpus = rpo_iso_corpus(LIBRARY_MAX_ORDER)
    pairs = [(x, y) for x in corpus for y in corpus if x.order * y.order <= 36]
    classes = 0
    for x, y in pairs:
        v = check_action_rep(x, y, max_product=36)
        classes += v.info.get("classes", 0)
        t.check(v, f"({x.name},{y.name}): {v.detail}")
    t.report(capsys, 6, f"{len(pairs)} pairs with |x||y| <= 36, {classes} extension classes matched")


def test_criterion_07_crossed_module_theorem(capsys):
    t = Tally()
    corpus = rpo_iso_corpus(8)
    modules = crossed = labelled = 0
    for x0 in corpus:
        for k in corpus:
            orbits = 0
            for act, d, size in precrossed_classes(x0, k):
                orbits += size
                px = make_precrossed(x0, k, act, d)
                gr = pxmod_to_graph(px)
                v = is_crossed_iff_category(px, graph=gr)
                modules += 1
                crossed += v.info["peiffer"]
                t.check(v, f"{x0.name} <- {k.name}: {v.detail}")
                fg = graph_to_pxmod(gr)
                t.check(check_epsilon(px, gr=gr, fg=fg), f"{x0.name} <- {k.name}: epsilon")
                t.check(check_eta(gr, px=fg, gfg=pxmod_to_graph(fg)), f"{x0.name} <- {k.name}: eta")
            count = sum(1 for _ in precrossed_data(x0, k))
            labelled += count
            t.check(orbits == count, f"{x0.name} <- {k.name}: orbits cover {orbits} of {count} modules")
    # naturality of η on every graph morphism between graphs of modules over groups of order <= 4
    graphs = []
    for x0 in rpo_iso_corpus(4):
        for k in rpo_iso_corpus(4):
            graphs += [pxmod_to_graph(make_precrossed(x0, k, a, d)) for a, d, _ in precrossed_classes(x0, k)]
    pxs = [graph_to_pxmod(g) for g in graphs]
    etas = [eta(g, px=px) for g, px in zip(graphs, pxs)]
    morphisms = 0
    for (i, g), (j, h) in itertools.product(enumerate(graphs), repeat=2):
        for f in graph_morphisms(g, h):
            morphisms += 1
            t.check(check_eta_naturality(f, pxs[i], pxs[j], etas[i], etas[j]), f"naturality {g.name} -> {h.name}")
    t.report(capsys, 7, f"{modules} module classes covering {labelled} modules ({crossed} crossed), "
                        f"{morphisms} graph morphisms natural")


def test_criterion_08_uniqueness_of_m(capsys):
    t = Tally()
    corpus = rpo_iso_corpus(8)
    graphs = cats = 0
    for x1 in corpus:
        for x0 in corpus:
            if x1.order % x0.order:
                continue
            for gr in reflexive_graphs(x1, x0):
                graphs += 1
                found = composition_morphisms(gr)
                t.check(len(found) <= 1, f"{gr.name}: {len(found)} compositions")
                if is_internal_category(gr):
                    cats += 1
                    m = unique_m(gr)
                    t.check(len(found) == 1 and all(v == m(*p) for p, v in found[0].items()),
                            f"{gr.name}: brute force disagrees with unique_m")
                else:
                    t.check(not found, f"{gr.name}: composition found for a non-category")
    t.report(capsys, 8, f"{graphs} graphs with apex <= 8, {cats} categories, each with exactly unique_m")


def test_criterion_09_effective_relations(capsys):
    t = Tally()
    corpus = rpo_corpus(12)
    instances = 0
    for x0 in corpus:
        for n in x0.group.normal_subgroups:
            sub, incl = subobject(x0, sorted(n), cone=[v for v in sorted(n) if v in x0.cone])
            d = RpoMorphism(sub, x0, incl.map, "∂")
            instances += 1
            t.check(effective_relation_cone(d) == kernel_pair_of_coequalizer(d), f"{x0.name} / {sorted(n)}")
    t.report(capsys, 9, f"formula cone = kernel pair of coequalizer on {instances} instances, carriers <= 12")


def test_criterion_10_worked_examples(capsys):
    t = Tally()
    expected = {
        "Ex1": ["schreier: NO (witness (3,2)-(0,2)=(3,1) not in cone)", "groupoid: NO"],
        "Ex2": ["schreier: YES", "category: YES", "groupoid: NO (witness σ(1,0)=(-1,1) not in cone)"],
        "Ex3": ["schreier: NO (witness (5,1/2)-(1,1/2)=(5,1) not in cone)", "groupoid: YES"],
        "Ex4": ["schreier: NO (witness (1/2,1/2)-(1,1/2)=(1/2,1) not in cone)",
                "groupoid: NO (witness σ(1/2,1/2)=(2,1/2) not in cone)"],
    }
    for ex, lines in expected.items():
        code = main(["example", ex])
        out = capsys.readouterr().out
        t.check(code == 0, f"{ex}: exit {code}")
        for want in lines:
            t.check(any(line.startswith(want) for line in out.splitlines()), f"{ex}: missing {want!r}")
    t.report(capsys, 10, "Ex1-Ex4 reproduce through the example command")


def test_criterion_11_smith_is_huq(capsys):
    t = Tally()
    corpus = rpo_iso_corpus(12)
    pairs = 0
    for g in corpus:
        rels = [r for r in (relation_of_normal(g, n) for n in g.group.normal_subgroups) if is_s_relation(r)]
        for r, s in itertools.product(rels, repeat=2):
            pairs += 1
            t.check(bool(smith_commute(r, s)) == bool(huq_commute(g, normalization(r), normalization(s))),
                    f"{g.name}: {sorted(r.normal)} vs {sorted(s.normal)}")
    t.report(capsys, 11, f"smith <=> huq on {pairs} pairs of Schreier relations, order <= 12")


def test_criterion_12_s_center(capsys):
    t = Tally()
    t.check(run_bundle("s_center").ok, "bundle mismatch")
    abelian = 0
    for g in rpo_corpus(12):
        r = s_center(g)
        abelian += g.group.is_abelian
        t.check(r.whole == g.group.is_abelian, f"{g.name}: whole={r.whole}")
    r = s_center(finite_registry("S3/triv"))
    t.check(r.verdict and r.is_zero, "(S3,{e}) center is not zero")
    t.report(capsys, 12, f"(Z,N) refused, {abelian} abelian objects whole, (S3,{{e}}) zero")
