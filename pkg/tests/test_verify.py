import itertools
import json

import pytest

from conftest import ALL_GROUPS, atlas, datum
from oracles import closure_by_elements
from reflsub.subsystems import calculus, parabolic_closure
from reflsub.verify import (PASSED, VACUOUS, atlas_invariants, check_corollary, check_theorem,
                            cross_check, non_generating_witness, planted_fault, verify_group)


@pytest.mark.parametrize("group", ALL_GROUPS)
def test_theorem_has_no_violations(group):
    assert check_theorem(atlas(group)) == []


def test_g23_only_non_parabolic_class():
    a = atlas(23)
    (c,) = [c for c in a.classes if not c.parabolic]
    assert [a.classes[e].label for e in c.extensions] == ["H3"]
    assert a.classes[c.extensions[0]].rank == c.rank


def test_planted_fault_is_detected_once():
    bad = planted_fault(atlas(24))
    assert len(check_theorem(bad)) == 1
    assert check_theorem(atlas(24)) == []


@pytest.mark.parametrize("group,count", [(23, 380), (25, 180)])
def test_corollary_exhaustive(group, count):
    res = check_corollary(datum(group))
    assert res["status"] == PASSED
    assert res["tested"] == res["passed"] == count


def test_g23_generating_triples_independently():
    # generation judged by the element-level closure, parabolicity by the
    # fixed-space definition
    d = datum(23)
    calc = calculus(d)
    full = frozenset(range(d.nlines))
    count = 0
    for lines in itertools.combinations(range(d.nlines), 3):
        if closure_by_elements(d, lines) != full:
            continue
        count += 1
        for k in range(4):
            for sub in itertools.combinations(lines, k):
                h = calc.subgroup(calc.close(sub))
                assert parabolic_closure(d, h).lines == h.lines
    assert count == 380


def test_empty_subset_is_parabolic():
    d = datum(23)
    calc = calculus(d)
    h = calc.subgroup(frozenset())
    assert parabolic_closure(d, h).lines == frozenset()


def test_non_generating_witness():
    d = datum(23)
    w = non_generating_witness(d)
    assert w is not None
    calc = calculus(d)
    assert calc.close(w) != frozenset(range(d.nlines))
    bad = [calc.close(s) for k in range(4) for s in itertools.combinations(w, k)
           if calc.closure_lines(calc.close(s)) != calc.close(s)]
    assert bad
    assert calc.subgroup(bad[0]).type_name == "3A1"


@pytest.mark.parametrize("group", (24, 26, 28, 30, 35))
def test_corollary_sampled(group):
    res = check_corollary(datum(group), samples=50, seed=7)
    assert res["status"] == PASSED and res["tested"] == res["passed"] == 50


def test_g31_hypothesis_not_satisfied():
    res = check_corollary(datum(31), samples=50, seed=1)
    assert res["status"] == VACUOUS
    assert res["tested"] == 0 and res["attempts"] >= 20000


def test_g31_report_is_not_a_plain_pass():
    rep = verify_group(31, atlas(31), samples=50, cross_samples=5)
    assert rep.corollary_status == VACUOUS
    assert any("no generating set" in n for n in rep.notes)


def test_samples_zero_skips_corollary():
    rep = verify_group(24, atlas(24), samples=0, cross_samples=2)
    assert rep.ok and rep.corollary_samples == 0


@pytest.mark.parametrize("group", (23, 25, 28, 37))
def test_cross_check(group):
    assert cross_check(datum(group)) == []


def test_cross_check_g25_two_reflections_per_line():
    d = datum(25)
    assert len(d.reflections) == 2 * d.nlines


def test_cross_check_g37_sizes():
    d = datum(37)
    assert (d.chain().order(), len(d.reflections), d.nroots) == (696729600, 120, 240)


def test_cross_check_reports_bad_constants(monkeypatch):
    import reflsub.verify as v
    fake = dict(v.AMBIENT)
    fake[23] = fake[23]._replace(order=121)
    monkeypatch.setattr(v, "AMBIENT", fake)
    assert any("expected" in f for f in cross_check(datum(23), samples=0))


@pytest.mark.parametrize("group", ALL_GROUPS)
def test_atlas_invariants(group):
    assert atlas_invariants(datum(group), atlas(group)) == []


def test_report_json_and_summary():
    rep = verify_group(23, atlas(23), samples=10, seed=3)
    data = json.loads(json.dumps(rep.to_json()))
    assert data["ok"] is True and data["seed"] == 3
    assert data["theorem_violations"] == [] and data["invariant_failures"] == []
    assert data["corollary_samples"] == data["corollary_passed"] == 380
    assert "seed 3" in rep.summary()
