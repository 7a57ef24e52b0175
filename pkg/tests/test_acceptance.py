"""Acceptance criteria 1-9, one test each; results are summarised at the end of the run."""
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

from conftest import ALL_GROUPS, LARGE_GROUPS, MEDIUM_GROUPS, SMALL_GROUPS, atlas, datum, record
from conftest import reference_tables
from oracles import brute_force_atlas, group_elements
from reflsub.constants import AMBIENT, COINCIDENCES, TYPE_TABLE, TYPES_BY_NAME, lookup
from reflsub.cyclo import CycNum
from reflsub.permgrp import bsgs, identity, mul
from reflsub.subsystems import calculus
from reflsub.tables import drop_bold_marks, inconsistent_bold_marks, match_tables, parse_grid
from reflsub.verify import EXHAUSTIVE_GROUPS, PASSED, VACUOUS, check_corollary, check_theorem

SAMPLE = """\
  P | A1 | [ A1A1, A2, D2(5) ]
  P | A1A1 | [ H3, A1A1A1 ]
  P | A2 | [ H3 ]
  P | D2(5) | [ H3 ]
  P | H3 | []
  N | A1A1A1 | [ H3 ]
"""

# bold marks on classes the same reference table marks non-parabolic
KNOWN_SLIPS = {28: [("3A1.1", "A1+B2.2"), ("3A1.4", "A1+B2.1")], 37: [("3A1+D4", "A1+D6")]}


def cli(*argv):
    """Run the command line in a fresh interpreter; return (code, stdout, seconds)."""
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "reflsub", *argv],
                          capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout, time.perf_counter() - t0


def compare(group, grid_text):
    """Digraph match against the reference table; returns (ok, detail)."""
    computed = parse_grid(grid_text)
    reference = reference_tables()[group]
    raw = match_tables(computed, reference)
    if raw.ok:
        return True, "exact"
    slips = inconsistent_bold_marks(reference)
    if slips != KNOWN_SLIPS.get(group, []):
        return False, f"{len(raw.differences)} differences: {raw.differences[:3]}"
    fixed = match_tables(computed, drop_bold_marks(reference, slips))
    detail = (f"exact after dropping {len(slips)} self-inconsistent bold marks "
              f"(raw differences: {'; '.join(raw.differences)})")
    return fixed.ok, detail if fixed.ok else f"differences: {fixed.differences[:3]}"


def table_criterion(criterion, groups, limit, fast=()):
    results = []
    for g in groups:
        code, out, secs = cli("table", "-g", str(g))
        ok, detail = compare(g, out) if code == 0 else (False, f"exit {code}")
        bound = 1.0 if g in fast else limit
        ok = ok and secs < bound
        results.append((g, ok, f"G{g} {secs:.1f}s {detail}"))
    ok = all(r[1] for r in results)
    record(criterion, ok, "; ".join(r[2] for r in results))
    return results


def test_criterion_1_sample_reproduction():
    code, out, secs = cli("enumerate", "-g", "23", "--format", "showtable")
    expected = "".join(line[2:] + "\n" for line in SAMPLE.splitlines())
    ok = code == 0 and out == expected and secs < 1.0
    record(1, ok, f"byte-identical={out == expected}, {secs:.2f}s")
    assert ok


def test_criterion_2_small_groups():
    results = table_criterion(2, SMALL_GROUPS, 60.0, fast=(23, 25))
    assert all(ok for _, ok, _ in results), results


def test_criterion_3_medium_groups():
    results = table_criterion(3, MEDIUM_GROUPS, 600.0)
    assert all(ok for _, ok, _ in results), results


def test_criterion_4_large_groups(tmp_path):
    details = []
    ok = True
    for g in LARGE_GROUPS:
        cache = str(tmp_path / f"G{g}.json")
        code, out, secs = cli("table", "-g", str(g), "--cache", cache)
        match_ok, detail = compare(g, out) if code == 0 else (False, f"exit {code}")
        code2, out2, reload_secs = cli("table", "-g", str(g), "--cache", cache)
        reload_ok = code2 == 0 and out2 == out and reload_secs < 60.0
        ok = ok and match_ok and reload_ok
        details.append(f"G{g} {secs:.1f}s, reload {reload_secs:.1f}s, {detail}")
    record(4, ok, "; ".join(details))
    assert ok, details


def test_criterion_5_theorem():
    violations = {g: check_theorem(atlas(g)) for g in ALL_GROUPS}
    bad = {g: v for g, v in violations.items() if v}
    record(5, not bad, f"{len(ALL_GROUPS)} atlases, violations: {bad or 0}")
    assert not bad


def test_criterion_6_corollary():
    details = []
    ok = True
    for g in ALL_GROUPS:
        res = check_corollary(datum(g), samples=50, seed=1)
        if g == 31:
            good = res["status"] == VACUOUS
        elif g in EXHAUSTIVE_GROUPS:
            good = res["status"] == PASSED and res["tested"] == res["passed"] > 0
        else:
            good = res["status"] == PASSED and res["tested"] == res["passed"] >= 50
        ok = ok and good
        details.append(f"G{g} {res['status'].split(' (')[0]} {res['passed']}/{res['tested']}")
    record(6, ok, ", ".join(details))
    assert ok, details


def test_criterion_7_oracle_equivalence():
    details = []
    ok = True
    for g in (23, 25):
        d = datum(g)
        calc = calculus(d)
        classes, edges, parabolic = brute_force_atlas(d, calc)
        a = atlas(g)
        where = {}
        for i, orbit in enumerate(classes):
            for s in orbit:
                where[s] = i
        index = [where[c.rep.lines] for c in a.classes]
        same_partition = sorted(index) == list(range(len(classes)))
        computed_edges = {(index[c.id], index[e]) for c in a.classes for e in c.extensions}
        flags = all(parabolic[index[c.id]] == c.parabolic for c in a.classes)
        # orbit sizes agree with |W| / |N|
        sizes = all(len(classes[index[c.id]]) * calc.normalizer(c.rep.lines).order()
                    == d.group_order() for c in a.classes)
        good = same_partition and computed_edges == edges and flags and sizes
        ok = ok and good
        details.append(f"G{g}: {len(classes)} classes, {len(edges)} edges, match={good}")
    record(7, ok, "; ".join(details))
    assert ok, details


def _random_cyc(rng, n):
    coeffs = {rng.randrange(n): Fraction(rng.randint(-5, 5), rng.randint(1, 7))
              for _ in range(rng.randint(0, 4))}
    return CycNum.from_powers(n, coeffs)


def test_criterion_8_property_suites():
    rng = random.Random(8)
    counts = {}
    one, zero = CycNum.rational(1), CycNum.rational(0)

    # cyclotomic field axioms
    for _ in range(1000):
        n = rng.choice((3, 4, 5, 7, 12, 15))
        a, b, c = (_random_cyc(rng, n) for _ in range(3))
        assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c and a * b == b * a
        assert a - a == zero
        if not a.is_zero():
            assert a * a.inverse() == one
    counts["field axioms"] = 1000

    # BSGS order and membership soundness
    cases = 0
    for g in ALL_GROUPS:
        d = datum(g)
        assert bsgs(d.generator_perms).order() == d.group_order() == d.chain().order()
        cases += 1
    chain = datum(28).chain()
    for _ in range(1000):
        w = identity(datum(28).nroots)
        for _ in range(rng.randint(1, 8)):
            w = mul(rng.choice(chain.strong_generators), w)
        assert chain.contains(w)
        p = list(range(len(w)))
        rng.shuffle(p)
        assert not chain.contains(tuple(p))
        cases += 1
    counts["BSGS"] = cases

    # orbit-stabiliser identities
    cases = 0
    for g in (23, 24, 25, 26):
        d = datum(g)
        calc = calculus(d)
        elements = group_elements([d.induced_line_perm(p) for p in d.generator_perms])
        for _ in range(250):
            h = calc.close(rng.sample(range(d.nlines), rng.randint(1, d.rank)))
            orbit = {frozenset(x[i] for i in h) for x in elements}
            assert len(orbit) * calc.normalizer(h).order() == d.group_order()
            cases += 1
    counts["orbit-stabiliser"] = cases

    # parabolic closure idempotence and rank preservation; component consistency
    groups = [g for g in ALL_GROUPS if g not in LARGE_GROUPS]
    for _ in range(1000):
        d = datum(rng.choice(groups))
        calc = calculus(d)
        h = calc.close(rng.sample(range(d.nlines), rng.randint(0, d.rank)))
        cl = calc.closure_lines(h)
        assert h <= cl and calc.closure_lines(cl) == cl and calc.rank(cl) == calc.rank(h)
        if h:
            parts = calc.components(h)
            assert frozenset().union(*parts) == h
            assert sum(calc.rank(p) for p in parts) == calc.rank(h)
            assert math.prod(calc.order(p) for p in parts) == calc.order(h)
            names = calc.component_types(h)
            assert sum(TYPES_BY_NAME[t].rank for t in names) == calc.rank(h)
    counts["parabolic closure"] = counts["components"] = 1000

    # constants table injectivity
    names = sorted(TYPES_BY_NAME)
    assert len({(i.order, i.lines) for i in TYPE_TABLE.values()}) == len(TYPE_TABLE)
    for _ in range(1000):
        a, b = rng.choice(names), rng.choice(names)
        ia, ib = TYPES_BY_NAME[a], TYPES_BY_NAME[b]
        if a != b and not {a, b} & set(COINCIDENCES):
            assert (ia.order, ia.lines) != (ib.order, ib.lines)
        if a not in COINCIDENCES:
            assert lookup(ia.order, ia.lines) == a
    counts["constants"] = 1000

    ok = all(v >= 1000 for v in counts.values())
    record(8, ok, ", ".join(f"{k} {v}" for k, v in counts.items()))
    assert ok


def test_criterion_9_encoding_validation():
    bad = []
    for g in ALL_GROUPS:
        d = datum(g)
        info = AMBIENT[g]
        got = (bsgs(d.generator_perms).order(), len(d.reflections), d.nlines)
        if got != (info.order, info.reflections, info.lines):
            bad.append(f"G{g}: {got}")
    record(9, not bad, f"{len(ALL_GROUPS)} groups checked" + (f", mismatches {bad}" if bad else ""))
    assert not bad


if __name__ == "__main__":
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", "-q", __file__]))
