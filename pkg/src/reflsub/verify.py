"""Mechanical checks of the extension theorem, its corollary and the encodings."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import asdict, dataclass, field

from .constants import AMBIENT, TYPES_BY_NAME
from .cyclo import leading_minors
from .rootdata import RootDatum, build_root_datum
from .subsystems import ClassAtlas, calculus

DEFAULT_SAMPLES = 50
DEFAULT_SEED = 1
EXHAUSTIVE_GROUPS = (23, 25)

PASSED = "passed"
FAILED = "failed"
VACUOUS = "hypothesis not satisfied (vacuously passed)"
SKIPPED = "skipped"


@dataclass
class VerificationReport:
    group: int
    name: str
    seed: int
    theorem_violations: list = field(default_factory=list)
    corollary_status: str = SKIPPED
    corollary_samples: int = 0
    corollary_passed: int = 0
    corollary_attempts: int = 0
    invariant_failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (not self.theorem_violations and not self.invariant_failures
                and self.corollary_samples == self.corollary_passed
                and self.corollary_status != FAILED)

    def to_json(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out

    def summary(self) -> str:
        head = f"G{self.group} {self.name}: {'ok' if self.ok else 'FAILED'}"
        body = [f"  theorem violations: {len(self.theorem_violations)}",
                f"  corollary: {self.corollary_status} "
                f"({self.corollary_passed}/{self.corollary_samples} generating sets, "
                f"{self.corollary_attempts} drawn, seed {self.seed})",
                f"  invariant failures: {len(self.invariant_failures)}"]
        body += [f"  - {x}" for x in self.theorem_violations + self.invariant_failures]
        body += [f"  note: {x}" for x in self.notes]
        return "\n".join([head] + body)


# ---------------------------------------------------------------------------
# theorem

def check_theorem(atlas: ClassAtlas) -> list[str]:
    """Edges H -> K with K parabolic of larger rank but H not parabolic."""
    out = []
    for h in atlas.classes:
        for e in h.extensions:
            k = atlas.classes[e]
            if k.parabolic and k.rank > h.rank and not h.parabolic:
                out.append(f"{h.label} -> {k.label}: parabolic extension of higher rank "
                           f"from a non-parabolic class")
    return out


# ---------------------------------------------------------------------------
# corollary

def _all_subsets_parabolic(calc, lines: tuple) -> bool:
    for k in range(len(lines) + 1):
        for sub in itertools.combinations(lines, k):
            h = calc.close(sub)
            if calc.closure_lines(h) != h:
                return False
    return True


def _generates(datum: RootDatum, calc, lines) -> bool:
    if calc.close(lines) != calc.all_lines:
        return False
    return datum.chain(calc.all_lines).order() == datum.group_order()


def check_corollary(datum: RootDatum, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                    exhaustive: bool | None = None, budget: int | None = None) -> dict:
    """Test that every subset of a generating n-set of reflections is parabolic.

    Reflections on a common line generate the same subgroup, so reflection
    sets are sampled through their lines.  Without ``exhaustive`` the check
    draws random n-sets until ``samples`` generating ones were seen or the
    attempt budget runs out; finding none means the hypothesis fails.
    """
    calc = calculus(datum)
    n = datum.rank
    if exhaustive is None:
        exhaustive = datum.group.index in EXHAUSTIVE_GROUPS
    tested = passed = attempts = 0
    bad: list = []
    if exhaustive:
        candidates = itertools.combinations(range(datum.nlines), n)
    else:
        if samples <= 0:
            return {"status": SKIPPED, "tested": 0, "passed": 0, "attempts": 0, "failures": []}
        rng = random.Random(seed)
        budget = budget if budget is not None else max(400 * samples, 20000)

        def draw():
            for _ in range(budget):
                refls = rng.sample(range(len(datum.reflections)), n)
                yield tuple(datum.refl_line[r] for r in refls)
        candidates = draw()
    for lines in candidates:
        attempts += 1
        if len(set(lines)) < n or not _generates(datum, calc, lines):
            continue
        tested += 1
        if _all_subsets_parabolic(calc, lines):
            passed += 1
        else:
            bad.append(sorted(lines))
        if not exhaustive and tested >= samples:
            break
    if tested == 0:
        status = VACUOUS
    else:
        status = PASSED if passed == tested else FAILED
    return {"status": status, "tested": tested, "passed": passed,
            "attempts": attempts, "failures": bad[:10]}


def non_generating_witness(datum: RootDatum):
    """An n-set of lines, not generating W, with a non-parabolic subset."""
    calc = calculus(datum)
    for lines in itertools.combinations(range(datum.nlines), datum.rank):
        if calc.close(lines) != calc.all_lines and not _all_subsets_parabolic(calc, lines):
            return lines
    return None


# ---------------------------------------------------------------------------
# encodings and atlas invariants

def cross_check(datum: RootDatum, samples: int = 20, seed: int = DEFAULT_SEED,
                orbit_limit: int = 20000) -> list[str]:
    """Compare the model with the encoded constants; test orbit-stabiliser."""
    failures = []
    info = AMBIENT[datum.group.index]
    got = (datum.chain().order(), len(datum.reflections), datum.nlines)
    want = (info.order, info.reflections, info.lines)
    if got != want:
        failures.append(f"(|W|, reflections, lines) = {got}, expected {want}")
    if any(m.is_zero() or m.to_complex().real <= 0 for m in leading_minors(datum.form_J)):
        failures.append("invariant form is not positive definite")
    if datum.form_J.adjoint() != datum.form_J:
        failures.append("invariant form is not hermitian")
    calc = calculus(datum)
    rng = random.Random(seed)
    order = datum.group_order()
    gens = [datum.induced_line_perm(p) for p in datum.generator_perms]
    for _ in range(samples):
        k = rng.randint(1, datum.rank)
        lines = calc.close(rng.sample(range(datum.nlines), k))
        norm = calc.normalizer(lines)
        if order % norm.order():
            failures.append(f"|N| = {norm.order()} does not divide |W|")
            continue
        size = order // norm.order()
        if size > orbit_limit:
            continue
        if len(_set_orbit(lines, gens)) != size:
            failures.append(f"orbit of {sorted(lines)} has size != |W|/|N| = {size}")
    return failures


def _set_orbit(lines: frozenset, line_gens) -> set:
    seen = {lines}
    queue = [lines]
    for s in queue:
        for g in line_gens:
            t = frozenset(g[x] for x in s)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def atlas_invariants(datum: RootDatum, atlas: ClassAtlas) -> list[str]:
    calc = calculus(datum)
    out = []
    top = atlas.full
    if top.order != datum.group_order():
        out.append("largest class is not the full group")
    for c in atlas.classes:
        h = c.rep
        if calc.close(h.lines) != h.lines:
            out.append(f"{c.label}: representative is not closed")
        comps = calc.components(h.lines)
        if sum(calc.rank(x) for x in comps) != h.rank:
            out.append(f"{c.label}: component ranks do not add up")
        if math.prod(calc.order(x) for x in comps) != h.order:
            out.append(f"{c.label}: component orders do not multiply")
        if sum(TYPES_BY_NAME[t].rank for t in h.components) != h.rank:
            out.append(f"{c.label}: type ranks do not add up")
        if (calc.closure_lines(h.lines) == h.lines) != c.parabolic:
            out.append(f"{c.label}: parabolic flag disagrees with the closure")
        cl = atlas.classes[c.closure]
        if c.parabolic and cl.id != c.id:
            out.append(f"{c.label}: parabolic class has a foreign closure")
        if not c.parabolic and (cl.rank != c.rank or cl.order <= c.order or not cl.parabolic):
            out.append(f"{c.label}: closure {cl.label} has wrong rank, order or flag")
        if c.id != top.id and not c.extensions:
            out.append(f"{c.label}: proper class without extensions")
        for e in c.extensions:
            k = atlas.classes[e]
            if k.order <= c.order or k.rank - c.rank not in (0, 1):
                out.append(f"{c.label} -> {k.label}: edge not monotone")
    return out


def verify_group(group, atlas: ClassAtlas | None = None, samples: int = DEFAULT_SAMPLES,
                 seed: int = DEFAULT_SEED, cross_samples: int = 20) -> VerificationReport:
    from .subsystems import enumerate_atlas

    datum = build_root_datum(group)
    if atlas is None:
        atlas = enumerate_atlas(datum.group.index)
    rep = VerificationReport(datum.group.index, datum.group.name, seed)
    rep.theorem_violations = check_theorem(atlas)
    rep.invariant_failures = cross_check(datum, cross_samples, seed) + atlas_invariants(datum, atlas)
    if samples > 0 or datum.group.index in EXHAUSTIVE_GROUPS:
        cor = check_corollary(datum, samples, seed)
        rep.corollary_status = cor["status"]
        rep.corollary_samples = cor["tested"]
        rep.corollary_passed = cor["passed"]
        rep.corollary_attempts = cor["attempts"]
        if cor["status"] == VACUOUS:
            rep.notes.append(f"no generating set of {datum.rank} reflections among "
                             f"{cor['attempts']} random draws")
        for bad in cor["failures"]:
            rep.notes.append(f"generating set {bad} has a non-parabolic subset")
    else:
        rep.notes.append("corollary check disabled (samples = 0)")
    return rep


def planted_fault(atlas: ClassAtlas) -> ClassAtlas:
    """A copy of the atlas with one edge that breaks the theorem (for testing)."""
    import copy

    bad = copy.deepcopy(atlas)
    for low in bad.classes:
        high = [c for c in bad.classes if c.parabolic and c.rank > low.rank]
        if not low.parabolic and high:
            low.extensions = sorted(set(low.extensions) | {high[0].id})
            return bad
    # no such pair: relabel a parabolic class instead
    low = min((c for c in bad.classes if c.extensions), key=lambda c: c.rank)
    low.parabolic = False
    return bad
