"""Reflection subgroups of a root datum and the atlas of their classes.

A reflection subgroup is stored through the set of hyperplanes (lines) of
its reflections.  Every reflection order occurring in G23..G37 is prime, so
a subgroup containing one reflection on a line contains all of them and the
line set carries the same information as the reflection set.  The
reflections of <S> are exactly the W-reflections on lines in the <S>-orbit
of the lines of S; closures are therefore orbit computations on lines.
"""
from __future__ import annotations

import json
import logging
import re
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constants import lookup
from .cyclo import CycNum, in_span, kernel_from_echelon, row_echelon
from .permgrp import PermGroup, bsgs, orbits, set_stabilizer, set_transporter
from .rootdata import RootDatum, apply_functional, build_root_datum

log = logging.getLogger(__name__)

CACHE_VERSION = 1


class UnknownTypeError(LookupError):
    pass


# ---------------------------------------------------------------------------
# type names

_NAME = re.compile(r"([A-Z])(\d+)(?:\((\d+)\))?$")


def component_key(name: str) -> tuple:
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"bad component name {name!r}")
    return (m.group(1), int(m.group(2)), int(m.group(3) or 0))


def type_label(components: Iterable[str]) -> str:
    """ASCII label such as 2A1+B2(4), components sorted by letter then rank."""
    counts: dict[str, int] = {}
    for c in components:
        counts[c] = counts.get(c, 0) + 1
    parts = []
    for name in sorted(counts, key=component_key):
        k = counts[name]
        parts.append(f"{k}{name}" if k > 1 else name)
    return "+".join(parts)


def showtable_label(components: Iterable[str]) -> str:
    """Label with multiplicities written out and no separators: A1A1B2."""
    return "".join(sorted(components, key=component_key))


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True)
class ReflSubgroup:
    ambient: int
    lines: frozenset
    refl_set: tuple
    rank: int
    order: int
    components: tuple
    gens: tuple = ()

    @property
    def type_name(self) -> str:
        return type_label(self.components)

    def fingerprint(self) -> tuple:
        return (self.order, self.rank, len(self.refl_set), self.components)


class Calculus:
    """Cached subgroup computations inside one ambient group."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        self.nlines = datum.nlines
        self.orth = datum.orthogonal()
        self.lperm = [datum.induced_line_perm(datum.line_perm(ln)) for ln in range(self.nlines)]
        self.all_lines = frozenset(range(self.nlines))
        self._span_cache: dict[frozenset, tuple] = {}
        self._order_cache: dict[frozenset, int] = {}
        self._type_cache: dict[frozenset, tuple] = {}

    # -- closure -------------------------------------------------------------
    def close(self, gen_lines: Iterable[int]) -> frozenset:
        gens = list(dict.fromkeys(gen_lines))
        seen = set(gens)
        queue = list(gens)
        perms = [self.lperm[g] for g in gens]
        for x in queue:
            for p in perms:
                y = p[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def generating_lines(self, lines: Iterable[int]) -> tuple:
        """A small generating set, chosen greedily in line order."""
        gens: list[int] = []
        got: frozenset = frozenset()
        for ln in sorted(lines):
            if ln not in got:
                gens.append(ln)
                got = self.close(gens)
        return tuple(gens)

    # -- invariants ----------------------------------------------------------
    def span(self, lines: frozenset) -> tuple:
        """(echelon basis, pivots, closure line set) of the span of the roots."""
        hit = self._span_cache.get(lines)
        if hit is None:
            d = self.datum
            gens = self.generating_lines(lines)
            ech, piv = row_echelon([d.roots[d.line_rep[g]] for g in gens])
            closure = frozenset(ln for ln in range(self.nlines)
                                if ln in lines or in_span(ech, piv, d.roots[d.line_rep[ln]]))
            hit = (ech, piv, closure)
            self._span_cache[lines] = hit
        return hit

    def rank(self, lines: frozenset) -> int:
        return len(self.span(lines)[1]) if lines else 0

    def order(self, lines: frozenset) -> int:
        if not lines:
            return 1
        hit = self._order_cache.get(lines)
        if hit is None:
            hit = self.datum.chain(lines).order()
            self._order_cache[lines] = hit
        return hit

    def components(self, lines: frozenset) -> list[frozenset]:
        left = set(lines)
        parts = []
        while left:
            start = min(left)
            comp = {start}
            queue = [start]
            left.discard(start)
            for x in queue:
                for y in list(left):
                    if y not in self.orth[x]:
                        left.discard(y)
                        comp.add(y)
                        queue.append(y)
            parts.append(frozenset(comp))
        return parts

    def component_types(self, lines: frozenset) -> tuple:
        hit = self._type_cache.get(lines)
        if hit is None:
            names = []
            for comp in self.components(lines):
                n, m = self.order(comp), len(comp)
                name = lookup(n, m)
                if name is None:
                    raise UnknownTypeError(f"unrecognized irreducible type ({n}, {m})")
                names.append(name)
            hit = tuple(sorted(names, key=component_key))
            self._type_cache[lines] = hit
        return hit

    def subgroup(self, lines: Iterable[int]) -> ReflSubgroup:
        lines = frozenset(lines)
        return ReflSubgroup(
            ambient=self.datum.group.index,
            lines=lines,
            refl_set=self.datum.refls_of_lines(lines),
            rank=self.rank(lines),
            order=self.order(lines),
            components=self.component_types(lines),
            gens=self.generating_lines(lines),
        )

    def closure_lines(self, lines: frozenset) -> frozenset:
        """Lines of the parabolic closure: W-lines whose roots lie in the span."""
        return self.span(lines)[2] if lines else frozenset()

    def invariants(self, lines: frozenset) -> tuple:
        """Conjugation invariants beyond the fingerprint, used to separate classes."""
        closure = self.closure_lines(lines)
        profile: dict[tuple, int] = {}
        perp = 0
        for ln in range(self.nlines):
            if ln in lines:
                continue
            o = self.orth[ln]
            touching = sum(1 for x in lines if x not in o)
            if touching == 0:
                perp += 1
            key = (ln in closure, touching)
            profile[key] = profile.get(key, 0) + 1
        return (len(closure), perp, tuple(sorted(profile.items())))

    # -- group elements --------------------------------------------------------
    def base_hint(self, lines: frozenset) -> list[int]:
        d = self.datum
        gens = self.generating_lines(lines)
        hint = [d.line_rep[g] for g in gens]
        hint += [d.line_rep[ln] for ln in sorted(lines) if ln not in gens]
        return hint

    def chain_for(self, lines: frozenset) -> PermGroup:
        return self.datum.chain(None, base_hint=self.base_hint(lines))

    def transporter(self, src: frozenset, dst: frozenset, chain: PermGroup | None = None):
        """A root permutation in W mapping line set src onto dst, or None."""
        if len(src) != len(dst):
            return None
        d = self.datum
        if chain is None:
            chain = self.chain_for(src)
        return set_transporter(chain, d.roots_of_lines(src), d.roots_of_lines(dst))

    def normalizer(self, lines: frozenset, chain: PermGroup | None = None) -> PermGroup:
        """N_W(H) as the stabiliser of the root set of H's lines."""
        d = self.datum
        if chain is None:
            chain = self.chain_for(lines)
        known = [d.line_perm(ln) for ln in self.generating_lines(lines)]
        known += [d.line_perm(ln) for ln in range(self.nlines)
                  if all(ln in self.orth[x] for x in lines)]
        return set_stabilizer(chain, d.roots_of_lines(lines), known=known)

    def line_orbits(self, root_perms: Sequence[tuple], lines: Iterable[int]) -> list[list[int]]:
        lp = [self.datum.induced_line_perm(p) for p in root_perms]
        return orbits(lp, lines)


def subgroup_from_reflections(datum: RootDatum, seed: Iterable[int],
                              membership: bool = False) -> ReflSubgroup:
    """The reflection subgroup generated by the given reflections.

    The reflection set is found by closing lines.  With ``membership`` it is
    also obtained by sifting every reflection of W through a Schreier-Sims
    chain of the generated group, and the two answers must agree.
    """
    seed = list(seed)
    calc = _calculus(datum)
    lines = calc.close(datum.refl_line[i] for i in seed)
    sub = calc.subgroup(lines)
    if membership:
        group = bsgs([datum.reflections[i].perm for i in seed], degree=datum.nroots)
        found = tuple(r.index for r in datum.reflections if group.contains(r.perm))
        if found != sub.refl_set or group.order() != sub.order:
            raise RuntimeError("membership test disagrees with the line closure")
    return sub


def decompose_components(datum: RootDatum, h: ReflSubgroup) -> list[ReflSubgroup]:
    calc = _calculus(datum)
    return [calc.subgroup(c) for c in calc.components(h.lines)]


def identify_type(datum: RootDatum, k: ReflSubgroup) -> str:
    calc = _calculus(datum)
    parts = calc.components(k.lines)
    if len(parts) != 1:
        raise ValueError("subgroup is not irreducible")
    name = lookup(k.order, len(k.lines))
    if name is None:
        raise UnknownTypeError(f"unrecognized irreducible type ({k.order}, {len(k.lines)})")
    return name


def fixed_space(datum: RootDatum, h: ReflSubgroup) -> list[tuple]:
    """Basis of Fix(H): the common kernel of r - 1 over generating reflections."""
    rows = []
    for ln in h.gens:
        mat = datum.reflections[datum.line_refls[ln][0]].matrix
        n = mat.nrows
        for i in range(n):
            rows.append([mat[i, j] - (1 if i == j else 0) for j in range(n)])
    if not rows:
        one, zero = CycNum.rational(1), CycNum.rational(0)
        return [tuple(one if i == j else zero for j in range(datum.dim))
                for i in range(datum.dim)]
    ech, piv = row_echelon(rows)
    return kernel_from_echelon(ech, piv, datum.dim, datum.field_conductor)


def parabolic_closure(datum: RootDatum, h: ReflSubgroup) -> ReflSubgroup:
    """Pointwise stabiliser of Fix(H), generated by the reflections fixing Fix(H)."""
    fix = fixed_space(datum, h)
    lines = [ln for ln in range(datum.nlines)
             if all(apply_functional(datum.coroots[datum.line_rep[ln]], f).is_zero() for f in fix)]
    return _calculus(datum).subgroup(lines)


_CALC: dict[int, Calculus] = {}


def _calculus(datum: RootDatum) -> Calculus:
    calc = _CALC.get(id(datum))
    if calc is None or calc.datum is not datum:
        calc = Calculus(datum)
        _CALC[id(datum)] = calc
    return calc


def calculus(datum: RootDatum) -> Calculus:
    return _calculus(datum)


# ---------------------------------------------------------------------------
# the atlas

@dataclass
class SubgroupClass:
    id: int
    rep: ReflSubgroup
    type_name: str
    index: int | None = None
    parabolic: bool = False
    closure: int | None = None
    extensions: list = field(default_factory=list)

    @property
    def label(self) -> str:
        return self.type_name if self.index is None else f"{self.type_name}.{self.index}"

    @property
    def rank(self) -> int:
        return self.rep.rank

    @property
    def order(self) -> int:
        return self.rep.order

    @property
    def closure_is_extension(self) -> bool:
        return not self.parabolic and self.closure in self.extensions


@dataclass
class ClassAtlas:
    ambient: int
    name: str
    classes: list
    stats: dict = field(default_factory=dict)

    def by_label(self) -> dict:
        return {c.label: c for c in self.classes}

    @property
    def full(self) -> SubgroupClass:
        return max(self.classes, key=lambda c: c.order)


class Enumerator:
    """Breadth-first construction of all classes of reflection subgroups."""

    def __init__(self, datum: RootDatum, normalizer: str = "full"):
        self.datum = datum
        self.calc = _calculus(datum)
        self.normalizer_mode = normalizer
        self.classes: list[SubgroupClass] = []
        self.memo: dict[frozenset, int] = {}
        self.by_fp: dict[tuple, list[int]] = {}
        self._inv: dict[int, tuple] = {}
        self._chains: dict[int, PermGroup] = {}
        self.stats = {"transporter_calls": 0, "transporter_hits": 0,
                      "invariant_rejects": 0, "normalizer_time": 0.0}

    def _chain(self, cid: int) -> PermGroup:
        ch = self._chains.get(cid)
        if ch is None:
            ch = self.calc.chain_for(self.classes[cid].rep.lines)
            self._chains[cid] = ch
        return ch

    def classify(self, lines: frozenset, create: bool = True) -> int:
        hit = self.memo.get(lines)
        if hit is not None:
            return hit
        sub = self.calc.subgroup(lines)
        fp = sub.fingerprint()
        inv = None
        for cid in self.by_fp.get(fp, []):
            if inv is None:
                inv = self.calc.invariants(lines)
            if self._invariants(cid) != inv:
                self.stats["invariant_rejects"] += 1
                continue
            self.stats["transporter_calls"] += 1
            g = self.calc.transporter(self.classes[cid].rep.lines, lines, self._chain(cid))
            if g is not None:
                self.stats["transporter_hits"] += 1
                self.memo[lines] = cid
                return cid
        if not create:
            raise RuntimeError("subgroup not conjugate to any known class")
        cid = len(self.classes)
        self.classes.append(SubgroupClass(cid, sub, sub.type_name))
        self.memo[lines] = cid
        self.by_fp.setdefault(fp, []).append(cid)
        return cid

    def _invariants(self, cid: int) -> tuple:
        inv = self._inv.get(cid)
        if inv is None:
            inv = self.calc.invariants(self.classes[cid].rep.lines)
            self._inv[cid] = inv
        return inv

    def extension_reps(self, cid: int) -> list[int]:
        """One line from each orbit of the normaliser on lines outside H."""
        lines = self.classes[cid].rep.lines
        outside = [ln for ln in range(self.calc.nlines) if ln not in lines]
        if not outside:
            return []
        t0 = time.perf_counter()
        if self.normalizer_mode == "full":
            norm = self.calc.normalizer(lines, self._chain(cid))
            perms = norm.strong_generators
        elif self.normalizer_mode == "partial":
            # H itself and the reflections orthogonal to H normalise H
            d = self.datum
            perms = [d.line_perm(ln) for ln in self.calc.generating_lines(lines)]
            perms += [d.line_perm(ln) for ln in outside
                      if all(ln in self.calc.orth[x] for x in lines)]
        else:
            perms = []
        self.stats["normalizer_time"] += time.perf_counter() - t0
        return [orb[0] for orb in self.calc.line_orbits(perms, outside)]

    def run(self) -> ClassAtlas:
        calc = self.calc
        t0 = time.perf_counter()
        gens = [self.datum.induced_line_perm(p) for p in self.datum.generator_perms]
        for orb in orbits(gens, range(calc.nlines)):
            self.classify(frozenset([orb[0]]))
        pos = 0
        while pos < len(self.classes):
            cls = self.classes[pos]
            exts = set()
            for r in self.extension_reps(pos):
                new = calc.close(list(cls.rep.gens) + [r])
                exts.add(self.classify(new))
            cls.extensions = sorted(exts)
            pos += 1
        for cls in self.classes:
            lines = cls.rep.lines
            closure = calc.closure_lines(lines)
            cls.parabolic = closure == lines
            cls.closure = cls.id if cls.parabolic else self.classify(closure, create=False)
        _assign_indices(self.classes)
        self.stats["time"] = time.perf_counter() - t0
        self.stats["classes"] = len(self.classes)
        return ClassAtlas(self.datum.group.index, self.datum.group.name, self.classes,
                          dict(self.stats))


def _assign_indices(classes: list[SubgroupClass]) -> None:
    groups: dict[str, list[SubgroupClass]] = {}
    for c in classes:
        groups.setdefault(c.type_name, []).append(c)
    for members in groups.values():
        if len(members) > 1:
            for i, c in enumerate(members, 1):
                c.index = i
        else:
            members[0].index = None


def enumerate_atlas(group, normalizer: str = "full") -> ClassAtlas:
    datum = build_root_datum(group)
    return Enumerator(datum, normalizer=normalizer).run()


def simple_extensions(datum: RootDatum, h: ReflSubgroup) -> list[tuple[ReflSubgroup, int]]:
    """One subgroup <H, r> per W-class of simple extensions of H.

    Returns (extension, r) pairs with r a line from a normaliser orbit.
    """
    en = Enumerator(datum)
    cid = en.classify(h.lines)
    seen: dict[int, tuple] = {}
    for r in en.extension_reps(cid):
        new = en.calc.close(list(h.gens) + [r])
        k = en.classify(new)
        if k not in seen:
            seen[k] = (en.classes[k].rep if en.classes[k].rep.lines == new
                       else en.calc.subgroup(new), r)
    return list(seen.values())


# ---------------------------------------------------------------------------
# persistence

def atlas_to_json(atlas: ClassAtlas) -> dict:
    return {
        "format": "reflsub-atlas",
        "version": CACHE_VERSION,
        "group": atlas.ambient,
        "name": atlas.name,
        "classes": [{
            "id": c.id,
            "label": c.label,
            "type": c.type_name,
            "index": c.index,
            "lines": sorted(c.rep.lines),
            "reflections": list(c.rep.refl_set),
            "rank": c.rank,
            "order": c.order,
            "parabolic": c.parabolic,
            "closure": c.closure,
            "extensions": list(c.extensions),
        } for c in atlas.classes],
    }


class CacheError(ValueError):
    pass


def atlas_from_json(data: dict, datum: RootDatum | None = None) -> ClassAtlas:
    """Rebuild an atlas from its JSON form, recomputing every per-class invariant."""
    if data.get("format") != "reflsub-atlas" or data.get("version") != CACHE_VERSION:
        raise CacheError("cache format or version mismatch")
    if datum is None:
        datum = build_root_datum(data["group"])
    if datum.group.index != data["group"]:
        raise CacheError("cache belongs to another group")
    calc = _calculus(datum)
    classes = []
    for entry in data["classes"]:
        lines = frozenset(entry["lines"])
        if calc.close(lines) != lines:
            raise CacheError(f"class {entry['label']}: line set is not closed")
        sub = calc.subgroup(lines)
        if (sub.rank, sub.order, sub.type_name) != (entry["rank"], entry["order"], entry["type"]):
            raise CacheError(f"class {entry['label']}: invariants do not match")
        if list(sub.refl_set) != entry["reflections"]:
            raise CacheError(f"class {entry['label']}: reflection set does not match")
        parabolic = calc.closure_lines(lines) == lines
        if parabolic != entry["parabolic"]:
            raise CacheError(f"class {entry['label']}: parabolic flag does not match")
        classes.append(SubgroupClass(entry["id"], sub, entry["type"], entry["index"],
                                     parabolic, entry["closure"], list(entry["extensions"])))
    for c in classes:
        target = classes[c.closure]
        closure = calc.closure_lines(c.rep.lines)
        if c.parabolic and c.closure != c.id:
            raise CacheError(f"class {c.label}: parabolic class must be its own closure")
        if not c.parabolic and calc.transporter(target.rep.lines, closure) is None:
            raise CacheError(f"class {c.label}: closure pointer is wrong")
    return ClassAtlas(datum.group.index, datum.group.name, classes)


def save_atlas(atlas: ClassAtlas, path) -> None:
    with open(path, "w") as fh:
        json.dump(atlas_to_json(atlas), fh, indent=1)
        fh.write("\n")


def load_atlas(path, datum: RootDatum | None = None) -> ClassAtlas:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CacheError(f"unreadable cache: {exc}") from exc
    return atlas_from_json(data, datum)
