"""Permutation groups given by a base and strong generating set.

Permutations are tuples of images acting on the left: ``p[x]`` is the image
of ``x`` and ``mul(p, q)`` is ``p o q`` (apply ``q`` first).

A :class:`PermGroup` stores, for each base point, the generators of the
corresponding point stabiliser and a transversal of its basic orbit.  It can
come from the deterministic Schreier-Sims algorithm (:func:`bsgs`) or be
assembled from stabiliser generators that are known in advance, which is how
reflection groups are handled (see ``rootdata.RootDatum.chain``).
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    """The composite p o q."""
    return tuple([p[x] for x in q])


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def power(p: Perm, e: int) -> Perm:
    result = identity(len(p))
    for _ in range(e):
        result = mul(p, result)
    return result


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def orbit_transversal(point: int, gens: Sequence[Perm], degree: int) -> dict[int, Perm]:
    """Map each orbit point y to an element u with u[point] == y."""
    trans = {point: identity(degree)}
    queue = [point]
    for x in queue:
        ux = trans[x]
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = mul(g, ux)
                queue.append(y)
    return trans


def orbit(point: int, gens: Sequence[Perm]) -> list[int]:
    seen = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return queue


def orbits(gens: Sequence[Perm], points: Iterable[int]) -> list[list[int]]:
    """Orbit partition of ``points`` (assumed invariant), lowest point first."""
    remaining = sorted(set(points))
    done: set[int] = set()
    parts = []
    for x in remaining:
        if x in done:
            continue
        orb = sorted(orbit(x, gens))
        done.update(orb)
        parts.append(orb)
    return parts


class PermGroup:
    """A permutation group with a stabiliser chain.

    ``level_gens[i]`` generates the pointwise stabiliser of ``base[:i]``.
    """

    def __init__(self, degree: int, base: Sequence[int], level_gens: Sequence[Sequence[Perm]]):
        self.degree = degree
        self.base = list(base)
        self.level_gens = [list(g) for g in level_gens]
        self.transversals = [orbit_transversal(b, g, degree)
                             for b, g in zip(self.base, self.level_gens)]
        self._fixed = None

    @property
    def strong_generators(self) -> list[Perm]:
        seen, out = set(), []
        for gens in self.level_gens:
            for g in gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    @property
    def generators(self) -> list[Perm]:
        return self.level_gens[0] if self.level_gens else []

    def order(self) -> int:
        result = 1
        for t in self.transversals:
            result *= len(t)
        return result

    def basic_orbit(self, i: int) -> list[int]:
        return list(self.transversals[i])

    def sift(self, g: Perm) -> tuple[Perm, int]:
        """Strip g through the chain; returns (residue, level reached)."""
        for i, (b, trans) in enumerate(zip(self.base, self.transversals)):
            y = g[b]
            u = trans.get(y)
            if u is None:
                return g, i
            g = mul(inverse(u), g)
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        residue, _ = self.sift(g)
        return is_identity(residue)

    def random_element(self, rng: random.Random) -> Perm:
        g = identity(self.degree)
        for trans in self.transversals:
            g = mul(g, trans[rng.choice(sorted(trans))])
        return g

    def verify(self) -> bool:
        """Deterministic Schreier generator test of the whole chain."""
        for i, (b, trans) in enumerate(zip(self.base, self.transversals)):
            for g in self.level_gens[i]:
                for x, u in trans.items():
                    h = mul(inverse(trans[g[x]]), mul(g, u))
                    residue, _ = self._sift_from(h, i + 1)
                    if not is_identity(residue):
                        return False
        return True

    def _sift_from(self, g: Perm, start: int) -> tuple[Perm, int]:
        for i in range(start, len(self.base)):
            u = self.transversals[i].get(g[self.base[i]])
            if u is None:
                return g, i
            g = mul(inverse(u), g)
        return g, len(self.base)

    def fixed_points(self, level: int) -> frozenset[int]:
        """Points fixed by the stabiliser of base[:level]."""
        if self._fixed is None:
            fixed = []
            for gens in self.level_gens + [[]]:
                fixed.append(frozenset(x for x in range(self.degree)
                                       if all(g[x] == x for g in gens)))
            self._fixed = fixed
        return self._fixed[level]


def bsgs(generators: Sequence[Perm], degree: int | None = None,
         base_prefix: Sequence[int] = ()) -> PermGroup:
    """Deterministic Schreier-Sims."""
    gens = [tuple(g) for g in generators if not is_identity(g)]
    if degree is None:
        degree = len(generators[0]) if generators else 0
    base = list(base_prefix)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(next(x for x in range(degree) if g[x] != x))
    if not gens:
        return PermGroup(degree, [], [])

    def fixes(g, pts):
        return all(g[p] == p for p in pts)

    levels = [[g for g in gens if fixes(g, base[:i])] for i in range(len(base))]
    trans = [orbit_transversal(b, lv, degree) for b, lv in zip(base, levels)]
    i = len(base) - 1
    while i >= 0:
        added = False
        for x in sorted(trans[i]):
            u = trans[i][x]
            for s in levels[i]:
                h = mul(inverse(trans[i][s[x]]), mul(s, u))
                # sift below level i
                j = i + 1
                while j < len(base):
                    v = trans[j].get(h[base[j]])
                    if v is None:
                        break
                    h = mul(inverse(v), h)
                    j += 1
                if is_identity(h):
                    continue
                if j == len(base):
                    base.append(next(p for p in range(degree) if h[p] != p))
                    levels.append([])
                    trans.append({})
                for lv in range(i + 1, j + 1):
                    levels[lv].append(h)
                    trans[lv] = orbit_transversal(base[lv], levels[lv], degree)
                i = j
                added = True
                break
            if added:
                break
        if not added:
            i -= 1
    return PermGroup(degree, base, levels)


# ---------------------------------------------------------------------------
# backtrack searches

def _depth_for(group: PermGroup, target: frozenset[int]) -> int:
    """Smallest k with target fixed pointwise by the stabiliser of base[:k]."""
    for k in range(len(group.base) + 1):
        if target <= group.fixed_points(k):
            return k
    return len(group.base)


def _search(group: PermGroup, src: frozenset[int], dst: frozenset[int], level: int,
            prefix: Perm, depth: int, counter: list[int]) -> Perm | None:
    if level == depth:
        return prefix
    b = group.base[level]
    want = b in src
    new_fixed = group.fixed_points(level + 1) - group.fixed_points(level)
    for delta in sorted(group.transversals[level]):
        counter[0] += 1
        if (prefix[delta] in dst) != want:
            continue
        p = mul(prefix, group.transversals[level][delta])
        if any((x in src) != (p[x] in dst) for x in new_fixed):
            continue
        found = _search(group, src, dst, level + 1, p, depth, counter)
        if found is not None:
            return found
    return None


def _check_fixed(group: PermGroup, src, dst, p: Perm, level: int) -> bool:
    new_fixed = group.fixed_points(level + 1) - group.fixed_points(level)
    return all((x in src) == (p[x] in dst) for x in new_fixed)


def set_transporter(group: PermGroup, src: Iterable[int], dst: Iterable[int],
                    stats: list[int] | None = None) -> Perm | None:
    """Some g in group with g(src) == dst, or None.

    Pruning uses the points whose images are already determined by the
    partial product; a base whose first points lie in ``src`` makes this
    effective.
    """
    src, dst = frozenset(src), frozenset(dst)
    if len(src) != len(dst):
        return None
    counter = stats if stats is not None else [0]
    start = identity(group.degree)
    # points fixed by the whole group must already match
    if any((x in src) != (x in dst) for x in group.fixed_points(0)):
        return None
    depth = _depth_for(group, src)
    return _search(group, src, dst, 0, start, depth, counter)


def set_stabilizer(group: PermGroup, target: Iterable[int],
                   known: Sequence[Perm] = (), stats: list[int] | None = None) -> PermGroup:
    """The subgroup of ``group`` mapping ``target`` onto itself.

    ``known`` may list elements already known to stabilise the target; they
    only speed up the search.  The result reuses the base of ``group``.
    """
    target = frozenset(target)
    counter = stats if stats is not None else [0]
    n = len(group.base)
    depth = _depth_for(group, target)

    def fixes_prefix(g, k):
        return all(g[b] == b for b in group.base[:k])

    known = [g for g in known if all((g[x] in target) for x in target)]
    level_gens: list[list[Perm]] = [[] for _ in range(n)]
    # below the search depth the stabiliser chain of the group is inherited
    for k in range(depth, n):
        level_gens[k] = list(group.level_gens[k])
    extra = list(known)
    for k in range(depth - 1, -1, -1):
        gens = [g for g in extra if fixes_prefix(g, k)]
        if k + 1 < n:
            gens = level_gens[k + 1] + [g for g in gens if g not in level_gens[k + 1]]
        b = group.base[k]
        orb = set(orbit(b, gens))
        failed: set[int] = set()
        want = b in target
        for delta in sorted(group.transversals[k]):
            if delta in orb or delta in failed:
                continue
            counter[0] += 1
            ok = (delta in target) == want
            p = group.transversals[k][delta] if ok else None
            if ok and not _check_fixed(group, target, target, p, k):
                ok = False
            g = _search(group, target, target, k + 1, p, depth, counter) if ok else None
            if g is None:
                failed.update(orbit(delta, gens))
                continue
            gens.append(g)
            orb = set(orbit(b, gens))
        level_gens[k] = gens
    return PermGroup(group.degree, group.base, level_gens)
