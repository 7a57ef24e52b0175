"""Root data for the primitive complex reflection groups G23 to G37.

Each group is encoded by a few generating roots with exact cyclotomic
coordinates and the orders of their reflections.  Everything else (the
invariant form, the full root system, coroots, all reflections and their
permutations of the roots) is computed from that seed and checked against
the constants table when the datum is built.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .constants import AMBIENT
from .cyclo import (CycNum, Matrix, golden_ratio, kernel_from_echelon, leading_minors,
                    row_echelon, sqrt_minus)
from .permgrp import PermGroup, inverse, mul, power

Vector = tuple


class ConfigurationError(RuntimeError):
    """A group encoding failed its consistency checks."""


@dataclass(frozen=True)
class GroupId:
    index: int
    name: str

    @classmethod
    def get(cls, key) -> GroupId:
        """Accepts 23, "23", "G23" or a Cohen name such as "J3(4)"."""
        if isinstance(key, GroupId):
            return key
        text = str(key).strip()
        if text.upper().startswith("G") and text[1:].isdigit():
            text = text[1:]
        if text.isdigit():
            idx = int(text)
            if idx not in AMBIENT:
                raise KeyError(f"no primitive group G{idx} of rank >= 3")
            return cls(idx, AMBIENT[idx].name)
        for info in AMBIENT.values():
            if info.name.lower() == text.lower():
                return cls(info.index, info.name)
        raise KeyError(f"unknown group {key!r}")

    def __str__(self):
        return f"G{self.index} = {self.name}"


# ---------------------------------------------------------------------------
# encodings

def _q(n: int, x) -> CycNum:
    return x.promote(n) if isinstance(x, CycNum) else CycNum.rational(x, n)


def _vec(n: int, *entries) -> Vector:
    return tuple(_q(n, x) for x in entries)


def _unit(n: int, dim: int, i: int, c=1) -> Vector:
    return tuple(_q(n, c) if j == i else _q(n, 0) for j in range(dim))


def _seed(index: int) -> tuple[int, list[Vector], list[int]]:
    """(conductor, generating roots, reflection orders) of a model of G_index."""
    if index in (23, 30):
        n = 5
        t = golden_ratio()
        ti = t - 1  # 1/tau
        h = CycNum.rational(Fraction(1, 2))
        if index == 23:
            roots = [_unit(n, 3, 0), _unit(n, 3, 1), _vec(n, t * h, h, ti * h)]
        else:
            roots = [_vec(n, -t * h, ti * h, 0, h), _vec(n, ti * h, 0, -t * h, -h),
                     _vec(n, -h, h, -h, -h), _vec(n, t * h, h, -ti * h, 0)]
        return n, roots, [2] * len(roots)
    if index == 24:
        n = 7
        lam = (sqrt_minus(7) - 1) / 2
        return n, [_vec(n, 2, 0, 0), _vec(n, lam, lam, 0),
                   _vec(n, lam.conjugate(), 1, 1)], [2, 2, 2]
    if index in (25, 26, 32, 33, 34):
        n = 3
        w = CycNum.zeta(3)
        w2 = w * w
        th = w - w2
        if index == 25:
            return n, [_unit(n, 3, 0, th), _unit(n, 3, 1, th), _vec(n, 1, 1, 1)], [3, 3, 3]
        if index == 26:
            return n, [_unit(n, 3, 0, th), _vec(n, 1, 1, 1), _vec(n, 1, -1, 0)], [3, 3, 2]
        if index == 32:
            return n, [_vec(n, -1, 0, w2, w), _vec(n, 0, -w2, 1, -1),
                       _vec(n, -w, -w, -1, 0), _vec(n, 0, 0, 0, 1 - w)], [3, 3, 3, 3]
        # K6 from the roots th*(e_i - w^c e_j) of G(3,3,6) and (1,...,1)
        roots = []
        for i in range(5):
            roots.append(tuple(_q(n, th if j == i else (-th if j == i + 1 else 0))
                               for j in range(6)))
        if index == 34:
            roots.append(_vec(n, 0, 0, 0, 0, th, -th * w))
            roots.append(_vec(n, 1, 1, 1, 1, 1, 1))
        else:
            # K5 is the part of K6 orthogonal to (1,...,1)
            roots.append(_vec(n, 1, 1, w, w, w2, w2))
        return n, roots, [2] * len(roots)
    if index == 27:
        n = 15
        t = golden_ratio().promote(n)
        ti = t - 1
        h = CycNum.rational(Fraction(1, 2))
        z6 = -CycNum.zeta(3, 2)
        z3 = CycNum.zeta(3)
        return n, [_vec(n, 1, 1, 0), _vec(n, 1, 0, 1),
                   _vec(n, t * h, z6 * h, -z3 * ti * h)], [2, 2, 2]
    if index == 28:
        h = CycNum.rational(Fraction(1, 2))
        return 1, [_vec(1, 0, 1, -1, 0), _vec(1, 0, 0, 1, -1), _vec(1, 0, 0, 0, 1),
                   _vec(1, h, -h, -h, -h)], [2, 2, 2, 2]
    if index in (29, 31):
        n = 4
        i = CycNum.zeta(4)
        h = CycNum.rational(Fraction(1, 2))
        roots = [_vec(n, -i, 0, 0, -1), _vec(n, (i - 1) * h, (1 + i) * h, (1 - i) * h, (1 + i) * h),
                 _vec(n, (i - 1) * h, (1 - i) * h, (-1 - i) * h, (-1 - i) * h),
                 _vec(n, (-1 - i) * h, (1 + i) * h, (1 + i) * h, (-1 - i) * h)]
        if index == 31:
            roots.append(_unit(n, 4, 0, 1 + i))
        return n, roots, [2] * len(roots)
    if index in (35, 36, 37):
        # Bourbaki simple roots of E8; E7 and E6 use the first 7 and 6
        h = CycNum.rational(Fraction(1, 2))
        roots = [_vec(1, h, -h, -h, -h, -h, -h, -h, h), _vec(1, 1, 1, 0, 0, 0, 0, 0, 0)]
        for k in range(6):
            roots.append(tuple(_q(1, 1 if j == k + 1 else (-1 if j == k else 0))
                               for j in range(8)))
        keep = {35: 6, 36: 7, 37: 8}[index]
        return 1, roots[:keep], [2] * keep
    raise KeyError(index)


# ---------------------------------------------------------------------------
# linear algebra helpers

def hermitian(u: Vector, form: Matrix, v: Vector) -> CycNum:
    """<u, v> = u* J v."""
    jv = form @ v
    total = CycNum.rational(0, u[0].n)
    for a, b in zip(u, jv):
        if not a.is_zero() and not b.is_zero():
            total = total + a.conjugate() * b
    return total


def covector(a: Vector, form: Matrix) -> Vector:
    """The functional v -> <a, v> as a row vector a* J."""
    ac = [x.conjugate() for x in a]
    n = len(a)
    return tuple(sum((ac[i] * form[i, j] for i in range(n) if not ac[i].is_zero()),
                     CycNum.rational(0, a[0].n)) for j in range(n))


def apply_functional(f: Vector, v: Vector) -> CycNum:
    total = None
    for a, b in zip(f, v):
        if a.is_zero() or b.is_zero():
            continue
        t = a * b
        total = t if total is None else total + t
    return total if total is not None else CycNum.rational(0, f[0].n)


def pseudo_reflection(a: Vector, a_vee: Vector, eigenvalue: CycNum) -> Matrix:
    """The map fixing ker(a_vee) pointwise and sending a to eigenvalue * a."""
    pairing = apply_functional(a_vee, a)
    if pairing.is_zero():
        raise ValueError("root and coroot pair to zero")
    c = (eigenvalue - 1) / pairing
    n = len(a)
    rows = []
    for i in range(n):
        ca = a[i] * c
        rows.append([(1 if i == j else 0) + ca * a_vee[j] for j in range(n)])
    return Matrix(rows)


def invariant_form(generators: Sequence[Matrix]) -> Matrix:
    """The hermitian form J with g* J g = J for all generators, J[0][0] = 1.

    Raises ValueError unless the invariant sesquilinear forms make up a
    single line, or if the normalised form is not hermitian positive definite.
    """
    n = generators[0].nrows
    conductor = 1
    for g in generators:
        for row in g.rows:
            for x in row:
                conductor = conductor * x.n // _gcd(conductor, x.n)
    zero = CycNum.rational(0, conductor)
    # unknown J[k][l] sits in column k*n + l; equation (g* J g - J)[i][j] = 0
    eqs = []
    for g in generators:
        gc = [[x.promote(conductor).conjugate() for x in row] for row in g.rows]
        gp = [[x.promote(conductor) for x in row] for row in g.rows]
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                for k in range(n):
                    a = gc[k][i]
                    if a.is_zero():
                        continue
                    for l in range(n):
                        b = gp[l][j]
                        if not b.is_zero():
                            row[k * n + l] = row[k * n + l] + a * b
                row[i * n + j] = row[i * n + j] - 1
                eqs.append(row)
    ech, pivots = row_echelon(eqs)
    sols = kernel_from_echelon(ech, pivots, n * n, conductor)
    if len(sols) != 1:
        raise ConfigurationError(f"invariant forms span a space of dimension {len(sols)}")
    sol = sols[0]
    if sol[0].is_zero():
        raise ConfigurationError("invariant form has zero first diagonal entry")
    scale = sol[0].inverse()
    form = Matrix([[sol[k * n + l] * scale for l in range(n)] for k in range(n)])
    if form.adjoint() != form:
        raise ConfigurationError("invariant form is not hermitian")
    for minor in leading_minors(form):
        if minor.is_zero() or minor.to_complex().real <= 0:
            raise ConfigurationError("invariant form is not positive definite")
    return form


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _coords_in_basis(basis: list[Vector], v: Vector) -> Vector:
    """Coefficients x with sum x_i basis_i == v (v must lie in the span)."""
    m = len(v)
    rows = [[b[j] for b in basis] + [v[j]] for j in range(m)]
    ech, pivots = row_echelon(rows)
    if len(basis) in pivots:
        raise ValueError("vector outside the span")
    out = [CycNum.rational(0, v[0].n)] * len(basis)
    for row, p in zip(ech, pivots):
        out[p] = row[-1]
    return tuple(out)


def _line_key(v: Vector) -> tuple:
    i = next(k for k, x in enumerate(v) if not x.is_zero())
    inv = v[i].inverse()
    return tuple((x * inv).key() for x in v)


def root_of_unity(d: int, k: int, conductor: int) -> CycNum:
    """exp(2 pi i k / d) inside Q(zeta_conductor); -1 stays rational."""
    if d <= 2:
        return CycNum.rational((-1) ** k if d == 2 else 1, conductor)
    return CycNum.zeta(d, k).promote(conductor)


def _vkey(v: Vector) -> tuple:
    return tuple(x.key() for x in v)


# ---------------------------------------------------------------------------
# the datum

@dataclass
class Reflection:
    index: int
    line: int
    root: int
    exponent: int
    order: int
    eigenvalue: CycNum
    matrix: Matrix
    perm: tuple


class RootDatum:
    """Roots, coroots, form and reflections of one ambient group."""

    def __init__(self, group: GroupId):
        self.group = group
        info = AMBIENT[group.index]
        conductor, seeds, orders = _seed(group.index)
        self.conductor = conductor
        ambient_dim = len(seeds[0])
        ech, pivots = row_echelon(seeds)
        if len(pivots) != info.rank:
            raise ConfigurationError(f"{group}: seed roots have rank {len(pivots)}")
        if info.rank < ambient_dim:
            basis, rk = [], 0
            for s in seeds:
                if row_echelon(basis + [s])[1].__len__() > rk:
                    basis.append(s)
                    rk += 1
            gram = Matrix([[sum((x.conjugate() * y for x, y in zip(b, c)),
                                CycNum.rational(0, conductor)) for c in basis] for b in basis])
            seeds = [_coords_in_basis(basis, s) for s in seeds]
            model_form = gram
        else:
            model_form = Matrix.identity(ambient_dim, conductor)
        self.dim = info.rank
        self.field_conductor = fc = _lcm(conductor, max(orders) if max(orders) > 2 else 1)
        one = CycNum.rational(1, fc)

        def coroot_of(a: Vector, d: int, form: Matrix) -> Vector:
            cov = covector(a, form)
            norm = apply_functional(cov, a)
            c = (one - root_of_unity(d, 1, fc)) / norm
            return tuple(x * c for x in cov)

        # generators in the model form, then the invariant form recomputed
        gen_mats = [pseudo_reflection(a, coroot_of(a, d, model_form), root_of_unity(d, 1, fc))
                    for a, d in zip(seeds, orders)]
        try:
            form = invariant_form(gen_mats)
        except (ValueError, ConfigurationError) as exc:
            raise ConfigurationError(f"{group}: {exc}") from exc
        if model_form.scale(model_form[0, 0].inverse()) != form:
            raise ConfigurationError(f"{group}: recomputed form differs from the model form")
        self.form_J = form
        self.generator_matrices = gen_mats

        # root orbit under the generating reflections
        seed_coroots = [coroot_of(a, d, form) for a, d in zip(seeds, orders)]
        seed_maps = [(a, c) for a, c in zip(seeds, seed_coroots)]
        roots: list[Vector] = []
        root_order: list[int] = []
        where: dict[tuple, int] = {}
        limit = 20 * info.lines * 6
        for a, d in zip(seeds, orders):
            a = tuple(x.promote(self.field_conductor) for x in a)
            k = _vkey(a)
            if k not in where:
                where[k] = len(roots)
                roots.append(a)
                root_order.append(d)
        pos = 0
        while pos < len(roots):
            v = roots[pos]
            for a, c in seed_maps:
                t = apply_functional(c, v)
                w = v if t.is_zero() else tuple((x - t * y).promote(self.field_conductor)
                                                for x, y in zip(v, a))
                k = _vkey(w)
                if k not in where:
                    where[k] = len(roots)
                    roots.append(w)
                    root_order.append(root_order[pos])
                    if len(roots) > limit:
                        raise ConfigurationError(f"{group}: root closure does not terminate")
                elif root_order[where[k]] != root_order[pos]:
                    raise ConfigurationError(f"{group}: a root carries two reflection orders")
            pos += 1
        self.roots = roots
        self.root_order = tuple(root_order)
        self._where = where

        # lines
        line_of: dict[tuple, int] = {}
        root_line = []
        line_rep: list[int] = []
        for idx, v in enumerate(roots):
            k = _line_key(v)
            if k not in line_of:
                line_of[k] = len(line_rep)
                line_rep.append(idx)
            root_line.append(line_of[k])
        self.root_line = tuple(root_line)
        self.line_rep = tuple(line_rep)
        self.line_roots = [[] for _ in line_rep]
        for idx, ln in enumerate(root_line):
            self.line_roots[ln].append(idx)
        self.line_order = tuple(root_order[r] for r in line_rep)
        if len(line_rep) != info.lines:
            raise ConfigurationError(
                f"{group}: {len(line_rep)} root lines, expected {info.lines}")

        # coroots and rho
        self.coroots = [coroot_of(a, d, form) for a, d in zip(roots, root_order)]
        self.rho = tuple(range(len(roots)))

        # generator permutations of the roots
        self.generators = [(where[_vkey(tuple(x.promote(self.field_conductor) for x in a))], d)
                           for a, d in zip(seeds, orders)]
        self.generator_perms = [self._perm_of_reflection(r) for r, _ in self.generators]

        self._build_reflections()
        if len(self.reflections) != info.reflections:
            raise ConfigurationError(f"{group}: {len(self.reflections)} reflections, "
                                     f"expected {info.reflections}")
        self._orth = None
        self._covectors = None

    # -- construction helpers ------------------------------------------------
    def _perm_of_reflection(self, r: int) -> tuple:
        a, c = self.roots[r], self.coroots[r]
        images = []
        for v in self.roots:
            t = apply_functional(c, v)
            w = v if t.is_zero() else tuple(x - t * y for x, y in zip(v, a))
            images.append(self._where[_vkey(w)])
        return tuple(images)

    def _build_reflections(self) -> None:
        # close the generating reflections under conjugation by the generators
        base_perm: dict[int, tuple] = {}
        queue = []
        for (r, _), p in zip(self.generators, self.generator_perms):
            ln = self.root_line[r]
            if ln not in base_perm:
                base_perm[ln] = p
                queue.append(ln)
        for ln in queue:
            p = base_perm[ln]
            rep = self.line_rep[ln]
            for s in self.generator_perms:
                # s p s^-1 is the reflection on the line through s(rep)
                image = self.root_line[s[rep]]
                if image not in base_perm:
                    q = mul(s, mul(p, inverse(s)))
                    base_perm[image] = q
                    queue.append(image)
        if len(base_perm) != len(self.line_rep):
            raise ConfigurationError(f"{self.group}: reflections do not reach every line")
        # the closure may reach a line through a different root than line_rep;
        # the reflection itself depends only on the line and the eigenvalue
        self.reflections: list[Reflection] = []
        self.line_refls: list[list[int]] = []
        for ln, rep in enumerate(self.line_rep):
            d = self.line_order[ln]
            ids = []
            for k in range(1, d):
                eig = root_of_unity(d, k, self.field_conductor)
                mat = pseudo_reflection(self.roots[rep], self.coroots[rep], eig)
                perm = power(base_perm[ln], k)
                ids.append(len(self.reflections))
                self.reflections.append(Reflection(len(self.reflections), ln, rep, k, d,
                                                   eig, mat, perm))
            self.line_refls.append(ids)
        self.refl_line = tuple(r.line for r in self.reflections)

    # -- queries -------------------------------------------------------------
    @property
    def rank(self) -> int:
        return self.dim

    @property
    def nlines(self) -> int:
        return len(self.line_rep)

    @property
    def nroots(self) -> int:
        return len(self.roots)

    def line_perm(self, ln: int) -> tuple:
        """Root permutation of the basic reflection (eigenvalue zeta_d) on a line."""
        return self.reflections[self.line_refls[ln][0]].perm

    def root_index(self, v: Vector) -> int | None:
        return self._where.get(_vkey(tuple(x.promote(self.field_conductor) for x in v)))

    def pairing(self, u: Vector, v: Vector) -> CycNum:
        return hermitian(u, self.form_J, v)

    def covectors(self) -> list[Vector]:
        """a* J for the representative root of every line."""
        if self._covectors is None:
            self._covectors = [covector(self.roots[r], self.form_J) for r in self.line_rep]
        return self._covectors

    def orthogonal(self) -> list[frozenset[int]]:
        """For each line, the set of lines orthogonal to it."""
        if self._orth is None:
            cov = self.covectors()
            n = self.nlines
            orth = [set() for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    if apply_functional(cov[i], self.roots[self.line_rep[j]]).is_zero():
                        orth[i].add(j)
                        orth[j].add(i)
            self._orth = [frozenset(s) for s in orth]
        return self._orth

    def lines_of_roots(self, roots) -> frozenset[int]:
        return frozenset(self.root_line[r] for r in roots)

    def roots_of_lines(self, lines) -> frozenset[int]:
        return frozenset(r for ln in lines for r in self.line_roots[ln])

    def refls_of_lines(self, lines) -> tuple[int, ...]:
        return tuple(sorted(i for ln in lines for i in self.line_refls[ln]))

    def induced_line_perm(self, root_perm: Sequence[int]) -> tuple:
        return tuple(self.root_line[root_perm[r]] for r in self.line_rep)

    def conjugation_perm(self, root_perm: Sequence[int]) -> tuple:
        """Action of an element on reflection indices by conjugation."""
        out = []
        for refl in self.reflections:
            image_line = self.root_line[root_perm[refl.root]]
            out.append(self.line_refls[image_line][refl.exponent - 1])
        return tuple(out)

    def chain(self, lines=None, base_hint: Sequence[int] = ()) -> PermGroup:
        """Stabiliser chain of the reflection subgroup on the given lines.

        The pointwise stabiliser of a set of vectors in a reflection group is
        generated by the reflections fixing them, so every level of the chain
        is again generated by reflections and the chain needs no
        verification.  ``base_hint`` lists preferred base roots.
        """
        orth = self.orthogonal()
        current = sorted(range(self.nlines) if lines is None else set(lines))
        base, level_gens = [], []
        hints = list(base_hint)
        while current:
            b = None
            for x in hints:
                lx = self.root_line[x]
                if any(ln not in orth[lx] for ln in current):
                    b = x
                    break
            if b is None:
                b = self.line_rep[current[0]]
            base.append(b)
            level_gens.append([self.line_perm(ln) for ln in current])
            lb = self.root_line[b]
            current = [ln for ln in current if ln in orth[lb]]
        return PermGroup(self.nroots, base, level_gens)

    def group_order(self) -> int:
        return self.chain().order()

    def dump(self) -> str:
        lines = [f"G{self.group.index} {self.field_conductor} {self.dim}"]
        for i, v in enumerate(self.roots):
            lines.append(f"root {i} " + " ".join(f"[{x}]" for x in v))
        for i, c in enumerate(self.coroots):
            lines.append(f"coroot {i} " + " ".join(f"[{x}]" for x in c))
        return "\n".join(lines) + "\n"


def _lcm(a: int, b: int) -> int:
    return a * b // _gcd(a, b)


@lru_cache(maxsize=None)
def build_root_datum(group) -> RootDatum:
    """Build and validate the root datum of a group (cached per group)."""
    gid = GroupId.get(group)
    if gid != GroupId.get(gid.index):
        gid = GroupId.get(gid.index)
    datum = RootDatum(gid)
    order = datum.group_order()
    if order != AMBIENT[gid.index].order:
        raise ConfigurationError(f"{gid}: group order {order}, expected {AMBIENT[gid.index].order}")
    return datum


def all_reflections(datum: RootDatum) -> list[Reflection]:
    return list(datum.reflections)
