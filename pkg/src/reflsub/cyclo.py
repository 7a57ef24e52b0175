"""Exact arithmetic in cyclotomic fields and linear algebra over them.

An element of Q(zeta_N) is stored as an integer coefficient vector over the
power basis 1, z, ..., z^(phi(N)-1) together with one positive common
denominator.  Everything is exact; there is no floating point here.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # b monic, division is exact
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    assert not any(a), "inexact polynomial division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    num, den = [1], [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _mobius(n // d)
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        elif mu == -1:
            den = _poly_mul(den, factor)
    return tuple(_poly_divexact(num, den))


class _Field:
    """Per-conductor tables: reduction of z^k and the trace form."""

    def __init__(self, n: int):
        self.n = n
        phi_poly = cyclotomic_polynomial(n)
        self.phi = d = len(phi_poly) - 1
        # red[k] = sparse coefficients of z^k in the power basis, 0 <= k < n
        red = []
        vec = [0] * d
        vec[0] = 1
        for _ in range(n):
            red.append(tuple((i, c) for i, c in enumerate(vec) if c))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(d):
                    vec[i] -= top * phi_poly[i]
        self.red = red
        # trace of z^k over Q is the Ramanujan sum c_n(k)
        self.trace = tuple(self._ramanujan(k) for k in range(d))

    def _ramanujan(self, k: int) -> int:
        g = gcd(k, self.n)
        total = 0
        for dd in range(1, g + 1):
            if g % dd == 0:
                total += _mobius(self.n // dd) * dd
        return total


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


class CycNum:
    """An element of the cyclotomic field Q(zeta_N)."""

    __slots__ = ("n", "nums", "den", "_hash")

    def __init__(self, n: int, nums: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        g = den
        for x in nums:
            if x:
                g = gcd(g, x)
                if g == 1:
                    break
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self.n = n
        self.nums = tuple(nums)
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def rational(cls, q, n: int = 1) -> CycNum:
        q = Fraction(q)
        d = _field(n).phi
        return cls(n, [q.numerator] + [0] * (d - 1), q.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycNum:
        """The root of unity exp(2 pi i k / n)."""
        f = _field(n)
        nums = [0] * f.phi
        for i, c in f.red[k % n]:
            nums[i] = c
        return cls(n, nums)

    @classmethod
    def from_powers(cls, n: int, coeffs: dict[int, object]) -> CycNum:
        """Build sum(c * zeta_n^k for k, c in coeffs.items())."""
        total = cls.rational(0, n)
        for k, c in coeffs.items():
            total = total + cls.zeta(n, k) * c
        return total

    # -- conversions --------------------------------------------------------
    def promote(self, m: int) -> CycNum:
        """Re-express in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed Q(zeta_{self.n}) in Q(zeta_{m})")
        step = m // self.n
        f = _field(m)
        out = [0] * f.phi
        for j, c in enumerate(self.nums):
            if c:
                for i, r in f.red[(j * step) % m]:
                    out[i] += c * r
        return CycNum(m, out, self.den)

    def _pair(self, other) -> tuple[CycNum, CycNum]:
        if not isinstance(other, CycNum):
            other = CycNum.rational(other, self.n)
        if other.n == self.n:
            return self, other
        m = _lcm(self.n, other.n)
        return self.promote(m), other.promote(m)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def to_complex(self) -> complex:
        """Value under the embedding zeta_N -> exp(2 pi i / N)."""
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z ** k for k, c in enumerate(self.nums)) / self.den

    def trace(self) -> Fraction:
        """Absolute trace Tr_{Q(zeta_N)/Q}."""
        t = _field(self.n).trace
        return Fraction(sum(a * b for a, b in zip(self.nums, t)), self.den)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a.den == b.den:
            return CycNum(a.n, [x + y for x, y in zip(a.nums, b.nums)], a.den)
        return CycNum(a.n, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)],
                      a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, [-x for x in self.nums], self.den)

    def __sub__(self, other):
        a, b = self._pair(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            q = Fraction(other)
            return CycNum(self.n, [x * q.numerator for x in self.nums],
                          self.den * q.denominator)
        a, b = self._pair(other)
        f = _field(a.n)
        n, d = a.n, f.phi
        red = f.red
        out = [0] * d
        for i, x in enumerate(a.nums):
            if not x:
                continue
            for j, y in enumerate(b.nums):
                if not y:
                    continue
                k = i + j
                if k < d:
                    out[k] += x * y
                else:
                    xy = x * y
                    for idx, c in red[k % n]:
                        out[idx] += xy * c
        return CycNum(n, out, a.den * b.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> CycNum:
        """Apply the automorphism zeta -> zeta^k (k coprime to the conductor)."""
        n = self.n
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        f = _field(n)
        out = [0] * f.phi
        for j, c in enumerate(self.nums):
            if c:
                for i, r in f.red[(j * k) % n]:
                    out[i] += c * r
        return CycNum(n, out, self.den)

    def conjugate(self) -> CycNum:
        return self.galois(-1 % self.n) if self.n > 2 else self

    def norm(self) -> Fraction:
        """Absolute norm N_{Q(zeta_N)/Q}."""
        prod = self
        for k in range(2, self.n):
            if gcd(k, self.n) == 1:
                prod = prod * self.galois(k)
        return prod.to_fraction()

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNum.rational(1 / self.to_fraction(), self.n)
        # product of the non-trivial Galois conjugates over the norm
        prod = CycNum.rational(1, self.n)
        for k in range(2, self.n):
            if gcd(k, self.n) == 1:
                prod = prod * self.galois(k)
        nrm = (prod * self).to_fraction()
        return prod * (1 / nrm)

    def __truediv__(self, other):
        if not isinstance(other, CycNum):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self * (1 / q)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.rational(1, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CycNum):
            try:
                other = CycNum.rational(other, self.n)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._pair(other)
        return a.den == b.den and a.nums == b.nums

    def __hash__(self):
        # the normalised trace does not depend on the conductor used
        if self._hash is None:
            f = _field(self.n)
            self._hash = hash((self.trace() / f.phi, self.is_zero()))
        return self._hash

    def key(self) -> tuple:
        """Deterministic sort key (for numbers sharing a conductor)."""
        return (self.n, self.nums, self.den)

    def __repr__(self):
        return f"CycNum({self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.nums):
            if not c:
                continue
            q = Fraction(c, self.den)
            if k == 0:
                terms.append(str(q))
            else:
                mono = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
                if q == 1:
                    terms.append(mono)
                elif q == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{q}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def common_conductor(values: Iterable[CycNum]) -> int:
    n = 1
    for v in values:
        n = _lcm(n, v.n)
    return n


def sqrt5() -> CycNum:
    """sqrt(5) as the quadratic Gauss sum in Q(zeta_5)."""
    return CycNum.from_powers(5, {1: 1, 2: -1, 3: -1, 4: 1})


def golden_ratio() -> CycNum:
    return (sqrt5() + 1) / 2


def sqrt_minus(p: int) -> CycNum:
    """sqrt(-p) for a prime p = 3 mod 4, as a Gauss sum in Q(zeta_p)."""
    residues = {(x * x) % p for x in range(1, p)}
    return CycNum.from_powers(p, {k: (1 if k in residues else -1) for k in range(1, p)})


# ---------------------------------------------------------------------------
# matrices

class Matrix:
    """A dense matrix of CycNum entries, stored row-major and immutable."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        built = []
        for row in rows:
            built.append(tuple(x if isinstance(x, CycNum) else CycNum.rational(x)
                               for x in row))
        if built and any(len(r) != len(built[0]) for r in built):
            raise ValueError("ragged matrix")
        self.rows = tuple(built)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, n: int, conductor: int = 1) -> Matrix:
        one, zero = CycNum.rational(1, conductor), CycNum.rational(0, conductor)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            cols = list(zip(*other.rows))
            return Matrix([[dot(r, c) for c in cols] for r in self.rows])
        return tuple(dot(r, other) for r in self.rows)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> Matrix:
        return Matrix([[a * c for a in r] for r in self.rows])

    def transpose(self) -> Matrix:
        return Matrix(zip(*self.rows))

    def conjugate(self) -> Matrix:
        return Matrix([[a.conjugate() for a in r] for r in self.rows])

    def adjoint(self) -> Matrix:
        """Conjugate transpose."""
        return self.conjugate().transpose()

    def is_identity(self) -> bool:
        return all((x == 1) if i == j else x.is_zero()
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def __repr__(self):
        return "Matrix([" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "])"


def dot(u: Sequence[CycNum], v: Sequence[CycNum]) -> CycNum:
    total = None
    for a, b in zip(u, v):
        if a.is_zero() or b.is_zero():
            continue
        t = a * b
        total = t if total is None else total + t
    if total is None:
        return CycNum.rational(0, u[0].n if u else 1)
    return total


def row_echelon(rows: Sequence[Sequence[CycNum]]) -> tuple[list[list[CycNum]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve_linear(a: Matrix, mode: str = "rank"):
    """Exact Gaussian elimination.

    mode "rank" returns an int, "row-space-basis" the reduced echelon rows as a
    Matrix, and "kernel" a list of column vectors v with a @ v == 0.
    """
    ech, pivots = row_echelon(a.rows)
    if mode == "rank":
        return len(pivots)
    if mode == "row-space-basis":
        return Matrix(ech) if ech else Matrix([])
    if mode == "kernel":
        return kernel_from_echelon(ech, pivots, a.ncols, _conductor_of(a))
    raise ValueError(f"unknown mode {mode!r}")


def _conductor_of(a: Matrix) -> int:
    return common_conductor(x for r in a.rows for x in r) if a.rows else 1


def kernel_from_echelon(ech, pivots, ncols: int, conductor: int = 1) -> list[tuple[CycNum, ...]]:
    zero, one = CycNum.rational(0, conductor), CycNum.rational(1, conductor)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(ech, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel(a: Matrix) -> list[tuple[CycNum, ...]]:
    return solve_linear(a, "kernel")


def rank(rows: Sequence[Sequence[CycNum]]) -> int:
    return len(row_echelon(rows)[1])


def in_span(ech: Sequence[Sequence[CycNum]], pivots: Sequence[int], v: Sequence[CycNum]) -> bool:
    """Is v in the row space of a reduced echelon basis?"""
    v = list(v)
    for row, p in zip(ech, pivots):
        c = v[p]
        if not c.is_zero():
            v = [x - c * y for x, y in zip(v, row)]
    return all(x.is_zero() for x in v)


def determinant(rows: Sequence[Sequence[CycNum]]) -> CycNum:
    m = [list(r) for r in rows]
    n = len(m)
    det = CycNum.rational(1, common_conductor(x for r in m for x in r) if m else 1)
    for k in range(n):
        p = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if p is None:
            return det * 0
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        piv = m[k][k]
        det = det * piv
        inv = piv.inverse()
        for i in range(k + 1, n):
            if not m[i][k].is_zero():
                f = m[i][k] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return det


def leading_minors(a: Matrix) -> list[CycNum]:
    """Leading principal minors det(a[:k, :k]) for k = 1..n, exactly."""
    return [determinant([r[:k] for r in a.rows[:k]]) for k in range(1, a.nrows + 1)]
