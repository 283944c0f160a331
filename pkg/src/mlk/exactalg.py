"""Exact linear algebra over Z, Gaussian integers, and finite abelian groups.

Everything in this package is exact: matrices hold arbitrary-precision
Python integers, lattice quotients go through the Smith normal form, and
fourth roots of unity live in Z[i].  No floating point is used here or
anywhere downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence


class ExactAlgError(ValueError):
    pass


class ContainmentError(ExactAlgError):
    """A vector or sublattice is not contained where it should be."""


# ---------------------------------------------------------------------------
# Gaussian integers


@dataclass(frozen=True)
class GaussInt:
    """An element of Z[i].  Units are 1, -1, i, -i."""

    re: int
    im: int

    def __add__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: "GaussInt") -> "GaussInt":
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    @property
    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    @property
    def is_unit(self) -> bool:
        return self.norm == 1

    def __pow__(self, k: int) -> "GaussInt":
        if k < 0:
            if not self.is_unit:
                raise ExactAlgError("negative power of a non-unit in Z[i]")
            return self.conj() ** (-k)
        result = GI_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "GaussInt":
        return GaussInt(c * self.re, c * self.im)

    def __repr__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GI_ZERO = GaussInt(0, 0)
GI_ONE = GaussInt(1, 0)
GI_I = GaussInt(0, 1)


def i_power(k: int) -> GaussInt:
    """i**k as a Gaussian integer."""
    return (GI_ONE, GI_I, GaussInt(-1, 0), GaussInt(0, -1))[k % 4]


# ---------------------------------------------------------------------------
# Integer matrices


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        tup = tuple(tuple(int(x) for x in r) for r in rows)
        if tup and any(len(r) != len(tup[0]) for r in tup):
            raise ExactAlgError("ragged matrix")
        return IntMatrix(tup)

    @staticmethod
    def from_cols(cols: Sequence[Sequence[int]]) -> "IntMatrix":
        if not cols:
            return IntMatrix(())
        return IntMatrix.from_rows(list(zip(*cols)))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(nrows: int, ncols: int) -> "IntMatrix":
        return IntMatrix(tuple((0,) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def cols_list(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def t(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries))) if self.entries else self

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ExactAlgError("matrix shape mismatch")
        ot = other.t().entries
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in ot)
                for r in self.entries
            )
        )

    def vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if self.ncols != len(v):
            raise ExactAlgError("matrix/vector shape mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ExactAlgError("determinant of a non-square matrix")
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    @property
    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and self.det() in (1, -1)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: int, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(c * a for a in v)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.d.nrows, self.d.ncols)
        return tuple(self.d[i, i] for i in range(k))


def _row_op(m: list[list[int]], dst: int, src: int, q: int) -> None:
    if q:
        m[dst] = [a - q * b for a, b in zip(m[dst], m[src])]


def _col_op(m: list[list[int]], dst: int, src: int, q: int) -> None:
    if q:
        for r in m:
            r[dst] -= q * r[src]


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for r in m:
        r[i], r[j] = r[j], r[i]


def smith_normal_form(mat: IntMatrix | Sequence[Sequence[int]]) -> SNFResult:
    """U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0."""
    if not isinstance(mat, IntMatrix):
        mat = IntMatrix.from_rows(mat)
    nr, nc = mat.nrows, mat.ncols
    d = [list(r) for r in mat.entries]
    u = [list(r) for r in IntMatrix.identity(nr).entries]
    v = [list(r) for r in IntMatrix.identity(nc).entries]

    for t in range(min(nr, nc)):
        # locate a pivot of minimal absolute value in the trailing block
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if d[i][j] != 0 and (piv is None or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv != (t, t):
            _swap_rows(d, t, piv[0])
            _swap_rows(u, t, piv[0])
            _swap_cols(d, t, piv[1])
            _swap_cols(v, t, piv[1])

        while True:
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            dirty = False
            for i in range(nr):
                if i != t and d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    _row_op(d, i, t, q)
                    _row_op(u, i, t, q)
                    if d[i][t] != 0:  # remainder beats the pivot, promote it
                        _swap_rows(d, t, i)
                        _swap_rows(u, t, i)
                    dirty = True
            for j in range(nc):
                if j != t and d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    _col_op(d, j, t, q)
                    _col_op(v, j, t, q)
                    if d[t][j] != 0:
                        _swap_cols(d, t, j)
                        _swap_cols(v, t, j)
                    dirty = True
            if dirty:
                continue
            # pivot row and column are clear; enforce divisibility of the rest
            bad = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if d[i][j] % d[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            d[t] = [a + b for a, b in zip(d[t], d[bad])]
            u[t] = [a + b for a, b in zip(u[t], u[bad])]

    res = SNFResult(IntMatrix.from_rows(u), IntMatrix.from_rows(d), IntMatrix.from_rows(v))
    assert res.u.mul(mat).mul(res.v).entries == res.d.entries
    return res


def solve_vector(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """An integer solution x of A x = b, or None.  Free coordinates are 0."""
    snf = smith_normal_form(a)
    ub = snf.u.vec(b)
    diag = snf.diagonal
    z = [0] * a.ncols
    for i in range(a.nrows):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            z[i] = ub[i] // di
    return snf.v.vec(z)


def solve_columns(a: IntMatrix, s: IntMatrix) -> IntMatrix:
    """T with A T = S, integral; raises ContainmentError if no such T."""
    cols = []
    for j in range(s.ncols):
        x = solve_vector(a, s.col(j))
        if x is None:
            raise ContainmentError(f"column {j} is not in the span of the ambient lattice")
        cols.append(x)
    if not cols:
        return IntMatrix.zeros(a.ncols, 0)
    return IntMatrix.from_cols(cols)


def kernel(mat: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the integer kernel of M."""
    snf = smith_normal_form(mat)
    diag = snf.diagonal
    rank = sum(1 for x in diag if x != 0)
    cols = [snf.v.col(j) for j in range(rank, mat.ncols)]
    if not cols:
        return IntMatrix.zeros(mat.ncols, 0)
    return IntMatrix.from_cols(cols)


def kernel_mod(mat: IntMatrix | Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Basis of the full-rank sublattice {y : M y = 0 mod n} as columns."""
    if not isinstance(mat, IntMatrix):
        mat = IntMatrix.from_rows(mat)
    if n < 1:
        raise ExactAlgError("modulus must be >= 1")
    snf = smith_normal_form(mat)
    diag = snf.diagonal
    scale = []
    for j in range(mat.ncols):
        dj = diag[j] if j < len(diag) else 0
        scale.append(1 if dj == 0 else n // gcd(dj, n))
    cols = [vec_scale(scale[j], snf.v.col(j)) for j in range(mat.ncols)]
    basis = hnf_columns(IntMatrix.from_cols(cols)) if cols else IntMatrix.zeros(mat.ncols, 0)
    for j in range(basis.ncols):
        assert all(x % n == 0 for x in mat.vec(basis.col(j)))
    return basis


def hnf_columns(mat: IntMatrix) -> IntMatrix:
    """Column Hermite form: canonical basis of the column lattice.

    Lower-echelon with positive pivots and earlier columns reduced mod the
    pivot; zero columns dropped.  Two matrices span the same lattice iff
    their Hermite forms are equal.
    """
    m = [list(r) for r in mat.entries]
    nr = mat.nrows
    nc = mat.ncols
    k = 0
    for i in range(nr):
        live = [j for j in range(k, nc) if m[i][j] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda j: abs(m[i][j]))
            j0 = live[0]
            for j in live[1:]:
                q = m[i][j] // m[i][j0]
                _col_op(m, j, j0, q)
            live = [j for j in live if m[i][j] != 0]
        j0 = live[0]
        _swap_cols(m, k, j0)
        if m[i][k] < 0:
            for r in m:
                r[k] = -r[k]
        for j in range(k):
            q = m[i][j] // m[i][k]
            _col_op(m, j, k, q)
        k += 1
    cols = [tuple(r[j] for r in m) for j in range(k)]
    if not cols:
        return IntMatrix.zeros(nr, 0)
    return IntMatrix.from_cols(cols)


def lattice_equal(a: IntMatrix, b: IntMatrix) -> bool:
    return hnf_columns(a).entries == hnf_columns(b).entries


def lattice_intersection(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Basis of the intersection of two full-rank column lattices in Z^d."""
    d = a.nrows
    if b.nrows != d:
        raise ExactAlgError("ambient dimension mismatch")
    stacked = IntMatrix.from_rows(
        [list(a.row(i)) + [-x for x in b.row(i)] for i in range(d)]
    )
    ker = kernel(stacked)
    cols = [a.vec(ker.col(j)[: a.ncols]) for j in range(ker.ncols)]
    if not cols:
        return IntMatrix.zeros(d, 0)
    return hnf_columns(IntMatrix.from_cols(cols))


def concat_columns(*mats: IntMatrix) -> IntMatrix:
    cols: list[tuple[int, ...]] = []
    nrows = None
    for m in mats:
        if m.ncols == 0:
            continue
        if nrows is None:
            nrows = m.nrows
        elif m.nrows != nrows:
            raise ExactAlgError("row count mismatch in concatenation")
        cols.extend(m.cols_list())
    if nrows is None:
        raise ExactAlgError("cannot concatenate empty column lists")
    return IntMatrix.from_cols(cols) if cols else IntMatrix.zeros(nrows, 0)


# ---------------------------------------------------------------------------
# Finite(ly generated) abelian groups and lattice quotients


@dataclass(frozen=True)
class FinAbGroup:
    """Invariant factors d1 | d2 | ... (each >= 2) plus a free rank.

    Elements are coordinate tuples: torsion coordinates first (reduced mod
    the factor), then free coordinates.
    """

    factors: tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self) -> None:
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ExactAlgError("invariant factors must form a divisibility chain")
        if any(f < 2 for f in self.factors):
            raise ExactAlgError("invariant factors must be >= 2")

    @property
    def rank(self) -> int:
        return len(self.factors) + self.free_rank

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for f in self.factors:
            n *= f
        return n

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.factors[-1] if self.factors else 1

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.rank:
            raise ExactAlgError("coordinate length mismatch")
        out = [c % f for c, f in zip(coords, self.factors)]
        out.extend(coords[len(self.factors):])
        return tuple(out)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def elements(self) -> Iterator[tuple[int, ...]]:
        if self.free_rank:
            raise ExactAlgError("cannot enumerate a group with free part")
        yield from itertools.product(*(range(f) for f in self.factors))

    def describe(self) -> str:
        parts = [f"Z/{f}" for f in self.factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Quotient:
    """A quotient lattice L_ambient / L_sub with a coordinate projection."""

    group: FinAbGroup
    ambient: IntMatrix
    _u: IntMatrix            # SNF row transform of the sub lattice in ambient coords
    _kept: tuple[int, ...]   # rows of U giving torsion coordinates
    _free: tuple[int, ...]   # rows of U giving free coordinates

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        a = solve_vector(self.ambient, v)
        if a is None:
            raise ContainmentError("vector is not in the ambient lattice")
        w = self._u.vec(a)
        coords = [w[i] for i in self._kept] + [w[i] for i in self._free]
        return self.group.reduce(coords)

    def generator_lifts(self) -> list[tuple[int, ...]]:
        """Ambient-coordinate vectors mapping to the standard generators."""
        n = self._u.nrows
        uinv_cols = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            x = solve_vector(self._u, e)
            assert x is not None
            uinv_cols.append(x)
        lifts = []
        for i in list(self._kept) + list(self._free):
            lifts.append(self.ambient.vec(uinv_cols[i]))
        return lifts


def quotient_group(ambient: IntMatrix, sub: IntMatrix) -> Quotient:
    """L_ambient / L_sub as invariant factors with a projection map.

    `ambient` is a square full-rank basis matrix (columns); `sub` is any
    matrix whose columns generate the sublattice.  Raises ContainmentError
    if the columns of `sub` are not inside the ambient lattice.
    """
    if ambient.nrows != ambient.ncols or ambient.det() == 0:
        raise ExactAlgError("ambient basis must be square and full rank")
    t = solve_columns(ambient, sub) if sub.ncols else IntMatrix.zeros(ambient.ncols, 0)
    if t.ncols == 0:
        n = ambient.ncols
        group = FinAbGroup((), n)
        return Quotient(group, ambient, IntMatrix.identity(n), (), tuple(range(n)))
    snf = smith_normal_form(t)
    diag = snf.diagonal
    nonzero = [d for d in diag if d != 0]
    k = len(nonzero)
    kept = tuple(i for i, d in enumerate(nonzero) if d >= 2)
    free = tuple(range(k, ambient.ncols))
    group = FinAbGroup(tuple(d for d in nonzero if d >= 2), len(free))
    return Quotient(group, ambient, snf.u, kept, free)
