"""Cartan data, root data, Weyl reflections, and invariant quadratic forms.

A Cartan datum is a finite index set with a symmetric integer pairing
(i . j) subject to evenness/negativity axioms; a root datum realizes it
by simple roots and coroots inside a dual pair of lattices.  This module
validates the axioms, computes dual Cartan data, classifies Dynkin types
against the finite catalogue, generates root orbits under the simple
reflections, and tests Weyl invariance of integer quadratic forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .exactalg import IntMatrix, dot, hnf_columns, lattice_equal, vec_scale, vec_sub


class RootDataError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan data


@dataclass(frozen=True)
class CartanDatum:
    """Index set {0..l-1} with the symmetric pairing matrix (i . j)."""

    pairing: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "CartanDatum":
        return CartanDatum(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.pairing)

    def dotp(self, i: int, j: int) -> int:
        return self.pairing[i][j]

    def cartan_entry(self, i: int, j: int) -> int:
        num = 2 * self.pairing[i][j]
        if num % self.pairing[i][i] != 0:
            raise RootDataError(f"2(i.j)/(i.i) is not an integer at ({i},{j})")
        return num // self.pairing[i][i]

    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        return tuple(tuple(self.cartan_entry(i, j) for j in range(n)) for i in range(n))

    def braid_constant(self, i: int, j: int) -> int:
        """h(i,j) in {2,3,4,6} from 4(i.j)(j.i)/((i.i)(j.j)) in {0,1,2,3}."""
        num = 4 * self.pairing[i][j] * self.pairing[j][i]
        den = self.pairing[i][i] * self.pairing[j][j]
        if num % den != 0:
            raise RootDataError(f"braid ratio not integral at ({i},{j})")
        ratio = num // den
        table = {0: 2, 1: 3, 2: 4, 3: 6}
        if ratio not in table:
            raise RootDataError(f"braid ratio {ratio} outside finite range at ({i},{j})")
        return table[ratio]


@dataclass(frozen=True)
class CartanReport:
    ok: bool
    checks: tuple[tuple[str, bool, str], ...]
    cartan_matrix: tuple[tuple[int, ...], ...] | None
    braid: tuple[tuple[int, ...], ...] | None

    def failures(self) -> list[str]:
        return [name for name, good, _ in self.checks if not good]


def _leading_minors_positive(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    for k in range(1, n + 1):
        sub = IntMatrix.from_rows([row[:k] for row in m[:k]])
        if sub.det() <= 0:
            return False
    return True


def validate_cartan(d: CartanDatum) -> CartanReport:
    n = d.size
    if any(len(r) != n for r in d.pairing):
        raise RootDataError("pairing matrix is not square")
    checks = []
    sym = all(d.pairing[i][j] == d.pairing[j][i] for i in range(n) for j in range(n))
    checks.append(("symmetric", sym, ""))
    if not sym:
        raise RootDataError("pairing matrix is not symmetric")

    diag_ok = all(d.pairing[i][i] > 0 and d.pairing[i][i] % 2 == 0 for i in range(n))
    checks.append(("diagonal positive even", diag_ok, ""))

    off_ok = True
    detail = ""
    if diag_ok:
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                num = 2 * d.pairing[i][j]
                if num % d.pairing[i][i] != 0 or num // d.pairing[i][i] > 0:
                    off_ok = False
                    detail = f"({i},{j})"
    else:
        off_ok = False
    checks.append(("off-diagonal integral nonpositive", off_ok, detail))

    finite = diag_ok and _leading_minors_positive(d.pairing)
    checks.append(("positive definite (finite type)", finite, ""))

    ok = diag_ok and off_ok and finite
    cm = d.cartan_matrix() if ok else None
    braid = (
        tuple(tuple(d.braid_constant(i, j) if i != j else 0 for j in range(n)) for i in range(n))
        if ok
        else None
    )
    return CartanReport(ok, tuple(checks), cm, braid)


def scaling_constant(d: CartanDatum) -> int:
    """Smallest positive m with m / (2 (i.i)) integral for every i."""
    if d.size == 0:
        return 2
    return lcm(*(2 * d.pairing[i][i] for i in range(d.size)))


def dual_cartan(d: CartanDatum) -> CartanDatum:
    """(I, dual-dot) with i dual-dot j = m_I (i.j) / ((i.i)(j.j))."""
    n = d.size
    m = scaling_constant(d)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            num = m * d.pairing[i][j]
            den = d.pairing[i][i] * d.pairing[j][j]
            if num % den != 0:
                raise RootDataError("dual pairing is not integral")
            row.append(num // den)
        rows.append(tuple(row))
    dual = CartanDatum(tuple(rows))
    for i in range(n):
        if dual.pairing[i][i] % 2 != 0 or dual.pairing[i][i] <= 0:
            raise RootDataError("dual datum fails the evenness axiom")
        for j in range(n):
            if i != j and dual.braid_constant(i, j) != d.braid_constant(i, j):
                raise RootDataError("braid constants changed under duality")
    return dual


# ---------------------------------------------------------------------------
# Dynkin classification


def _chain(n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    return a


def _catalogue_matrix(family: str, n: int) -> tuple[tuple[int, ...], ...] | None:
    if family == "A" and n >= 1:
        return tuple(map(tuple, _chain(n)))
    if family == "B" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2  # last simple root short
        return tuple(map(tuple, a))
    if family == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2  # last simple root long
        return tuple(map(tuple, a))
    if family == "D" and n >= 4:
        a = _chain(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return tuple(map(tuple, a))
    if family == "E" and n in (6, 7, 8):
        a = _chain(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        a[2][n - 1] = a[n - 1][2] = -1
        return tuple(map(tuple, a))
    if family == "F" and n == 4:
        a = _chain(4)
        a[1][2] = -2
        a[2][1] = -1
        return tuple(map(tuple, a))
    if family == "G" and n == 2:
        return ((2, -1), (-3, 2))
    return None


def _matches_up_to_relabeling(mat, cat) -> bool:
    n = len(mat)
    row_sig = sorted(sorted(r) for r in mat)
    cat_sig = sorted(sorted(r) for r in cat)
    if row_sig != cat_sig:
        return False
    for perm in itertools.permutations(range(n)):
        if all(mat[perm[i]][perm[j]] == cat[i][j] for i in range(n) for j in range(n)):
            return True
    return False


@dataclass(frozen=True)
class DynkinComponent:
    label: str
    nodes: tuple[int, ...]
    aliases: tuple[str, ...]


def classify_cartan(d: CartanDatum) -> list[DynkinComponent]:
    """Isomorphism type of each connected component, from the catalogue A-G."""
    report = validate_cartan(d)
    if not report.ok:
        raise RootDataError(f"not a finite-type Cartan datum: {report.failures()}")
    n = d.size
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, nodes = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            nodes.append(i)
            for j in range(n):
                if not seen[j] and d.pairing[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        nodes.sort()
        comps.append(tuple(nodes))
    comps.sort()

    out = []
    cm = d.cartan_matrix()
    for nodes in comps:
        k = len(nodes)
        sub = [[cm[i][j] for j in nodes] for i in nodes]
        matches = []
        for family in "ABCDEFG":
            cat = _catalogue_matrix(family, k)
            if cat is not None and _matches_up_to_relabeling(sub, cat):
                matches.append(f"{family}{k}")
        if not matches:
            raise RootDataError(f"component {nodes} not in the finite catalogue")
        if matches == ["A1"]:
            aliases = ("A1", "B1", "C1")
        else:
            aliases = tuple(matches)
        # prefer the latest family letter so a B2=C2 component reports as C2
        label = matches[-1] if set(matches) == {"B2", "C2"} else matches[0]
        out.append(DynkinComponent(label, nodes, aliases))
    return out


# ---------------------------------------------------------------------------
# Root data


@dataclass(frozen=True)
class RootDatum:
    """Dual lattice pair (Y, X) with simple coroots/roots realizing a datum.

    Y and X are both Z^rank and the perfect pairing <y, x> is the standard
    dot product in the chosen dual bases.
    """

    cartan: CartanDatum
    rank: int
    coroots: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cm = self.cartan.cartan_matrix()
        for i, cv in enumerate(self.coroots):
            if len(cv) != self.rank:
                raise RootDataError("coroot has wrong length")
            for j, rv in enumerate(self.roots):
                if dot(cv, rv) != cm[i][j]:
                    raise RootDataError(
                        f"<coroot {i}, root {j}> = {dot(cv, rv)} != a_{i}{j} = {cm[i][j]}"
                    )

    @property
    def nroots(self) -> int:
        return len(self.roots)

    def pairing(self, y: Sequence[int], x: Sequence[int]) -> int:
        return dot(y, x)

    def coroot_lattice(self) -> IntMatrix:
        if not self.coroots:
            return IntMatrix.zeros(self.rank, 0)
        return hnf_columns(IntMatrix.from_cols(self.coroots))

    def root_lattice(self) -> IntMatrix:
        if not self.roots:
            return IntMatrix.zeros(self.rank, 0)
        return hnf_columns(IntMatrix.from_cols(self.roots))

    @property
    def is_semisimple(self) -> bool:
        return len(self.coroots) == self.rank and self.coroot_lattice().ncols == self.rank

    @property
    def is_simply_connected(self) -> bool:
        return self.is_semisimple and lattice_equal(
            self.coroot_lattice(), IntMatrix.identity(self.rank)
        )

    @property
    def is_adjoint(self) -> bool:
        return (
            len(self.roots) == self.rank
            and lattice_equal(self.root_lattice(), IntMatrix.identity(self.rank))
        )

    def dual(self) -> "RootDatum":
        """Swap character and cocharacter lattices; type is the dual datum."""
        return RootDatum(dual_cartan(self.cartan), self.rank, self.roots, self.coroots)


def simple_reflection(rd: RootDatum, i: int, v: Sequence[int], side: str = "cochar") -> tuple[int, ...]:
    """s_i(v): subtract the pairing against the i-th root (or coroot)."""
    if not 0 <= i < len(rd.coroots):
        raise RootDataError(f"reflection index {i} out of range")
    if side == "cochar":
        return vec_sub(v, vec_scale(dot(v, rd.roots[i]), rd.coroots[i]))
    if side == "char":
        return vec_sub(v, vec_scale(dot(rd.coroots[i], v), rd.roots[i]))
    raise RootDataError("side must be 'cochar' or 'char'")


# largest number of roots of any rank-r finite system is 240 (rank 8)
_ROOT_COUNT_CAP = 260


def generate_roots(rd: RootDatum) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """The full orbits (Phi, Phi_check) with the W-equivariant bijection.

    Returned as lex-sorted parallel tuples: roots[k] corresponds to
    coroots[k].
    """
    pairs = {rd.roots[i]: rd.coroots[i] for i in range(len(rd.roots))}
    queue = list(pairs.items())
    while queue:
        root, coroot = queue.pop()
        for i in range(len(rd.roots)):
            r2 = simple_reflection(rd, i, root, side="char")
            c2 = simple_reflection(rd, i, coroot, side="cochar")
            if r2 in pairs:
                if pairs[r2] != c2:
                    raise RootDataError("root/coroot bijection broke during orbit closure")
            else:
                pairs[r2] = c2
                queue.append((r2, c2))
                if len(pairs) > _ROOT_COUNT_CAP * max(1, rd.rank // 8 + 1):
                    raise RootDataError("orbit exceeds catalogue bound; not finite type")
    roots = tuple(sorted(pairs))
    coroots = tuple(pairs[r] for r in roots)
    if len(roots) != len(set(coroots)):
        raise RootDataError("coroot orbit is not in bijection with the root orbit")
    return roots, coroots


# ---------------------------------------------------------------------------
# Weyl-invariant quadratic forms


@dataclass(frozen=True)
class WeylQuadraticForm:
    """Integer quadratic form on Y given by its Gram matrix B.

    B must be symmetric with even diagonal, so q(y) = (y^T B y)/2 is an
    integer and b(y1, y2) = q(y1+y2) - q(y1) - q(y2).
    """

    bilinear: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_matrix(rows: Sequence[Sequence[int]]) -> "WeylQuadraticForm":
        b = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(b)
        if any(len(r) != n for r in b):
            raise RootDataError("Gram matrix is not square")
        if any(b[i][j] != b[j][i] for i in range(n) for j in range(n)):
            raise RootDataError("Gram matrix is not symmetric")
        if any(b[i][i] % 2 != 0 for i in range(n)):
            raise RootDataError("Gram matrix diagonal must be even")
        return WeylQuadraticForm(b)

    @staticmethod
    def from_values(diag_q: Sequence[int], off_b: Sequence[Sequence[int]] | None = None) -> "WeylQuadraticForm":
        n = len(diag_q)
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            b[i][i] = 2 * diag_q[i]
        if off_b is not None:
            for i in range(n):
                for j in range(n):
                    if i != j:
                        b[i][j] = off_b[i][j]
        return WeylQuadraticForm.from_matrix(b)

    @property
    def rank(self) -> int:
        return len(self.bilinear)

    def b(self, y1: Sequence[int], y2: Sequence[int]) -> int:
        return sum(y1[i] * self.bilinear[i][j] * y2[j] for i in range(self.rank) for j in range(self.rank))

    def q(self, y: Sequence[int]) -> int:
        return self.b(y, y) // 2

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_rows(self.bilinear)

    def restrict(self, basis: IntMatrix) -> "WeylQuadraticForm":
        """Gram matrix in the coordinates of a sublattice basis (columns)."""
        cols = basis.cols_list()
        return WeylQuadraticForm.from_matrix(
            [[self.b(u, v) for v in cols] for u in cols]
        )


def is_weyl_invariant(q: WeylQuadraticForm, rd: RootDatum) -> bool:
    """q(s_i y) = q(y) on basis vectors and pairwise sums of basis vectors.

    A quadratic form is determined by its values on that finite set, and
    the Weyl group is generated by the simple reflections, so this check
    is sufficient.  When it passes, the reflection identity
    b(coroot_i, y) = q(coroot_i) <y, root_i> is asserted as well.
    """
    if q.rank != rd.rank:
        raise RootDataError("form rank does not match the root datum")
    basis = [tuple(1 if k == j else 0 for k in range(rd.rank)) for j in range(rd.rank)]
    gens = list(basis)
    for a in range(rd.rank):
        for b_ in range(a + 1, rd.rank):
            gens.append(tuple(x + y for x, y in zip(basis[a], basis[b_])))
    for i in range(len(rd.coroots)):
        for v in gens:
            if q.q(simple_reflection(rd, i, v, side="cochar")) != q.q(v):
                return False
    for i, cv in enumerate(rd.coroots):
        for e in basis:
            assert q.b(cv, e) == q.q(cv) * dot(e, rd.roots[i])
    return True


# ---------------------------------------------------------------------------
# Presets


def _simply_connected(cartan_rows: Sequence[Sequence[int]]) -> tuple[CartanDatum, tuple, tuple]:
    """Y = Z[coroots] with the coroots as the standard basis."""
    d = CartanDatum.from_rows(cartan_rows)
    n = d.size
    cm = d.cartan_matrix()
    coroots = tuple(tuple(1 if k == i else 0 for k in range(n)) for i in range(n))
    roots = tuple(tuple(cm[i][j] for i in range(n)) for j in range(n))
    return d, coroots, roots


def preset(name: str) -> tuple[RootDatum, WeylQuadraticForm]:
    """Named root datum plus its default Weyl-invariant quadratic form."""
    key = name.strip()
    if key in ("Sp2",):
        key = "SL2"
    if key in ("T2", "torus2", "rank2-torus"):
        key = "GL1xGL1"

    if key == "GL1":
        rd = RootDatum(CartanDatum(()), 1, (), ())
        return rd, WeylQuadraticForm.from_matrix([[2]])
    if key == "GL1xGL1":
        rd = RootDatum(CartanDatum(()), 2, (), ())
        return rd, WeylQuadraticForm.from_matrix([[2, 0], [0, 2]])
    if key == "SL2":
        rd = RootDatum(CartanDatum.from_rows([[2]]), 1, ((1,),), ((2,),))
        return rd, WeylQuadraticForm.from_matrix([[2]])
    if key == "PGL2":
        rd = RootDatum(CartanDatum.from_rows([[2]]), 1, ((2,),), ((1,),))
        return rd, WeylQuadraticForm.from_matrix([[2]])
    if key == "GL2":
        rd = RootDatum(CartanDatum.from_rows([[2]]), 2, ((1, -1),), ((1, -1),))
        return rd, WeylQuadraticForm.from_matrix([[2, 0], [0, 2]])
    if key == "SL3":
        d, coroots, roots = _simply_connected([[2, -1], [-1, 2]])
        rd = RootDatum(d, 2, coroots, roots)
        return rd, WeylQuadraticForm.from_matrix([[2, -1], [-1, 2]])
    if key in ("Sp4", "Sp6"):
        # symplectic coordinates; the first simple root is the long one,
        # so the first simple coroot is short with q = 1
        n = 2 if key == "Sp4" else 3
        pair = [[0] * n for _ in range(n)]
        pair[0][0] = 4
        for i in range(1, n):
            pair[i][i] = 2
        pair[0][1] = pair[1][0] = -2
        for i in range(1, n - 1):
            pair[i][i + 1] = pair[i + 1][i] = -1
        coroots = [tuple(1 if k == 0 else 0 for k in range(n))]
        roots = [tuple(2 if k == 0 else 0 for k in range(n))]
        for i in range(1, n):
            cv = [0] * n
            cv[i - 1], cv[i] = -1, 1
            coroots.append(tuple(cv))
            roots.append(tuple(cv))
        rd = RootDatum(CartanDatum.from_rows(pair), n, tuple(coroots), tuple(roots))
        b = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        return rd, WeylQuadraticForm.from_matrix(b)
    if key == "Spin5":
        # first simple root long, so the short coroot sits first with q = 1
        d, coroots, roots = _simply_connected([[4, -2], [-2, 2]])
        rd = RootDatum(d, 2, coroots, roots)
        return rd, WeylQuadraticForm.from_matrix([[2, -2], [-2, 4]])
    if key == "G2":
        d, coroots, roots = _simply_connected([[2, -3], [-3, 6]])
        rd = RootDatum(d, 2, coroots, roots)
        return rd, WeylQuadraticForm.from_matrix([[6, -3], [-3, 2]])
    raise RootDataError(f"unknown preset {name!r}")


PRESET_NAMES = ("GL1", "GL1xGL1", "SL2", "Sp2", "PGL2", "GL2", "SL3", "Sp4", "Sp6", "Spin5", "G2")
