"""Metaplectic modification of root data.

From a Weyl-invariant quadratic form q and a cover degree n, rescale the
simple coroots, cut out the sublattice where the associated bilinear form
is divisible by n, and produce the modified root datum, its dual (the
root datum of the metaplectic dual group), the elementary 2-group
obtained by collapsing doubled vectors and modified coroots, and the
character group of the dual group's center.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exactalg import (
    IntMatrix,
    Quotient,
    concat_columns,
    hnf_columns,
    kernel_mod,
    lattice_intersection,
    quotient_group,
    solve_vector,
    vec_scale,
)
from .rootdata import (
    CartanDatum,
    DynkinComponent,
    RootDatum,
    WeylQuadraticForm,
    classify_cartan,
    is_weyl_invariant,
    validate_cartan,
)


class MetaplecticError(ValueError):
    pass


@dataclass(frozen=True)
class MetaplecticStructure:
    """A Weyl-invariant quadratic form together with a cover degree n >= 1."""

    form: WeylQuadraticForm
    degree: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise MetaplecticError("cover degree must be a positive integer")


def make_structure(form: WeylQuadraticForm, degree: int, rd: RootDatum) -> MetaplecticStructure:
    if not is_weyl_invariant(form, rd):
        raise MetaplecticError("quadratic form is not Weyl invariant for this root datum")
    return MetaplecticStructure(form, degree)


def scaling_integers(ms: MetaplecticStructure, rd: RootDatum) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """n_i = n / gcd(n, q(coroot_i)), with a flag list for q(coroot_i) = 0.

    With q(coroot) = 0 the defining condition n_i * q in nZ is satisfied
    by n_i = 1 (the gcd convention with 0 gives exactly that); such
    indices are reported so callers can surface them.
    """
    n = ms.degree
    scales = []
    flagged = []
    for i, cv in enumerate(rd.coroots):
        qi = ms.form.q(cv)
        scales.append(n // gcd(n, qi))
        if qi == 0 and n > 1:
            flagged.append(i)
    return tuple(scales), tuple(flagged)


@dataclass(frozen=True)
class ModifiedRootDatum:
    """The rescaled root datum, in coordinates of a basis of the new lattice.

    `ybasis` embeds the new cocharacter lattice into the old one (columns
    are the basis vectors, in original Y coordinates).  `datum` is the
    modified root datum in those coordinates and `form` is the restricted
    quadratic form.  The modified character lattice is spanned by the
    columns of `xnumerator` divided by `xdenominator`, in original X
    coordinates.
    """

    base: RootDatum
    structure: MetaplecticStructure
    scales: tuple[int, ...]
    zero_q_coroots: tuple[int, ...]
    ybasis: IntMatrix
    datum: RootDatum
    form: WeylQuadraticForm
    xnumerator: IntMatrix
    xdenominator: int

    @property
    def degree(self) -> int:
        return self.structure.degree

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def cochar_index(self) -> int:
        """Index of the modified cocharacter lattice in the original one."""
        return abs(self.ybasis.det())

    @property
    def y_unchanged(self) -> bool:
        return self.cochar_index == 1

    @property
    def x_unchanged(self) -> bool:
        return self.y_unchanged

    def embed(self, v: tuple[int, ...]) -> tuple[int, ...]:
        """Modified-lattice coordinates -> original Y coordinates."""
        return self.ybasis.vec(v)

    def coordinates(self, y: tuple[int, ...]) -> tuple[int, ...]:
        """Original Y coordinates -> modified-lattice coordinates."""
        c = solve_vector(self.ybasis, y)
        if c is None:
            raise MetaplecticError("vector is not in the modified cocharacter lattice")
        return c

    def modified_coroots_ambient(self) -> tuple[tuple[int, ...], ...]:
        """The rescaled simple coroots in original Y coordinates."""
        return tuple(
            vec_scale(self.scales[i], self.base.coroots[i]) for i in range(len(self.base.coroots))
        )

    def modified_coroot_lattice(self) -> IntMatrix:
        cors = self.modified_coroots_ambient()
        if not cors:
            return IntMatrix.zeros(self.rank, 0)
        return hnf_columns(IntMatrix.from_cols(cors))


def modify(ms: MetaplecticStructure, rd: RootDatum) -> ModifiedRootDatum:
    """Construct the modified root datum for (q, n) on rd."""
    if not is_weyl_invariant(ms.form, rd):
        raise MetaplecticError("quadratic form is not Weyl invariant for this root datum")
    n = ms.degree
    scales, flagged = scaling_integers(ms, rd)

    if n == 1:
        ybasis = IntMatrix.identity(rd.rank)
    else:
        ybasis = kernel_mod(ms.form.matrix(), n)

    # modified Cartan datum: (i o j) = n^2 (i . j) / (n_i n_j)
    ell = rd.cartan.size
    pair_rows = []
    for i in range(ell):
        row = []
        for j in range(ell):
            num = n * n * rd.cartan.pairing[i][j]
            den = scales[i] * scales[j]
            if num % den != 0:
                raise MetaplecticError("modified pairing is not integral")
            row.append(num // den)
        pair_rows.append(tuple(row))
    mod_cartan = CartanDatum(tuple(pair_rows))

    # rescaled coroots in new coordinates
    new_coroots = []
    for i, cv in enumerate(rd.coroots):
        target = vec_scale(scales[i], cv)
        c = solve_vector(ybasis, target)
        if c is None:
            raise MetaplecticError(f"rescaled coroot {i} escaped the modified lattice")
        new_coroots.append(c)

    # rescaled roots, expressed against the dual basis of the new lattice
    new_roots = []
    ybt = ybasis.t()
    for i, rv in enumerate(rd.roots):
        coords = ybt.vec(rv)
        if any(x % scales[i] != 0 for x in coords):
            raise MetaplecticError(f"rescaled root {i} is not integral on the modified lattice")
        new_roots.append(tuple(x // scales[i] for x in coords))

    datum = RootDatum(mod_cartan, rd.rank, tuple(new_coroots), tuple(new_roots))
    if ell:
        rep = validate_cartan(mod_cartan)
        if not rep.ok:
            raise MetaplecticError(f"modified Cartan datum invalid: {rep.failures()}")

    form = ms.form.restrict(ybasis)
    # q and b land in nZ on the modified lattice; b because that is the
    # defining condition, q because 2q(y) = b(y, y)
    for j in range(ybasis.ncols):
        col = tuple(1 if k == j else 0 for k in range(ybasis.ncols))
        if n % 2 == 0 and (2 * form.q(col)) % n != 0:
            raise MetaplecticError("restricted form violates the divisibility invariant")

    # dual lattice of the new cocharacter lattice, as a scaled integer matrix:
    # solve ybasis^T x = den * e_i so column i is den * (dual basis vector i)
    xden = abs(ybasis.det())
    xcols = []
    for i in range(ybasis.ncols):
        target = tuple(xden if k == i else 0 for k in range(ybasis.nrows))
        col = solve_vector(ybasis.t(), target)
        if col is None:
            raise MetaplecticError("failed to compute the dual lattice")
        xcols.append(col)
    g = 0
    for c in xcols:
        for x in c:
            g = gcd(g, x)
    g = gcd(g, xden)
    xnum = IntMatrix.from_cols([tuple(x // g for x in c) for c in xcols])
    xden //= g

    return ModifiedRootDatum(
        base=rd,
        structure=ms,
        scales=scales,
        zero_q_coroots=flagged,
        ybasis=ybasis,
        datum=datum,
        form=form,
        xnumerator=xnum,
        xdenominator=xden,
    )


# ---------------------------------------------------------------------------
# Dual datum and its classification


def _sc_name(label: str) -> str:
    family, rank = label[0], int(label[1:])
    if family == "A":
        return f"SL{rank + 1}"
    if family == "B":
        return f"Spin{2 * rank + 1}"
    if family == "C":
        return f"Sp{2 * rank}"
    if family == "D":
        return f"Spin{2 * rank}"
    return label


@dataclass(frozen=True)
class DualDatumReport:
    datum: RootDatum
    components: tuple[DynkinComponent, ...]
    simply_connected: bool
    adjoint: bool
    torus_rank: int
    group_name: str


def dual_datum(md: ModifiedRootDatum) -> DualDatumReport:
    """The dual of the modified root datum, classified."""
    dual = md.datum.dual()
    comps = tuple(classify_cartan(dual.cartan)) if dual.cartan.size else ()
    sc = dual.is_simply_connected if dual.cartan.size else False
    adj = dual.is_adjoint if dual.cartan.size else False
    torus_rank = dual.rank - dual.cartan.size
    if not comps:
        name = f"torus of rank {dual.rank}" if dual.rank else "trivial group"
    else:
        parts = [_sc_name(c.label) if sc else c.label for c in comps]
        name = " x ".join(parts)
        if torus_rank:
            name += f" x torus of rank {torus_rank}"
    return DualDatumReport(dual, comps, sc, adj, torus_rank, name)


# ---------------------------------------------------------------------------
# The collapsed 2-group and the center


@dataclass(frozen=True)
class BarY:
    """The quotient of the modified lattice by doubled vectors and modified
    coroots.  Trivial by convention when the cover degree is odd."""

    quotient: Quotient | None
    degree: int

    @property
    def group(self):
        from .exactalg import FinAbGroup

        if self.quotient is None:
            return FinAbGroup((), 0)
        return self.quotient.group

    @property
    def rank(self) -> int:
        return len(self.group.factors)

    @property
    def odd_degree(self) -> bool:
        return self.degree % 2 == 1

    def project(self, y_ambient: tuple[int, ...]) -> tuple[int, ...]:
        """Image of a vector given in original Y coordinates."""
        if self.quotient is None:
            return ()
        return self.quotient.project(y_ambient)

    def generator_lifts(self) -> list[tuple[int, ...]]:
        if self.quotient is None:
            return []
        return self.quotient.generator_lifts()


def bar_y(md: ModifiedRootDatum) -> BarY:
    if md.degree % 2 == 1:
        return BarY(None, md.degree)
    doubled = lattice_intersection(
        IntMatrix.from_rows([[2 if i == j else 0 for j in range(md.rank)] for i in range(md.rank)]),
        md.ybasis,
    )
    cors = md.modified_coroots_ambient()
    if cors:
        sub = concat_columns(doubled, IntMatrix.from_cols(cors))
    else:
        sub = doubled
    quot = quotient_group(md.ybasis, sub)
    if any(f != 2 for f in quot.group.factors) or quot.group.free_rank:
        raise MetaplecticError("collapsed quotient is not an elementary abelian 2-group")
    return BarY(quot, md.degree)


def center_characters(md: ModifiedRootDatum) -> Quotient:
    """Character group of the dual group's center: new lattice / coroots."""
    cors = md.modified_coroots_ambient()
    sub = IntMatrix.from_cols(cors) if cors else IntMatrix.zeros(md.rank, 0)
    return quotient_group(md.ybasis, sub)
