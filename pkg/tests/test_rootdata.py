import itertools

import pytest

from mlk.exactalg import dot
from mlk.rootdata import (
    CartanDatum,
    PRESET_NAMES,
    RootDataError,
    RootDatum,
    WeylQuadraticForm,
    classify_cartan,
    dual_cartan,
    generate_roots,
    is_weyl_invariant,
    preset,
    scaling_constant,
    simple_reflection,
    validate_cartan,
)

C2_PAIRING = [[4, -2], [-2, 2]]


def test_validate_a1():
    rep = validate_cartan(CartanDatum.from_rows([[2]]))
    assert rep.ok
    assert rep.cartan_matrix == ((2,),)


def test_validate_c2_datum():
    rep = validate_cartan(CartanDatum.from_rows(C2_PAIRING))
    assert rep.ok
    assert rep.cartan_matrix == ((2, -1), (-2, 2))
    assert rep.braid[0][1] == 4


def test_validate_indefinite_rejected():
    rep = validate_cartan(CartanDatum.from_rows([[2, -3], [-3, 2]]))
    assert not rep.ok
    assert "positive definite (finite type)" in rep.failures()


def test_validate_nonsymmetric_raises():
    with pytest.raises(RootDataError):
        validate_cartan(CartanDatum.from_rows([[2, -1], [-2, 2]]))


def test_dual_a1():
    d = CartanDatum.from_rows([[2]])
    assert scaling_constant(d) == 4
    assert dual_cartan(d).pairing == ((2,),)


def test_dual_c2_swaps_lengths():
    d = CartanDatum.from_rows(C2_PAIRING)
    assert scaling_constant(d) == 8
    dd = dual_cartan(d)
    assert dd.pairing == ((2, -2), (-2, 4))


def test_dual_a2_self_dual():
    d = CartanDatum.from_rows([[2, -1], [-1, 2]])
    assert dual_cartan(d).pairing == d.pairing


def test_double_dual_is_original():
    for name in ("SL2", "SL3", "Sp4", "Spin5", "G2", "Sp6"):
        d = preset(name)[0].cartan
        if d.size == 0:
            continue
        assert dual_cartan(dual_cartan(d)).cartan_matrix() == d.cartan_matrix()


def test_classify_basics():
    assert [c.label for c in classify_cartan(CartanDatum.from_rows([[2]]))] == ["A1"]
    comps = classify_cartan(CartanDatum.from_rows(C2_PAIRING))
    assert comps[0].label == "C2"
    assert set(comps[0].aliases) == {"B2", "C2"}
    two = classify_cartan(CartanDatum.from_rows([[2, 0], [0, 2]]))
    assert [c.label for c in two] == ["A1", "A1"]


def test_classify_presets():
    assert [c.label for c in classify_cartan(preset("SL3")[0].cartan)] == ["A2"]
    assert [c.label for c in classify_cartan(preset("G2")[0].cartan)] == ["G2"]
    assert [c.label for c in classify_cartan(preset("Sp6")[0].cartan)] == ["C3"]


def test_reflection_involution_and_fixed_zero():
    rd, _ = preset("SL2")
    assert simple_reflection(rd, 0, (1,)) == (-1,)
    assert simple_reflection(rd, 0, (0,)) == (0,)
    rd4, _ = preset("Sp4")
    for v in itertools.product(range(-2, 3), repeat=2):
        for i in range(2):
            w = simple_reflection(rd4, i, v)
            assert simple_reflection(rd4, i, w) == v


def test_sp4_reflections_are_signed_permutations():
    # in the symplectic basis, s_1 flips the first coordinate and s_2 swaps
    rd, _ = preset("Sp4")
    for v in itertools.product(range(-2, 3), repeat=2):
        assert simple_reflection(rd, 0, v) == (-v[0], v[1])
        assert simple_reflection(rd, 1, v) == (v[1], v[0])


def test_pairing_weyl_invariance():
    for name in ("SL3", "Sp4", "Spin5", "G2"):
        rd, _ = preset(name)
        basis = [tuple(1 if k == j else 0 for k in range(rd.rank)) for j in range(rd.rank)]
        for i in range(len(rd.coroots)):
            for y in basis:
                for x in basis:
                    sy = simple_reflection(rd, i, y, side="cochar")
                    sx = simple_reflection(rd, i, x, side="char")
                    assert dot(sy, sx) == dot(y, x)


def test_root_counts():
    for name, count in (("SL2", 2), ("SL3", 6), ("Sp4", 8), ("Spin5", 8), ("G2", 12), ("Sp6", 18)):
        roots, coroots = generate_roots(preset(name)[0])
        assert len(roots) == count
        assert len(coroots) == count
        assert set(roots) == {tuple(-x for x in r) for r in roots}


def test_weyl_invariance_examples():
    rd, _ = preset("SL2")
    assert is_weyl_invariant(WeylQuadraticForm.from_matrix([[2]]), rd)

    rd4, q4 = preset("Sp4")
    assert is_weyl_invariant(q4, rd4)
    assert q4.q((1, 0)) == 1 and q4.q((-1, 1)) == 2

    lopsided = WeylQuadraticForm.from_matrix([[2, 0], [0, 0]])
    assert not is_weyl_invariant(lopsided, rd4)


def test_reflection_identity_on_whole_orbit():
    # b(beta_check, y) = q(beta_check) <y, beta> for every generated root
    for name in ("Sp4", "SL3", "G2"):
        rd, q = preset(name)
        roots, coroots = generate_roots(rd)
        basis = [tuple(1 if k == j else 0 for k in range(rd.rank)) for j in range(rd.rank)]
        for beta, beta_check in zip(roots, coroots):
            for y in basis:
                assert q.b(beta_check, y) == q.q(beta_check) * dot(y, beta)


def test_presets_all_valid():
    for name in PRESET_NAMES:
        rd, q = preset(name)
        if rd.cartan.size:
            assert validate_cartan(rd.cartan).ok
        assert is_weyl_invariant(q, rd)


def test_preset_lattice_flags():
    assert preset("SL2")[0].is_simply_connected
    assert preset("PGL2")[0].is_adjoint
    assert preset("Sp4")[0].is_simply_connected
    assert not preset("Sp4")[0].is_adjoint
    assert preset("GL1")[0].coroot_lattice().ncols == 0


def test_form_values_and_bilinear():
    q = WeylQuadraticForm.from_matrix([[2, -1], [-1, 2]])
    assert q.q((1, 0)) == 1
    assert q.q((1, 1)) == 1
    assert q.b((1, 0), (0, 1)) == -1
    with pytest.raises(RootDataError):
        WeylQuadraticForm.from_matrix([[1]])
