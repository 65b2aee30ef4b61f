"""Resolution construction: anchors, complex property, skeleton, duality, routes."""

from fractions import Fraction

import pytest

from gorlin.differentials import (
    BuildContext,
    b1_column,
    b1_matrix,
    bd_matrix,
    bd_rows,
    br_column_X,
    br_column_Y,
    build_resolution,
    build_resolution_via_straightening,
    canonical_skeleton,
    pp_matrix,
    skeleton,
    twist_list,
)
from gorlin.hookbasis import BasisElement, enumerate_basis
from gorlin.invsys import (
    InadmissibleSystemError,
    InverseSystem,
    contract_poly,
    random_invsys,
)
from gorlin.monomials import mul_var
from gorlin.polymatrix import entries_transpose
from gorlin.polynomials import Poly, poly_str

from conftest import GRID, grid_phi, grid_resolution, squares_phi, squares_resolution


def test_b1_identity_catalecticant_columns():
    res = squares_resolution(3)
    cols = [poly_str(p) for p in res.matrix(1).entries[0]]
    assert cols == ["x1*x2", "x1*x3", "-x1^2 + x2^2", "x2*x3", "-x1^2 + x3^2"]


@pytest.mark.parametrize("d,n", GRID)
def test_b1_columns_annihilate(d, n):
    phi = grid_phi(d, n)
    res = grid_resolution(d, n)
    for g in res.matrix(1).entries[0]:
        assert contract_poly(g, phi.dual_element()) == {}


def test_b1_mod_x1():
    phi = grid_phi(4, 2)
    res = grid_resolution(4, 2)
    for (s, e), p in zip(res.matrix(1).cols, res.matrix(1).entries[0]):
        red = p.subs_x1_zero()
        if e.kind == "X":
            assert red.is_zero()
        else:
            assert red == Poly.monomial(mul_var(e.m, e.a[0]), res.delta * s)


@pytest.mark.parametrize("d,n", GRID)
def test_complex_property(d, n):
    res = grid_resolution(d, n)
    for r in range(1, d):
        prod = res.matrix(r).mul(res.matrix(r + 1))
        assert all(p.is_zero() for row in prod for p in row), (d, n, r)


@pytest.mark.parametrize("d,n", GRID)
def test_dual_path_equality(d, n):
    phi = grid_phi(d, n)
    res = grid_resolution(d, n)
    alt = build_resolution_via_straightening(phi)
    for r in range(1, d + 1):
        assert res.matrix(r).same_entries(alt.matrix(r)), (d, n, r)


def test_shapes_and_twists():
    assert grid_resolution(4, 2).betti == (1, 9, 16, 9, 1)
    assert grid_resolution(4, 2).twists == (0, 2, 3, 4, 6)
    assert grid_resolution(5, 2).betti == (1, 14, 35, 35, 14, 1)
    assert grid_resolution(5, 3).betti == (1, 30, 81, 81, 30, 1)
    assert twist_list(3, 2) == (0, 2, 3, 5)


def test_interior_columns_reduce_to_kos_blocks():
    # mod x1, interior matrices become delta times the canonical strands
    for d, n in [(3, 2), (4, 2), (4, 3)]:
        res = grid_resolution(d, n)
        expected = canonical_skeleton(res)
        for r in range(1, d + 1):
            assert res.matrix(r).mod_x1().same_entries(expected[r - 1]), (d, n, r)


def test_skeleton_block_assertion_and_content():
    res = grid_resolution(4, 2)
    sk = skeleton(res)
    for r in range(2, 4):
        mat = sk[r - 1]
        for i, (_, re) in enumerate(mat.rows):
            for j, (_, ce) in enumerate(mat.cols):
                if re.kind != ce.kind:
                    assert mat.entries[i][j].is_zero()


def test_skeleton_asserts_block_structure():
    import copy

    res = copy.deepcopy(grid_resolution(4, 2))
    mat = res.matrix(2)
    # plant a mixed-kind term that survives mod x1
    for i, (_, re) in enumerate(mat.rows):
        for j, (_, ce) in enumerate(mat.cols):
            if re.kind != ce.kind:
                mat.entries[i][j] = mat.entries[i][j] + Poly.monomial((0, 1, 0, 0))
                break
        else:
            continue
        break
    with pytest.raises(AssertionError):
        skeleton(res)


def test_skeleton_depends_only_on_delta():
    phi1 = random_invsys(4, 2, seed=7)
    phi2 = random_invsys(4, 2, seed=8)
    r1 = build_resolution(phi1)
    r2 = build_resolution(phi2)
    ratio = r1.delta / r2.delta
    for r in range(1, 5):
        a = skeleton(r1)[r - 1]
        b = skeleton(r2)[r - 1].scale(ratio)
        assert a.same_entries(b)


def test_bd_transpose_of_b1_in_dual_bases():
    for d, n in [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3)]:
        res = grid_resolution(d, n, ordering="selfdual")
        assert entries_transpose(res.matrix(1).entries) == res.matrix(d).entries


def test_bd_rows_vs_b1_on_identity_instance():
    # the last-matrix entries are the first-matrix generators up to sign/order
    def normalize(p):
        lead = p.sorted_terms()[0][1]
        return poly_str(p.scale(1 / lead))

    phi = squares_phi(3)
    ctx = BuildContext(phi)
    got = {normalize(p) for p in bd_rows(ctx).values()}
    want = {normalize(p) for p in squares_resolution(3).matrix(1).entries[0]}
    assert got == want


def test_column_input_validation():
    phi = grid_phi(4, 2)
    ctx = BuildContext(phi)
    xelt = BasisElement("X", 2, (2, 3), (0, 2, 0, 0))
    yelt = BasisElement("Y", 2, (2, 3), (0, 1, 0, 0))
    with pytest.raises(ValueError):
        br_column_X(ctx, 2, yelt)
    with pytest.raises(ValueError):
        br_column_Y(ctx, 2, xelt)
    with pytest.raises(ValueError):
        br_column_X(ctx, 3, xelt)


def test_inadmissible_refused():
    zero = InverseSystem(3, 2, {})
    with pytest.raises(InadmissibleSystemError):
        build_resolution(zero)
    rank_deficient = InverseSystem(3, 2, {(2, 0, 0): Fraction(1)})
    with pytest.raises(InadmissibleSystemError):
        build_resolution(rank_deficient)


def test_b1_matrix_defined_even_when_inadmissible():
    # the first-matrix formulas are polynomial in the coefficients, so they
    # survive delta = 0; only the full build refuses
    phi = InverseSystem(3, 2, {(2, 0, 0): Fraction(1)})
    mat = b1_matrix(phi)
    assert mat.shape == (1, 5)
    # with delta = 0 only the x1 parts of the socle columns remain
    for (_, e), p in zip(mat.cols, mat.entries[0]):
        for m in p.terms:
            assert m[0] >= 1


def test_standalone_first_and_last_matrices():
    phi = grid_phi(4, 2)
    res = grid_resolution(4, 2)
    assert b1_matrix(phi).same_entries(res.matrix(1))
    assert bd_matrix(phi).same_entries(res.matrix(4))


def test_selfdual_and_standard_agree_up_to_basis():
    # same resolution content: equal Betti data and both complexes
    res_a = grid_resolution(4, 3)
    res_b = grid_resolution(4, 3, ordering="selfdual")
    assert res_a.betti == res_b.betti
    for r in range(1, 5):
        prod = res_b.matrix(r - 1).mul(res_b.matrix(r)) if r > 1 else None
        if prod is not None:
            assert all(p.is_zero() for row in prod for p in row)


def test_d6_generality():
    # longer index lists exercise every straightening branch
    phi = random_invsys(6, 2, seed=21)
    res = build_resolution(phi, ordering="selfdual")
    assert res.betti == (1, 20, 64, 90, 64, 20, 1)
    for r in range(1, 6):
        prod = res.matrix(r).mul(res.matrix(r + 1))
        assert all(p.is_zero() for row in prod for p in row), r
    alt = build_resolution_via_straightening(phi, ordering="selfdual")
    assert all(res.matrix(r).same_entries(alt.matrix(r)) for r in range(1, 7))
    assert entries_transpose(res.matrix(1).entries) == res.matrix(6).entries


def test_deterministic_generation_anchor():
    # frozen values pin the seeded generator and the whole exact pipeline
    phi = random_invsys(3, 2, seed=1)
    assert build_resolution(phi).delta == Fraction(-75)
    assert random_invsys(4, 2, seed=7).t((0, 2, 0, 0)) == Fraction(4)
    assert build_resolution(random_invsys(4, 2, seed=7)).delta == Fraction(-164)


def test_pp_matrix_boundary():
    b0 = enumerate_basis(4, 2, 0)
    b4 = enumerate_basis(4, 2, 4)
    assert pp_matrix(b0, b4) == [[1]]
    assert pp_matrix(b4, b0) == [[1]]
