from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tregular.algebra import AlgebraError, CliffordAlgebra, is_imaginary_unit, scalar_product
from tregular.hypercomplex import (
    AnticommutationError,
    CongruenceError,
    EmptyBasisError,
    FirstElementNotOneError,
    NotImaginaryUnitError,
    StepList,
    StepListError,
    TorusPoint,
    basis_from_name,
    canonical_torus_point,
    decompose,
    grade_h_basis,
    make_torus_point,
    paravector_basis,
    rational_sphere_point,
    reassemble,
    sigma_sign,
    suffix,
    torus_point,
    validate_basis,
    w_h_basis,
)


def test_paravector_basis():
    B = paravector_basis(4)
    assert B.N == 4
    assert [v.terms for v in B.elements] == [{0: 1}, {1: 1}, {2: 1}, {4: 1}, {8: 1}]


def test_grade_h_basis_sizes():
    assert grade_h_basis(5, 1).N == 5
    assert grade_h_basis(5, 5).N == 1
    assert grade_h_basis(6, 5).N == 6


def test_w_h_basis():
    B = w_h_basis(6, 6)
    A = CliffordAlgebra(0, 6)
    assert B.N == 7
    assert B[7] == A.e(1, 2, 3, 4, 5, 6)


@pytest.mark.parametrize("m,h", [(4, 3), (5, 2), (3, 5)])
def test_grade_basis_congruence(m, h):
    with pytest.raises(CongruenceError):
        grade_h_basis(m, h)


def test_w_basis_congruence():
    with pytest.raises(CongruenceError):
        w_h_basis(4, 4)


def test_validation_errors():
    A = CliffordAlgebra(0, 3)
    with pytest.raises(EmptyBasisError):
        validate_basis([A.scalar()])
    with pytest.raises(FirstElementNotOneError):
        validate_basis([A.e(1), A.e(2)])
    with pytest.raises(NotImaginaryUnitError) as exc:
        validate_basis([A.scalar(), A.e(1), A.e(1, 2, 3)])
    assert exc.value.index == 2
    with pytest.raises(AnticommutationError) as exc:
        validate_basis([A.scalar(), A.e(1), A.e(2), A.e(1)])
    assert exc.value.pair == (1, 3)


def test_grade3_basis_rejected():
    # grade-3 blades square to +1, so they are not imaginary units
    A = CliffordAlgebra(0, 4)
    with pytest.raises(NotImaginaryUnitError):
        validate_basis([A.scalar(), A.e(1, 2, 3), A.e(1, 2, 4)])


def test_basis_from_name():
    assert basis_from_name("paravector:3").N == 3
    assert basis_from_name("vh:5,5").N == 1
    assert basis_from_name("wh:2,2").N == 3
    for bad in ("para:3", "vh:5", "paravector:x"):
        with pytest.raises(ValueError):
            basis_from_name(bad)


def test_coords_and_span():
    B = paravector_basis(3)
    A = CliffordAlgebra(0, 3)
    x = 2 - A.e(2) + Fraction(1, 2) * A.e(3)
    assert B.coords(x) == (2, 0, -1, Fraction(1, 2))
    assert B.vector(B.coords(x)) == x
    with pytest.raises(AlgebraError):
        B.coords(A.e(1, 2))


def test_step_list():
    T = StepList.parse("0,3,6")
    assert (T.N, T.tau, T.t0) == (6, 2, 0)
    assert list(T.block(0)) == [0]
    assert list(T.block(2)) == [4, 5, 6]
    assert str(suffix(T, 1)) == "(3,6)"
    for bad in ("", "3,3", "4,2", "-1,2", "a"):
        with pytest.raises(StepListError):
            StepList.parse(bad)
    with pytest.raises(StepListError):
        suffix(T, 3)


def test_decompose_roundtrip():
    T = StepList((1, 4, 7))
    coords = tuple(range(10, 18))
    blocks = decompose(coords, T)
    assert blocks == ((10, 11), (12, 13, 14), (15, 16, 17))
    assert reassemble(blocks) == coords


def test_sigma_sign():
    assert sigma_sign(1, (1, 2)) == 1
    assert sigma_sign(2, (1, 2)) == 0
    assert sigma_sign(1, (2,)) == 0


@given(st.integers(0, 10**6), st.sampled_from([(0, 3, 6), (1, 4, 7), (2, 3, 5)]))
def test_random_torus_points_are_units(seed, steps):
    T = StepList(steps)
    B = w_h_basis(6, 6) if steps == (1, 4, 7) else paravector_basis(T.N)
    J = torus_point(B, T, seed)
    for h in range(1, T.tau + 1):
        assert is_imaginary_unit(J[h])
        cs = B.coords(J[h])
        assert {s for s, c in enumerate(cs) if c} <= set(T.block(h))
        assert sum(c * c for c in cs) == 1


def test_sphere_point_deterministic():
    B = paravector_basis(4)
    assert rational_sphere_point(B, [1, 2, 3], 7) == rational_sphere_point(B, [1, 2, 3], 7)


def test_canonical_point_and_product():
    T = StepList((0, 3, 6))
    B = paravector_basis(6)
    A = CliffordAlgebra(0, 6)
    I = canonical_torus_point(B, T)
    assert I[1] == A.e(1) and I[2] == A.e(4)
    assert I.product((1, 2), B.sig) == A.e(1, 4)
    assert I.product((), B.sig) == 1


def test_make_torus_point_validation():
    T = StepList((0, 3, 6))
    B = paravector_basis(6)
    A = CliffordAlgebra(0, 6)
    assert isinstance(make_torus_point(B, T, [A.e(2), A.e(6)]), TorusPoint)
    with pytest.raises(ValueError):
        make_torus_point(B, T, [A.e(4), A.e(6)])
    with pytest.raises(ValueError):
        make_torus_point(B, T, [A.e(1).scale(2), A.e(6)])
    with pytest.raises(ValueError):
        make_torus_point(B, T, [A.e(1)])
    assert scalar_product(A.e(1), A.e(1)) == 1
