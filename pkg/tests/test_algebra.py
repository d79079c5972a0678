from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given

from tregular.algebra import (
    AlgebraError,
    CliffordAlgebra,
    Multivector,
    Signature,
    SignatureMismatch,
    blade_product,
    conj_sign,
    grade,
    in_quadratic_cone,
    indices_of,
    is_imaginary_unit,
    mask_of,
    norm,
    scalar_product,
    trace,
)

from .strategies import sig_and_mvs


def word_product(p, a, b):
    """Independent oracle: reduce the generator word e_A e_B by adjacent swaps."""
    word = list(indices_of(a)) + list(indices_of(b))
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(word) - 1:
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
            elif word[i] == word[i + 1]:
                sign *= 1 if word[i] <= p else -1
                del word[i : i + 2]
                changed = True
                continue
            i += 1
    return sign, mask_of(word)


@pytest.mark.parametrize("p,q", [(0, 3), (2, 1), (1, 3), (3, 0)])
def test_blade_product_matches_word_oracle(p, q):
    m = p + q
    for a, b in product(range(1 << m), repeat=2):
        assert blade_product(p, a, b) == word_product(p, a, b)


def test_quaternions_against_pauli_matrices():
    # Cl(0,2) is H: e1 -> -i sigma_x, e2 -> -i sigma_y is one faithful representation
    i = sympy.I
    e1 = sympy.Matrix([[0, -i], [-i, 0]])
    e2 = sympy.Matrix([[0, -1], [1, 0]])
    mats = {0: sympy.eye(2), 1: e1, 2: e2, 3: e1 * e2}
    for a, b in product(range(4), repeat=2):
        s, k = blade_product(0, a, b)
        assert mats[a] * mats[b] == s * mats[k]


def test_generators_and_squares():
    A = CliffordAlgebra(1, 2)
    assert A.e(1) * A.e(1) == 1
    assert A.e(2) * A.e(2) == -1
    assert A.e(1) * A.e(2) == -(A.e(2) * A.e(1))
    assert A.e(2, 1) == -A.e(1, 2)
    assert A.e(1, 2, 3) == A.e(1) * A.e(2) * A.e(3)


def test_signature_validation():
    with pytest.raises(AlgebraError):
        Signature(-1, 2)
    with pytest.raises(AlgebraError):
        Signature(0, 2).square(3)
    with pytest.raises(AlgebraError):
        Multivector(Signature(0, 1), {4: 1})


def test_mixing_signatures_rejected():
    with pytest.raises(SignatureMismatch):
        CliffordAlgebra(0, 2).e(1) + CliffordAlgebra(0, 3).e(1)


def test_conj_sign_by_grade():
    assert [conj_sign((1 << g) - 1) for g in range(8)] == [1, -1, -1, 1, 1, -1, -1, 1]


def test_zero_coefficients_pruned():
    sig = Signature(0, 2)
    x = Multivector(sig, {0: 1, 3: 0, 1: Fraction(0)})
    assert x.terms == {0: Fraction(1)}
    assert (x - x).is_zero()
    assert Multivector.zero(sig) == 0


def test_trace_norm_of_paravector():
    A = CliffordAlgebra(0, 3)
    x = 3 + 4 * A.e(1) - 2 * A.e(3)
    assert trace(x) == 6
    assert norm(x) == 9 + 16 + 4
    assert scalar_product(x, x) == 29


def test_norm_of_grade3_blade_element():
    A = CliffordAlgebra(0, 3)
    a = 1 + A.e(1, 2, 3)
    assert norm(a) == 2 + 2 * A.e(1, 2, 3)
    assert not in_quadratic_cone(a)


def test_zero_divisors_break_norm_multiplicativity():
    A = CliffordAlgebra(0, 3)
    a, b = 1 + A.e(1, 2, 3), 1 - A.e(1, 2, 3)
    assert (a * b).is_zero()
    assert scalar_product(a, a) * scalar_product(b, b) == 4


def test_paravector_norm_is_multiplicative():
    A = CliffordAlgebra(0, 4)
    a = 1 + A.e(1, 2) - 3 * A.e(4)
    x = 2 - A.e(1) + 5 * A.e(3)
    sq = scalar_product
    assert sq(a * x, a * x) == sq(a, a) * sq(x, x) == sq(x * a, x * a)


def test_imaginary_units():
    A = CliffordAlgebra(0, 5)
    assert is_imaginary_unit(A.e(2))
    assert is_imaginary_unit(A.e(1, 2, 3, 4, 5))
    assert not is_imaginary_unit(A.e(1, 2, 3))
    J = (A.e(1).scale(Fraction(3, 5)) + A.e(2).scale(Fraction(4, 5)))
    assert is_imaginary_unit(J)


def test_inverse():
    A = CliffordAlgebra(0, 3)
    x = 2 + A.e(1) - A.e(2)
    assert x * x.inverse() == 1
    with pytest.raises(AlgebraError):
        (1 + A.e(1, 2, 3)).inverse()


def test_scalar_product_basis_restriction():
    A = CliffordAlgebra(0, 2)
    with pytest.raises(AlgebraError):
        scalar_product(A.e(1, 2), A.e(1), basis=[0, 1, 2])


def test_json_roundtrip():
    A = CliffordAlgebra(1, 3)
    x = Fraction(-2, 3) + A.e(1, 4) + 5 * A.e(2, 3, 4)
    assert Multivector.from_json(x.to_json()) == x


def test_grade():
    assert grade(mask_of([1, 3, 4])) == 3
    assert indices_of(mask_of([5, 2])) == (2, 5)


@given(sig_and_mvs())
def test_associativity(data):
    _, (a, b, c) = data
    assert (a * b) * c == a * (b * c)


@given(sig_and_mvs())
def test_distributivity(data):
    _, (a, b, c) = data
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@given(sig_and_mvs(count=2))
def test_conj_is_an_anti_involution(data):
    _, (a, b) = data
    assert a.conj().conj() == a
    assert (a * b).conj() == b.conj() * a.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@given(sig_and_mvs(count=1))
def test_trace_and_norm_are_self_conjugate(data):
    _, (a,) = data
    assert trace(a).conj() == trace(a)
    assert norm(a).conj() == norm(a)
