from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest

from tregular.hypercomplex import StepList, paravector_basis, w_h_basis
from tregular.ops import is_T_regular
from tregular.poly import CliffordPoly
from tregular.printing import parse_x_poly
from tregular.tpoly import TPolyFamily, family, family_Fk, multi_indices, t_kappa


def symmetrized_fueter(basis, kappa):
    """Oracle: average over all orderings of z_s = x_s - x0 v_s."""
    N = basis.N
    space = family(StepList((N,)), basis).space
    x = [CliffordPoly.var(basis.sig, space, s) for s in range(N + 1)]
    z = [None] + [x[s] - x[0].lmul(basis[s]) for s in range(1, N + 1)]
    word = [s for s, k in enumerate(kappa, start=1) for _ in range(k)]
    total = CliffordPoly.const(1, space, basis.sig) if not word else CliffordPoly.zero(basis.sig, space)
    if word:
        for perm in permutations(word):
            term = z[perm[0]]
            for s in perm[1:]:
                term = term * z[s]
            total = total + term
        total = total.scale(Fraction(1, factorial(len(word))))
    return total


@pytest.mark.parametrize("kappa", [k for d in range(4) for k in multi_indices(3, d)])
def test_single_block_gives_fueter_polynomials(kappa):
    B = paravector_basis(3)
    assert t_kappa(StepList((3,)), B, kappa) == symmetrized_fueter(B, kappa)


def test_slice_family_is_powers():
    B = paravector_basis(5)
    T = StepList((0, 5))
    x = parse_x_poly("x0 + x¹", B, T)
    for k in range(6):
        assert t_kappa(T, B, (k,)) == x**k


def test_multi_indices():
    assert multi_indices(2, 3) == [(3, 0), (2, 1), (1, 2), (0, 3)]
    assert multi_indices(0, 0) == [()]
    assert multi_indices(0, 2) == []
    for n in range(1, 4):
        for k in range(5):
            assert len(multi_indices(n, k)) == comb(n + k - 1, k)


def test_family_sizes():
    # |kappa| <= 4 over (0,3,6) and |kappa| <= 3 over (1,4,7)
    assert sum(len(multi_indices(2, k)) for k in range(5)) == 15
    assert sum(len(multi_indices(3, k)) for k in range(4)) == 20


def test_homogeneous_of_degree_kappa(ex147):
    T, B, fam = ex147
    for k in range(4):
        for kappa, p in family_Fk(T, B, k):
            assert p.is_homogeneous(k)


def test_low_degree_regular(ex147):
    T, B, fam = ex147
    for k in range(3):
        for kappa in multi_indices(3, k):
            assert is_T_regular(fam(kappa), T, B)


def test_cache_and_arity(ex036):
    T, B, fam = ex036
    assert family(T, B) is fam
    assert fam((2, 1)) is fam((2, 1))
    with pytest.raises(ValueError):
        fam((1,))
    with pytest.raises(ValueError):
        family_Fk(T, B, -1)
    with pytest.raises(ValueError):
        TPolyFamily(T, w_h_basis(6, 6))
