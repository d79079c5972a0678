import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tregular.hypercomplex import StepList, paravector_basis, suffix, torus_point
from tregular.ops import (
    NotPolynomialError,
    RationalForm,
    d_T_x,
    dbar_J,
    dbar_T_x,
    dbar_T_x_form,
    delta_J,
    delta_T_x,
    is_T_harmonic,
    is_T_regular,
    laplacian_power,
    restrict,
    restrict_form,
)
from tregular.poly import CliffordPoly, VarSpace
from tregular.printing import parse_x_poly
from tregular.properties import random_stem, stem_configs
from tregular.stem import d_T, dbar_T, delta_T, induce_poly

seeds = st.integers(0, 2**32 - 1)
configs = st.sampled_from(stem_configs())


def cauchy_riemann(f, basis):
    """Plain d/dx0 + sum_s v_s d/dx_s over all coordinates."""
    out = f.ddx(0)
    for s in range(1, basis.N + 1):
        out = out + f.ddx(s).lmul(basis[s])
    return out


def plain_laplacian(f):
    out = CliffordPoly.zero(f.sig, f.space)
    for s in range(len(f.space)):
        out = out + f.ddx(s, 2)
    return out


@pytest.mark.parametrize("text", ["x0 - x1 e1", "x0^2 - 2 x0 x1 e1 - x1^2 + x2^2", "x1 x2 e12 + x3", "x0 x1 x2"])
def test_single_block_is_cauchy_riemann(text):
    B = paravector_basis(3)
    T = StepList((3,))
    f = parse_x_poly(text, B)
    assert dbar_T_x(f, T, B).as_poly() == cauchy_riemann(f, B)
    assert delta_T_x(f, T, B).as_poly() == plain_laplacian(f)


@given(seeds, configs)
def test_x_level_operators_match_stem_level(seed, cfg):
    T, B = cfg
    F = random_stem(random.Random(seed), T, B, max_alpha=1)
    f = induce_poly(F)
    assert dbar_T_x(f, T, B).as_poly() == induce_poly(dbar_T(F))
    assert d_T_x(f, T, B).as_poly() == induce_poly(d_T(F))
    assert delta_T_x(f, T, B).as_poly() == induce_poly(delta_T(F))


def test_slice_powers_are_regular():
    B = paravector_basis(4)
    T = StepList((0, 4))
    x = parse_x_poly("x0 + x¹", B, T)
    for k in range(5):
        assert is_T_regular(x**k, T, B)
        assert is_T_harmonic(x**k, T, B)


def test_monogenic_but_not_slice():
    B = paravector_basis(3)
    f = parse_x_poly("x1 - x0 e1", B)
    assert is_T_regular(f, StepList((3,)), B)
    assert not is_T_regular(f, StepList((0, 3)), B)


def test_reduce_removes_block_norms():
    B = paravector_basis(3)
    T = StepList((0, 3))
    f = parse_x_poly("x0^2 - ‖x¹‖²", B, T)
    form = dbar_T_x_form(f, T, B)
    assert form.denom == (1,)
    red = form.reduce()
    assert red.is_polynomial() and form.same_value(red)


def test_as_poly_raises_on_true_fraction():
    B = paravector_basis(3)
    T = StepList((0, 3))
    f = parse_x_poly("x1", B, T)
    with pytest.raises(NotPolynomialError):
        dbar_T_x(f, T, B).as_poly()
    with pytest.raises(ValueError):
        RationalForm(f, T, B, (1, 1))


def test_laplacian_power(ex036):
    T, B, fam = ex036
    f = fam((3, 2))
    T1 = suffix(T, 1)
    assert laplacian_power(f, T1, B, 0) == f
    assert laplacian_power(f, T1, B, 2).is_zero()


def test_wrong_space_rejected():
    B = paravector_basis(3)
    other = CliffordPoly.var(B.sig, VarSpace.x(2), 0)
    with pytest.raises(ValueError):
        dbar_T_x(other, StepList((0, 3)), B)


@given(seeds)
def test_restriction_of_regular_polynomial_is_slice_regular(ex036, seed):
    T, B, fam = ex036
    J = torus_point(B, T, seed)
    phi = restrict(fam((2, 1)), T, B, J)
    assert dbar_J(phi).poly.is_zero()
    assert delta_J(phi).poly.is_zero()


@given(seeds)
def test_restrict_form_commutes_with_dbar(ex036, seed):
    T, B, fam = ex036
    J = torus_point(B, T, seed)
    f = fam((1, 2)) * parse_x_poly("x0 + x5", B, T)
    lhs = restrict_form(dbar_T_x_form(f, T, B), J).poly
    assert lhs == dbar_J(restrict(f, T, B, J)).poly
