import pytest

from tregular.hypercomplex import StepList, paravector_basis, suffix, w_h_basis
from tregular.fueter import (
    CertificationError,
    EvenGapError,
    FueterError,
    first_transform,
    is_strongly_T_regular,
    is_T_function,
    negative_control,
    plan,
    run_pipeline,
    sigma_transform,
)
from tregular.ops import is_T_regular, laplacian_power
from tregular.printing import parse_x_poly
from tregular.tpoly import family, multi_indices


def test_plan_counts():
    assert plan(StepList((0, 3, 6)), 2).n == (1, 1)
    assert plan(StepList((0, 5, 8)), 1).n == (2,)
    assert plan(StepList((1, 2)), 1).n == (0,)
    with pytest.raises(EvenGapError) as exc:
        plan(StepList((0, 3, 5)), 2)
    assert (exc.value.h, exc.value.gap) == (2, 2)
    with pytest.raises(FueterError):
        plan(StepList((0, 3)), 2)


def test_input_must_be_certified(ex036):
    T, B, _ = ex036
    f = parse_x_poly("x0 x1", B, T)
    with pytest.raises(CertificationError) as exc:
        run_pipeline(f, T, B, 1)
    assert exc.value.stage == 0


def test_t_function_predicates(ex036):
    T, B, fam = ex036
    assert is_T_function(fam((2, 1)), T, B)
    assert is_strongly_T_regular(fam((2, 1)), T, B)
    g = parse_x_poly("x1 x4", B, T)
    assert not is_T_function(g, T, B)
    # a T-function that is not regular
    h = parse_x_poly("x0^2", B, T)
    assert is_T_function(h, T, B) and not is_strongly_T_regular(h, T, B)


def test_certificates_recorded(ex036):
    T, B, fam = ex036
    run = run_pipeline(fam((3, 2)), T, B, 2)
    assert [c.stage for c in run.certificates] == [0, 1, 2]
    assert all(c.ok for c in run.certificates)
    assert [str(c.steps) for c in run.certificates] == ["(0,3,6)", "(3,6)", "(6)"]


@pytest.mark.parametrize("k", range(1, 5))
def test_classical_fueter_on_quaternions(k):
    # T=(0,3) over H: Delta x^k is Cauchy-Fueter regular
    B = w_h_basis(2, 2)
    T = StepList((0, 3))
    x = parse_x_poly("x0 + x¹", B, T)
    out = first_transform(x**k, T, B)
    assert is_T_regular(out, StepList((3,)), B)
    assert out.is_zero() == (k == 1)


@pytest.mark.parametrize("k", range(1, 6))
def test_sce_in_dimension_five(k):
    # gap 5 needs two Laplacians
    B = paravector_basis(5)
    T = StepList((0, 5))
    x = parse_x_poly("x0 + x¹", B, T)
    run = run_pipeline(x**k, T, B, 1)
    assert run.plan.n == (2,)
    assert is_T_regular(run.result, StepList((5,)), B)


def test_second_stage_from_first(ex036):
    T, B, fam = ex036
    f = fam((3, 2))
    one = first_transform(f, T, B)
    assert sigma_transform(f, T, B, 2) == laplacian_power(one, suffix(T, 2), B, 1)


def test_mixed_family_all_stages():
    B = paravector_basis(4)
    T = StepList((0, 1, 4))
    fam = family(T, B)
    for k in range(4):
        for kappa in multi_indices(2, k):
            run = run_pipeline(fam(kappa), T, B, 2)
            assert run.plan.n == (0, 1)
            assert is_T_regular(run.result, StepList((4,)), B)


def test_negative_control_defaults(ex036):
    T, B, fam = ex036
    nc = negative_control(fam((2, 1)).scale(3), T, B)
    assert nc.laplacians == 1 and str(nc.steps) == "(6)"
    assert not nc.regular
    assert negative_control(fam((1, 0)), T, B).regular
