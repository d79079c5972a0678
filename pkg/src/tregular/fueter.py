"""Fueter transforms of strongly T-regular polynomials, with certification.

Every stage output is checked before it is returned: T_h-regularity by an
exact polynomial identity, and membership among T-functions by extracting
a stem over the original T and inducing it back symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hypercomplex import HypercomplexBasis, StepList, canonical_torus_point, suffix
from .ops import dbar_T_x, is_T_regular, laplacian_power
from .poly import CliffordPoly
from .stem import extract_stem, induce_poly


class FueterError(ValueError):
    pass


class EvenGapError(FueterError):
    def __init__(self, h: int, gap: int):
        self.h, self.gap = h, gap
        super().__init__(
            f"gap t{h} - t{h - 1} = {gap} is even; only odd gaps are supported "
            "(even gaps are an open conjecture, not implemented)"
        )


class CertificationError(FueterError):
    def __init__(self, stage: int, what: str, steps: StepList):
        self.stage, self.what, self.steps = stage, what, steps
        super().__init__(f"stage {stage}: output is not {what} over {steps}")


@dataclass(frozen=True)
class FueterPlan:
    T: StepList
    sigma: int
    n: tuple[int, ...]

    def stage_steps(self, h: int) -> StepList:
        return suffix(self.T, h)


def plan(T: StepList, sigma: int) -> FueterPlan:
    if not 1 <= sigma <= T.tau:
        raise FueterError(f"sigma={sigma} outside 1..{T.tau}")
    ns = []
    for h in range(1, sigma + 1):
        gap = T[h] - T[h - 1]
        if gap % 2 == 0:
            raise EvenGapError(h, gap)
        ns.append((gap - 1) // 2)
    return FueterPlan(T, sigma, tuple(ns))


def is_T_function(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> bool:
    """Exact test: f equals the function induced by its extracted stem."""
    F = extract_stem(f, T, basis, canonical_torus_point(basis, T))
    return induce_poly(F) == f


def is_strongly_T_regular(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> bool:
    return is_T_regular(f, T, basis) and is_T_function(f, T, basis)


@dataclass(frozen=True)
class Certificate:
    stage: int
    steps: StepList
    laplacians: int
    regular: bool
    t_function: bool

    @property
    def ok(self) -> bool:
        return self.regular and self.t_function


@dataclass
class FueterRun:
    plan: FueterPlan
    stages: list[CliffordPoly] = field(default_factory=list)
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def result(self) -> CliffordPoly:
        return self.stages[-1]


def run_pipeline(
    f: CliffordPoly, T: StepList, basis: HypercomplexBasis, sigma: int, check_input: bool = True
) -> FueterRun:
    """Apply Delta_{T_h}^{n_h} for h = 1..sigma, certifying each stage."""
    fp = plan(T, sigma)
    run = FueterRun(fp)
    if check_input:
        reg, tf = is_T_regular(f, T, basis), is_T_function(f, T, basis)
        run.certificates.append(Certificate(0, T, 0, reg, tf))
        if not reg:
            raise CertificationError(0, "regular", T)
        if not tf:
            raise CertificationError(0, "a T-function", T)
    run.stages.append(f)
    for h in range(1, sigma + 1):
        Th = suffix(T, h)
        f = laplacian_power(f, Th, basis, fp.n[h - 1])
        reg = is_T_regular(f, Th, basis)
        tf = is_T_function(f, T, basis)
        run.certificates.append(Certificate(h, Th, fp.n[h - 1], reg, tf))
        run.stages.append(f)
        if not reg:
            raise CertificationError(h, "regular", Th)
        if not tf:
            raise CertificationError(h, "a T-function", T)
    return run


def first_transform(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> CliffordPoly:
    return run_pipeline(f, T, basis, 1).result


def sigma_transform(f: CliffordPoly, T: StepList, basis: HypercomplexBasis, sigma: int) -> CliffordPoly:
    return run_pipeline(f, T, basis, sigma).result


@dataclass(frozen=True)
class NegativeControl:
    steps: StepList
    laplacians: int
    laplacian: CliffordPoly
    residue: CliffordPoly

    @property
    def regular(self) -> bool:
        return self.residue.is_zero()


def negative_control(f: CliffordPoly, T: StepList, basis: HypercomplexBasis, n: int | None = None) -> NegativeControl:
    """Skip the staged transform: apply the full Delta_{(N)}^n and report dbar_{(N)}.

    ``n`` defaults to the first-stage count n1 (or 1 when the first gap is even).
    """
    if n is None:
        gap = T[1] - T[0] if T.tau else 1
        n = max((gap - 1) // 2, 1) if gap % 2 else 1
    full = StepList((T.N,))
    lap = laplacian_power(f, full, basis, n)
    residue = dbar_T_x(lap, full, basis).as_poly()
    return NegativeControl(full, n, lap, residue)
