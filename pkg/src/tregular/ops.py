"""Operators on polynomials in the x-variables.

The global operators carry factors ``x^u / ||x^u||^2``.  They are computed
as a numerator over ``prod_u ||x^u||^{2 e_u}`` and then reduced by exact
division, so nothing ever leaves exact polynomial arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .algebra import Multivector
from .hypercomplex import HypercomplexBasis, StepList, TorusPoint
from .poly import CliffordPoly, NotDivisibleError, VarSpace, laurent_normalize
from .stem import block_norm_sq, block_vector


class NotPolynomialError(ValueError):
    pass


@dataclass(frozen=True)
class RationalForm:
    """numerator / prod_u ||x^u||^{2 e_u}."""

    numerator: CliffordPoly
    T: StepList
    basis: HypercomplexBasis
    denom: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.denom) != self.T.tau or any(e < 0 for e in self.denom):
            raise ValueError(f"bad denominator exponents {self.denom}")

    def is_polynomial(self) -> bool:
        return self.numerator.is_zero() or not any(self.denom)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def reduce(self) -> "RationalForm":
        num = self.numerator
        denom = list(self.denom)
        if num.is_zero():
            return RationalForm(num, self.T, self.basis, (0,) * len(denom))
        for u in range(1, self.T.tau + 1):
            N = block_norm_sq(self.basis, self.T, u)
            while denom[u - 1]:
                try:
                    num = num.exact_divide(N)
                except NotDivisibleError:
                    break
                denom[u - 1] -= 1
        return RationalForm(num, self.T, self.basis, tuple(denom))

    def denominator(self) -> CliffordPoly:
        sig = self.basis.sig
        out = CliffordPoly.const(Multivector.scalar(sig), VarSpace.x(self.T.N))
        for u, e in enumerate(self.denom, start=1):
            if e:
                out = out * block_norm_sq(self.basis, self.T, u) ** e
        return out

    def as_poly(self) -> CliffordPoly:
        red = self.reduce()
        if not red.is_polynomial():
            raise NotPolynomialError(f"denominator exponents {red.denom} remain after reduction")
        return red.numerator

    def same_value(self, other: "RationalForm") -> bool:
        """Cross-multiplied equality; the two forms may use different step lists."""
        return self.numerator * other.denominator() == other.numerator * self.denominator()


def _x_space(T: StepList) -> VarSpace:
    return VarSpace.x(T.N)


def _check(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> None:
    if f.space != _x_space(T):
        raise ValueError(f"expected a polynomial in x0..x{T.N}")
    if basis.N != T.N:
        raise ValueError(f"basis dimension N={basis.N} does not match steps {T}")


def _full_denominator(T: StepList, basis: HypercomplexBasis, skip: int = 0) -> CliffordPoly:
    sig = basis.sig
    out = CliffordPoly.const(Multivector.scalar(sig), _x_space(T))
    for u in range(1, T.tau + 1):
        if u != skip:
            out = out * block_norm_sq(basis, T, u)
    return out


def _euler(f: CliffordPoly, T: StepList, u: int) -> CliffordPoly:
    """sum_{s in block u} x_s d/dx_s f."""
    out = CliffordPoly.zero(f.sig, f.space)
    for s in T.block(u):
        out = out + CliffordPoly.var(f.sig, f.space, s) * f.ddx(s)
    return out


def _first_order(f: CliffordPoly, T: StepList, basis: HypercomplexBasis, conjugate: bool) -> RationalForm:
    _check(f, T, basis)
    sign = -1 if conjugate else 1
    mirror = f.ddx(0)
    for s in range(1, T.t0 + 1):
        mirror = mirror + f.ddx(s).lmul(basis[s]).scale(sign)
    num = _full_denominator(T, basis) * mirror
    for u in range(1, T.tau + 1):
        xu = block_vector(basis, T, u).scale(sign)
        num = num + _full_denominator(T, basis, skip=u) * xu * _euler(f, T, u)
    return RationalForm(num, T, basis, (1,) * T.tau)


def dbar_T_x_form(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> RationalForm:
    """Unreduced multiply-through form of dbar_T f."""
    return _first_order(f, T, basis, conjugate=False)


def dbar_T_x(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> RationalForm:
    return _first_order(f, T, basis, conjugate=False).reduce()


def d_T_x(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> RationalForm:
    return _first_order(f, T, basis, conjugate=True).reduce()


def delta_T_x_form(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> RationalForm:
    _check(f, T, basis)
    mirror = CliffordPoly.zero(f.sig, f.space)
    for s in T.block(0):
        mirror = mirror + f.ddx(s, 2)
    num = _full_denominator(T, basis) * mirror
    for u in range(1, T.tau + 1):
        block = list(T.block(u))
        first = {s: f.ddx(s) for s in block}
        radial = CliffordPoly.zero(f.sig, f.space)
        for s in block:
            xs = CliffordPoly.var(f.sig, f.space, s)
            for s2 in block:
                xs2 = CliffordPoly.var(f.sig, f.space, s2)
                radial = radial + xs * xs2 * first[s].ddx(s2)
        num = num + _full_denominator(T, basis, skip=u) * radial
    return RationalForm(num, T, basis, (1,) * T.tau)


def delta_T_x(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> RationalForm:
    return delta_T_x_form(f, T, basis).reduce()


def is_T_regular(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> bool:
    return dbar_T_x_form(f, T, basis).numerator.is_zero()


def is_T_harmonic(f: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> bool:
    return delta_T_x_form(f, T, basis).numerator.is_zero()


def laplacian_power(f: CliffordPoly, T: StepList, basis: HypercomplexBasis, n: int) -> CliffordPoly:
    """Delta_T^n f, requiring every intermediate result to be a polynomial."""
    for _ in range(n):
        f = delta_T_x(f, T, basis).as_poly()
    return f


# --- slices -------------------------------------------------------------------


@dataclass(frozen=True)
class SlicePoly:
    """Polynomial in (x0..x_{t0}, b1..b_tau) attached to a torus point."""

    poly: CliffordPoly
    J: TorusPoint
    basis: HypercomplexBasis

    def map(self, fn: Callable[[CliffordPoly], CliffordPoly]) -> "SlicePoly":
        return SlicePoly(fn(self.poly), self.J, self.basis)


def slice_space(T: StepList) -> VarSpace:
    return VarSpace.stem(T.t0, T.tau)


def restrict(f: CliffordPoly, T: StepList, basis: HypercomplexBasis, J: TorusPoint) -> SlicePoly:
    """f_J: substitute block u by b_u J_u, keeping mirror coordinates."""
    _check(f, T, basis)
    sig = basis.sig
    space = slice_space(T)
    images = [CliffordPoly.var(sig, space, s) for s in T.block(0)]
    for u in range(1, T.tau + 1):
        cs = basis.coords(J[u])
        b = CliffordPoly.var(sig, space, T.t0 + u)
        images.extend(b.scale(cs[s]) for s in T.block(u))
    return SlicePoly(f.substitute(images, space), J, basis)


def restrict_form(form: RationalForm, J: TorusPoint) -> SlicePoly:
    """Restriction of a rational form; ||x^u||^2 becomes b_u^2 on the slice."""
    T, basis = form.T, form.basis
    num = restrict(form.numerator, T, basis, J).poly
    for u, e in enumerate(form.denom, start=1):
        if e:
            num = num.shift(T.t0 + u, -2 * e)
    return SlicePoly(laurent_normalize(num), J, basis)


def _slice_first(phi: SlicePoly, conjugate: bool) -> SlicePoly:
    p, J, basis = phi.poly, phi.J, phi.basis
    T = J.T
    sign = -1 if conjugate else 1
    out = p.ddx(0)
    for s in range(1, T.t0 + 1):
        out = out + p.ddx(s).lmul(basis[s]).scale(sign)
    for u in range(1, T.tau + 1):
        out = out + p.ddx(T.t0 + u).lmul(J[u]).scale(sign)
    return SlicePoly(out, J, basis)


def dbar_J(phi: SlicePoly) -> SlicePoly:
    return _slice_first(phi, conjugate=False)


def d_J(phi: SlicePoly) -> SlicePoly:
    return _slice_first(phi, conjugate=True)


def delta_J(phi: SlicePoly) -> SlicePoly:
    p = phi.poly
    out = CliffordPoly.zero(p.sig, p.space)
    for i in range(len(p.space)):
        out = out + p.ddx(i, 2)
    return SlicePoly(out, phi.J, phi.basis)


def mirror_coords_point(T: StepList, basis: HypercomplexBasis, J: TorusPoint, point: Sequence) -> list:
    """x-coordinates of a + sum_u b_u J_u for a slice point (a0..a_t0, b1..b_tau)."""
    coords = list(point[: T.t0 + 1]) + [0] * (T.N - T.t0)
    for u in range(1, T.tau + 1):
        cs = basis.coords(J[u])
        b = point[T.t0 + u]
        for s in T.block(u):
            coords[s] = cs[s] * b
    return coords
