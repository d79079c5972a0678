"""Hypercomplex bases, step lists, block decompositions and torus points."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import (
    AlgebraError,
    Multivector,
    Signature,
    is_imaginary_unit,
    norm,
    scalar_product,
    trace,
)


class BasisError(ValueError):
    """Base class for hypercomplex-basis axiom violations."""


class EmptyBasisError(BasisError):
    pass


class FirstElementNotOneError(BasisError):
    pass


class NotImaginaryUnitError(BasisError):
    def __init__(self, index: int, element: Multivector):
        self.index = index
        self.element = element
        super().__init__(f"v{index} = {element!r} is not an imaginary unit")


class AnticommutationError(BasisError):
    def __init__(self, s: int, t: int):
        self.pair = (s, t)
        super().__init__(f"v{s} and v{t} do not anticommute")


class CongruenceError(BasisError):
    pass


class StepListError(ValueError):
    pass


@dataclass(frozen=True)
class HypercomplexBasis:
    sig: Signature
    elements: tuple[Multivector, ...]
    name: str = ""

    @property
    def N(self) -> int:
        return len(self.elements) - 1

    def __getitem__(self, s: int) -> Multivector:
        return self.elements[s]

    def __len__(self) -> int:
        return len(self.elements)

    def vector(self, coords: Sequence) -> Multivector:
        """sum_s coords[s] v_s."""
        if len(coords) != len(self.elements):
            raise ValueError(f"expected {len(self.elements)} coordinates, got {len(coords)}")
        out = Multivector.zero(self.sig)
        for c, v in zip(coords, self.elements):
            if c:
                out = out + v.scale(c)
        return out

    def coords(self, x: Multivector) -> tuple[Fraction, ...]:
        """Coordinates of ``x`` in this basis; raises if ``x`` leaves the span."""
        cs = tuple(scalar_product(x, v) for v in self.elements)
        if self.vector(cs) != x:
            raise AlgebraError(f"{x!r} is not in the span of {self.name or 'the basis'}")
        return cs


def validate_basis(elements: Sequence[Multivector], name: str = "") -> HypercomplexBasis:
    elements = tuple(elements)
    if len(elements) < 2:
        raise EmptyBasisError("a hypercomplex basis needs v0 = 1 and at least one unit")
    sig = elements[0].sig
    for v in elements:
        if v.sig != sig:
            raise AlgebraError("basis elements live in different algebras")
    if elements[0] != 1:
        raise FirstElementNotOneError(f"v0 must be 1, got {elements[0]!r}")
    for s, v in enumerate(elements[1:], start=1):
        if not is_imaginary_unit(v):
            raise NotImaginaryUnitError(s, v)
    for s, t in combinations(range(1, len(elements)), 2):
        a, b = elements[s], elements[t]
        if not (a * b + b * a).is_zero():
            raise AnticommutationError(s, t)
    return HypercomplexBasis(sig, elements, name)


def paravector_basis(m: int) -> HypercomplexBasis:
    """(1, e1, ..., em) in Cl(0, m)."""
    sig = Signature(0, m)
    els = [Multivector.scalar(sig)] + [Multivector.generator(sig, i) for i in range(1, m + 1)]
    return validate_basis(els, f"paravector:{m}")


def grade_h_basis(m: int, h: int) -> HypercomplexBasis:
    """(1, all grade-h blades) in Cl(0, m), for h = 1 mod 4."""
    if h % 4 != 1 or not 1 <= h <= m:
        raise CongruenceError(f"grade basis needs h = 1 mod 4 and h <= m, got m={m}, h={h}")
    sig = Signature(0, m)
    els = [Multivector.scalar(sig)]
    for idx in combinations(range(1, m + 1), h):
        els.append(Multivector.blade(sig, idx))
    return validate_basis(els, f"vh:{m},{h}")


def w_h_basis(m: int, h: int) -> HypercomplexBasis:
    """(1, e1, ..., eh, e_{1..h}) in Cl(0, m), for h = 2 mod 4."""
    if h % 4 != 2 or not 1 <= h <= m:
        raise CongruenceError(f"W basis needs h = 2 mod 4 and h <= m, got m={m}, h={h}")
    sig = Signature(0, m)
    els = [Multivector.scalar(sig)]
    els += [Multivector.generator(sig, i) for i in range(1, h + 1)]
    els.append(Multivector.blade(sig, range(1, h + 1)))
    return validate_basis(els, f"wh:{m},{h}")


def basis_from_name(spec: str) -> HypercomplexBasis:
    """Parse ``paravector:m``, ``vh:m,h`` or ``wh:m,h``."""
    kind, _, args = spec.partition(":")
    try:
        nums = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise ValueError(f"bad basis spec {spec!r}") from None
    if kind == "paravector" and len(nums) == 1:
        return paravector_basis(nums[0])
    if kind == "vh" and len(nums) == 2:
        return grade_h_basis(*nums)
    if kind == "wh" and len(nums) == 2:
        return w_h_basis(*nums)
    raise ValueError(f"bad basis spec {spec!r}; use paravector:m, vh:m,h or wh:m,h")


@dataclass(frozen=True)
class StepList:
    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        steps = tuple(int(t) for t in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise StepListError("empty step list")
        if steps[0] < 0 or any(a >= b for a, b in zip(steps, steps[1:])):
            raise StepListError(f"steps must satisfy 0 <= t0 < t1 < ...: {steps}")

    @classmethod
    def parse(cls, text: str) -> "StepList":
        try:
            return cls(tuple(int(t) for t in text.split(",")))
        except ValueError:
            raise StepListError(f"bad step list {text!r}") from None

    @property
    def N(self) -> int:
        return self.steps[-1]

    @property
    def tau(self) -> int:
        return len(self.steps) - 1

    @property
    def t0(self) -> int:
        return self.steps[0]

    def __getitem__(self, h: int) -> int:
        return self.steps[h]

    def block(self, h: int) -> range:
        """Coordinate indices of block ``h`` (h = 0 is the mirror x0..x_{t0})."""
        if h == 0:
            return range(0, self.t0 + 1)
        if not 1 <= h <= self.tau:
            raise StepListError(f"block {h} out of range for {self}")
        return range(self.steps[h - 1] + 1, self.steps[h] + 1)

    def blocks(self) -> list[range]:
        return [self.block(h) for h in range(self.tau + 1)]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.steps)) + ")"


def suffix(T: StepList, sigma: int) -> StepList:
    """T_sigma = (t_sigma, ..., t_tau)."""
    if not 1 <= sigma <= T.tau:
        raise StepListError(f"sigma={sigma} outside 1..{T.tau}")
    return StepList(T.steps[sigma:])


def decompose(coords: Sequence, T: StepList) -> tuple[tuple, ...]:
    if len(coords) != T.N + 1:
        raise ValueError(f"expected {T.N + 1} coordinates, got {len(coords)}")
    return tuple(tuple(coords[s] for s in r) for r in T.blocks())


def reassemble(blocks: Sequence[Sequence]) -> tuple:
    return tuple(c for b in blocks for c in b)


def sigma_sign(h: int, K: Sequence[int]) -> int:
    """Parity of #{k in K : k <= h}."""
    return sum(1 for k in K if k <= h) & 1


def rational_sphere_point(basis: HypercomplexBasis, block: Sequence[int], seed: int) -> Multivector:
    """A unit vector with rational coordinates in span{v_s : s in block}.

    Uses inverse stereographic projection of a random rational point.
    """
    block = list(block)
    if not block:
        raise ValueError("empty block")
    rng = random.Random(seed)
    d = len(block)
    if d == 1:
        coords = [Fraction(rng.choice((1, -1)))]
    else:
        ys = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 5), rng.randint(1, 4)) for _ in range(d - 1)]
        r2 = sum(y * y for y in ys)
        coords = [2 * y / (1 + r2) for y in ys] + [(r2 - 1) / (1 + r2)]
        perm = list(range(d))
        rng.shuffle(perm)
        coords = [coords[i] for i in perm]
    out = Multivector.zero(basis.sig)
    for s, c in zip(block, coords):
        out = out + basis[s].scale(c)
    return out


@dataclass(frozen=True)
class TorusPoint:
    T: StepList
    units: tuple[Multivector, ...]

    def __getitem__(self, h: int) -> Multivector:
        """J_h, 1-based."""
        return self.units[h - 1]

    def product(self, K: Sequence[int], sig: Signature) -> Multivector:
        """J_K = J_{k1} ... J_{kp} for k1 < ... < kp."""
        out = Multivector.scalar(sig)
        for k in sorted(K):
            out = out * self.units[k - 1]
        return out


def torus_point(basis: HypercomplexBasis, T: StepList, seed: int) -> TorusPoint:
    rng = random.Random(seed)
    units = tuple(
        rational_sphere_point(basis, T.block(h), rng.randrange(1 << 30)) for h in range(1, T.tau + 1)
    )
    return TorusPoint(T, units)


def canonical_torus_point(basis: HypercomplexBasis, T: StepList) -> TorusPoint:
    """I_h = first basis vector of block h."""
    return TorusPoint(T, tuple(basis[T.block(h)[0]] for h in range(1, T.tau + 1)))


def make_torus_point(basis: HypercomplexBasis, T: StepList, units: Sequence[Multivector]) -> TorusPoint:
    units = tuple(units)
    if len(units) != T.tau:
        raise ValueError(f"expected {T.tau} torus units, got {len(units)}")
    for h, J in enumerate(units, start=1):
        cs = basis.coords(J)
        if any(c for s, c in enumerate(cs) if s not in T.block(h)):
            raise ValueError(f"J{h} leaves block {h}")
        if sum(c * c for c in cs) != 1:
            raise ValueError(f"J{h} is not a unit vector")
        if not (trace(J).is_zero() and norm(J) == 1):
            raise ValueError(f"J{h} is not an imaginary unit")
    return TorusPoint(T, units)
