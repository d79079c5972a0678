"""Sparse Clifford algebras Cl(p, q) over the rationals.

Blades are encoded as bit masks: bit ``i - 1`` set means generator ``e_i``
is a factor.  Generators ``e_1 .. e_p`` square to +1 and
``e_{p+1} .. e_{p+q}`` square to -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class AlgebraError(ValueError):
    """Raised on invalid blades or on mixing algebras."""


class SignatureMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise AlgebraError(f"invalid signature ({self.p}, {self.q})")

    @property
    def m(self) -> int:
        return self.p + self.q

    @property
    def dim(self) -> int:
        return 1 << self.m

    def square(self, i: int) -> int:
        """Square of generator ``e_i`` (1-based)."""
        if not 1 <= i <= self.m:
            raise AlgebraError(f"generator e{i} outside Cl({self.p},{self.q})")
        return 1 if i <= self.p else -1

    def __str__(self) -> str:
        return f"Cl({self.p},{self.q})"


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if i < 1 or mask & bit:
            raise AlgebraError(f"bad blade index list {list(indices)!r}")
        mask |= bit
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def grade(mask: int) -> int:
    return bin(mask).count("1")


def _reorder_parity(a: int, b: int) -> int:
    # number of transpositions needed to sort the concatenation e_A e_B
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return swaps & 1


@lru_cache(maxsize=1 << 16)
def blade_product(p: int, a: int, b: int) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``e_A e_B = sign * e_{A xor B}``.

    Generators with index <= p square to +1, the rest to -1.
    """
    parity = _reorder_parity(a, b)
    negative_mask = ~((1 << p) - 1)
    parity += bin(a & b & negative_mask).count("1")
    return (-1 if parity & 1 else 1), a ^ b


def conj_sign(mask: int) -> int:
    return 1 if grade(mask) % 4 in (0, 3) else -1


def _as_fraction(c: object) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c.replace("−", "-"))
    raise TypeError(f"not an exact rational: {c!r}")


class Multivector:
    """Immutable sparse element of Cl(p, q) with rational coefficients."""

    __slots__ = ("sig", "_terms", "_hash")

    def __init__(self, sig: Signature, terms: Mapping[int, object] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            limit = sig.dim
            for mask, c in terms.items():
                if not 0 <= mask < limit:
                    raise AlgebraError(f"blade mask {mask} outside {sig}")
                c = _as_fraction(c)
                if c:
                    clean[mask] = c
        self.sig = sig
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, sig: Signature, terms: dict[int, Fraction]) -> "Multivector":
        # trusted constructor: terms already pruned and validated
        mv = object.__new__(cls)
        mv.sig = sig
        mv._terms = terms
        mv._hash = None
        return mv

    # constructors

    @classmethod
    def scalar(cls, sig: Signature, c: Scalar = 1) -> "Multivector":
        return cls(sig, {0: c})

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls._raw(sig, {})

    @classmethod
    def blade(cls, sig: Signature, indices: Sequence[int], coeff: Scalar = 1) -> "Multivector":
        """``coeff * e_{i1} e_{i2} ...`` for the listed generators, in the given order."""
        out = cls.scalar(sig, coeff)
        for i in indices:
            out = out * cls.generator(sig, i)
        return out

    @classmethod
    def generator(cls, sig: Signature, i: int) -> "Multivector":
        sig.square(i)
        return cls._raw(sig, {1 << (i - 1): Fraction(1)})

    # inspection

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    def coeff(self, mask: int) -> Fraction:
        return self._terms.get(mask, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def scalar_part(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def grades(self) -> set[int]:
        return {grade(k) for k in self._terms}

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Multivector):
            return self.sig == other.sig and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_scalar() and self.scalar_part() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .printing import format_multivector

        return f"Multivector({self.sig}, {format_multivector(self)})"

    # arithmetic

    def _check(self, other: "Multivector") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")

    def _coerce(self, other: object) -> "Multivector":
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Multivector.scalar(self.sig, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Multivector":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Multivector._raw(self.sig, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._raw(self.sig, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: object) -> "Multivector":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "Multivector":
        return (-self) + other

    def scale(self, c: Scalar) -> "Multivector":
        c = _as_fraction(c)
        if not c:
            return Multivector.zero(self.sig)
        return Multivector._raw(self.sig, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other: object) -> "Multivector":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        p = self.sig.p
        out: dict[int, Fraction] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                sign, k = blade_product(p, a, b)
                v = out.get(k, 0) + (ca * cb if sign > 0 else -ca * cb)
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Multivector._raw(self.sig, out)

    def __rmul__(self, other: object) -> "Multivector":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Multivector":
        if n < 0:
            raise AlgebraError("negative powers are not supported; use inverse()")
        out = Multivector.scalar(self.sig, 1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "Multivector":
        return Multivector._raw(self.sig, {k: c * conj_sign(k) for k, c in self._terms.items()})

    def inverse(self) -> "Multivector":
        """Inverse via ``x^c / n(x)``; only defined when n(x) is a nonzero real."""
        n = norm(self)
        if not n.is_scalar() or not n.scalar_part():
            raise AlgebraError("n(x) is not a nonzero real; no conjugate inverse")
        return self.conj().scale(1 / n.scalar_part())

    # serialization

    def to_json(self) -> dict:
        return {
            "signature": [self.sig.p, self.sig.q],
            "terms": [
                {"blade": list(indices_of(k)), "coeff": _frac_str(c)}
                for k, c in sorted(self._terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Multivector":
        p, q = data["signature"]
        sig = Signature(int(p), int(q))
        terms: dict[int, Fraction] = {}
        for t in data["terms"]:
            k = mask_of(t["blade"])
            terms[k] = terms.get(k, Fraction(0)) + _as_fraction(t["coeff"])
        return cls(sig, terms)


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class CliffordAlgebra:
    """Convenience factory for elements of one Cl(p, q)."""

    def __init__(self, p: int, q: int):
        self.sig = Signature(p, q)

    def __repr__(self) -> str:
        return f"CliffordAlgebra({self.sig.p}, {self.sig.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CliffordAlgebra) and other.sig == self.sig

    def __hash__(self) -> int:
        return hash(self.sig)

    def e(self, *indices: int) -> Multivector:
        return Multivector.blade(self.sig, indices)

    def scalar(self, c: Scalar = 1) -> Multivector:
        return Multivector.scalar(self.sig, c)

    def zero(self) -> Multivector:
        return Multivector.zero(self.sig)


def mul(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def conj(a: Multivector) -> Multivector:
    return a.conj()


def trace(x: Multivector) -> Multivector:
    """t(x) = x + x^c."""
    return x + x.conj()


def norm(x: Multivector) -> Multivector:
    """n(x) = x x^c."""
    return x * x.conj()


def is_imaginary_unit(x: Multivector) -> bool:
    return trace(x).is_zero() and norm(x) == 1


def in_quadratic_cone(x: Multivector) -> bool:
    if x.is_scalar():
        return True
    t, n = trace(x), norm(x)
    if not (t.is_scalar() and n.is_scalar()):
        return False
    return 4 * n.scalar_part() > t.scalar_part() ** 2


def scalar_product(
    x: Multivector, y: Multivector, basis: Sequence[int] | None = None
) -> Fraction:
    """Euclidean product of blade coordinates.

    ``basis`` optionally restricts the admissible blades (as masks); an
    operand with weight outside it raises ``AlgebraError``.
    """
    x._check(y)
    if basis is not None:
        allowed = set(basis)
        for v in (x, y):
            stray = set(v._terms) - allowed
            if stray:
                raise AlgebraError(f"operand has blades {sorted(stray)} outside the basis span")
    return sum((c * y._terms[k] for k, c in x._terms.items() if k in y._terms), Fraction(0))
