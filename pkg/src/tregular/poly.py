"""Polynomials in commuting real variables with Clifford coefficients.

Terms are kept in left-coefficient normal form ``c * x^k``.  Internally a
polynomial is a flat map ``(exponents, blade mask) -> Fraction`` so that a
product of two polynomials is a single loop over term pairs.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .algebra import Multivector, Signature, SignatureMismatch, _as_fraction, blade_product

Exps = tuple[int, ...]
Key = tuple[Exps, int]


class PolyError(ValueError):
    pass


class VarSpaceMismatch(PolyError):
    pass


class NotDivisibleError(PolyError):
    def __init__(self, quotient: "CliffordPoly", remainder: "CliffordPoly"):
        self.quotient = quotient
        self.remainder = remainder
        super().__init__(f"not divisible; remainder has {len(remainder)} terms")


class NegativeExponentError(PolyError):
    def __init__(self, offending: list):
        self.offending = offending
        super().__init__(f"residual negative exponents in {len(offending)} terms: {offending[:3]}")


ROLES = ("x", "alpha", "beta")


@dataclass(frozen=True)
class VarSpace:
    names: tuple[str, ...]
    roles: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise PolyError(f"duplicate variable names {self.names}")
        if len(self.roles) != len(self.names) or any(r not in ROLES for r in self.roles):
            raise PolyError("each variable needs a role in x/alpha/beta")

    @classmethod
    def x(cls, N: int) -> "VarSpace":
        return _x_space(N)

    @classmethod
    def stem(cls, t0: int, tau: int) -> "VarSpace":
        return _stem_space(t0, tau)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, var: Union[int, str]) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.names):
                raise PolyError(f"variable index {var} out of range")
            return var
        try:
            return self.names.index(var)
        except ValueError:
            raise PolyError(f"unknown variable {var!r}") from None

    @property
    def beta_indices(self) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.roles) if r == "beta")


_X_CACHE: dict[int, VarSpace] = {}
_STEM_CACHE: dict[tuple[int, int], VarSpace] = {}


def _x_space(N: int) -> VarSpace:
    if N not in _X_CACHE:
        _X_CACHE[N] = VarSpace(tuple(f"x{s}" for s in range(N + 1)), ("x",) * (N + 1))
    return _X_CACHE[N]


def _stem_space(t0: int, tau: int) -> VarSpace:
    key = (t0, tau)
    if key not in _STEM_CACHE:
        names = tuple(f"a{s}" for s in range(t0 + 1)) + tuple(f"b{h}" for h in range(1, tau + 1))
        roles = ("alpha",) * (t0 + 1) + ("beta",) * tau
        _STEM_CACHE[key] = VarSpace(names, roles)
    return _STEM_CACHE[key]


def order_key(exps: Exps) -> tuple:
    """Degree-lex order with the highest-index variable most significant."""
    return (sum(exps), exps[::-1])


def _add_into(out: dict, key: Key, c: Fraction) -> None:
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class _PolyBase:
    __slots__ = ("sig", "space", "_data")

    def __init__(self, sig: Signature, space: VarSpace, data: Mapping[Key, object] | None = None):
        clean: dict[Key, Fraction] = {}
        n = len(space)
        if data:
            for (exps, mask), c in data.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise PolyError(f"exponent vector {exps} does not match {space.names}")
                c = _as_fraction(c)
                if c:
                    _add_into(clean, (exps, mask), c)
        self.sig = sig
        self.space = space
        self._data = clean
        self._validate_exps()

    def _validate_exps(self) -> None:
        raise NotImplementedError

    @classmethod
    def _raw(cls, sig: Signature, space: VarSpace, data: dict[Key, Fraction]):
        obj = object.__new__(cls)
        obj.sig = sig
        obj.space = space
        obj._data = data
        return obj

    # construction helpers

    @classmethod
    def zero(cls, sig: Signature, space: VarSpace):
        return cls._raw(sig, space, {})

    @classmethod
    def const(cls, c: Union[Multivector, int, Fraction], space: VarSpace, sig: Signature | None = None):
        if isinstance(c, Multivector):
            sig = c.sig
            zero = (0,) * len(space)
            return cls._raw(sig, space, {(zero, k): v for k, v in c.items()})
        if sig is None:
            raise PolyError("scalar constant needs a signature")
        return cls(sig, space, {((0,) * len(space), 0): c})

    @classmethod
    def var(cls, sig: Signature, space: VarSpace, var: Union[int, str], coeff: object = 1):
        i = space.index(var)
        exps = tuple(1 if j == i else 0 for j in range(len(space)))
        if isinstance(coeff, Multivector):
            return cls._raw(sig, space, {(exps, k): v for k, v in coeff.items()})
        return cls(sig, space, {(exps, 0): coeff})

    @classmethod
    def from_terms(cls, sig: Signature, space: VarSpace, terms: Mapping[Exps, Multivector]):
        data: dict[Key, Fraction] = {}
        for exps, mv in terms.items():
            for k, v in mv.items():
                _add_into(data, (tuple(exps), k), v)
        obj = cls._raw(sig, space, data)
        obj._validate_exps()
        return obj

    # inspection

    @property
    def terms(self) -> dict[Exps, Multivector]:
        grouped: dict[Exps, dict[int, Fraction]] = {}
        for (exps, k), c in self._data.items():
            grouped.setdefault(exps, {})[k] = c
        return {e: Multivector._raw(self.sig, d) for e, d in grouped.items()}

    def raw_items(self) -> Iterable[tuple[Key, Fraction]]:
        return self._data.items()

    def sorted_terms(self) -> list[tuple[Exps, Multivector]]:
        """Terms in descending monomial order."""
        return sorted(self.terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def __bool__(self) -> bool:
        return bool(self._data)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, _PolyBase):
            return (
                type(self) is type(other)
                and self.sig == other.sig
                and self.space == other.space
                and self._data == other._data
            )
        if isinstance(other, (int, Fraction)) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.sig, self.space, frozenset(self._data.items())))

    def _same(self, other: "_PolyBase") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")
        if self.space != other.space:
            raise VarSpaceMismatch(f"{self.space.names} vs {other.space.names}")

    # additive structure

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Multivector)):
            other = type(self).const(other, self.space, self.sig)
        if not isinstance(other, _PolyBase):
            return NotImplemented
        self._same(other)
        out = dict(self._data)
        for key, c in other._data.items():
            _add_into(out, key, c)
        return self._like(out, other)

    __radd__ = __add__

    def _like(self, data: dict, other: "_PolyBase | None" = None):
        # Laurent wins when mixing the two kinds
        cls = type(self)
        if other is not None and isinstance(other, LaurentPoly):
            cls = LaurentPoly
        return cls._raw(self.sig, self.space, data)

    def __neg__(self):
        return self._like({k: -c for k, c in self._data.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Multivector)):
            other = type(self).const(other, self.space, self.sig)
        if not isinstance(other, _PolyBase):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: object):
        c = _as_fraction(c)
        if not c:
            return self._like({})
        return self._like({k: v * c for k, v in self._data.items()})

    def lmul(self, a: Multivector):
        """a * self, with ``a`` a constant multivector."""
        return self._mv_mul(a, left=True)

    def rmul(self, a: Multivector):
        """self * a."""
        return self._mv_mul(a, left=False)

    def _mv_mul(self, a: Multivector, left: bool):
        if a.sig != self.sig:
            raise SignatureMismatch(f"{a.sig} vs {self.sig}")
        p = self.sig.p
        out: dict[Key, Fraction] = {}
        for (exps, k), c in self._data.items():
            for b, cb in a.items():
                sign, mask = blade_product(p, b, k) if left else blade_product(p, k, b)
                _add_into(out, (exps, mask), c * cb if sign > 0 else -c * cb)
        return self._like(out)

    def shift(self, var: Union[int, str], k: int):
        """Multiply by ``var**k`` (k may be negative for Laurent polynomials)."""
        i = self.space.index(var)
        out = {}
        for (exps, mask), c in self._data.items():
            e = list(exps)
            e[i] += k
            out[(tuple(e), mask)] = c
        if k < 0 and not isinstance(self, LaurentPoly):
            obj = LaurentPoly(self.sig, self.space, out)
            obj._validate_exps()
            return obj
        obj = self._like(out)
        obj._validate_exps()
        return obj

    def ddx(self, var: Union[int, str], times: int = 1):
        i = self.space.index(var)
        data = self._data
        for _ in range(times):
            out: dict[Key, Fraction] = {}
            for (exps, mask), c in data.items():
                e = exps[i]
                if e == 0:
                    continue
                ne = exps[:i] + (e - 1,) + exps[i + 1 :]
                _add_into(out, (ne, mask), c * e)
            data = out
        return self._like(data)

    def degree(self) -> int:
        return max((sum(e) for e, _ in self._data), default=-1)

    def degree_in(self, var: Union[int, str]) -> int:
        i = self.space.index(var)
        return max((e[i] for e, _ in self._data), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e, _ in self._data}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def has_scalar_coeffs(self) -> bool:
        return all(mask == 0 for _, mask in self._data)

    def filter(self, pred) -> "_PolyBase":
        """Keep the terms whose exponent vector satisfies ``pred``."""
        return self._like({k: c for k, c in self._data.items() if pred(k[0])})

    def map_exps(self, fn, space: VarSpace | None = None):
        """Rebuild with exponents transformed by ``fn``; collisions are summed."""
        out: dict[Key, Fraction] = {}
        for (exps, mask), c in self._data.items():
            _add_into(out, (tuple(fn(exps)), mask), c)
        obj = type(self)._raw(self.sig, space or self.space, out)
        obj._validate_exps()
        return obj


class CliffordPoly(_PolyBase):
    __slots__ = ()

    def _validate_exps(self) -> None:
        for exps, _ in self._data:
            if any(e < 0 for e in exps):
                raise PolyError(f"negative exponent {exps} in a polynomial")

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return self.rmul(other)
        if isinstance(other, LaurentPoly):
            return NotImplemented
        if not isinstance(other, CliffordPoly):
            return NotImplemented
        self._same(other)
        p = self.sig.p
        out: dict[Key, Fraction] = {}
        other_items = list(other._data.items())
        for (e1, k1), c1 in self._data.items():
            for (e2, k2), c2 in other_items:
                sign, mask = blade_product(p, k1, k2)
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                _add_into(out, (e, mask), c if sign > 0 else -c)
        return CliffordPoly._raw(self.sig, self.space, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return self.lmul(other)
        return NotImplemented

    def __pow__(self, n: int) -> "CliffordPoly":
        if n < 0:
            raise PolyError("negative power of a polynomial")
        out = CliffordPoly.const(Multivector.scalar(self.sig), self.space)
        for _ in range(n):
            out = out * self
        return out

    def eval(self, point: Union[Sequence, Mapping[str, object]]) -> Multivector:
        """Exact evaluation at a rational point (sequence or name mapping)."""
        if isinstance(point, Mapping):
            missing = [n for n in self.space.names if n not in point]
            if missing:
                raise PolyError(f"missing bindings for {missing}")
            values = [_as_fraction(point[n]) for n in self.space.names]
        else:
            if len(point) != len(self.space):
                raise PolyError(f"expected {len(self.space)} values, got {len(point)}")
            values = [_as_fraction(v) for v in point]
        out: dict[int, Fraction] = {}
        for (exps, mask), c in self._data.items():
            v = c
            for x, e in zip(values, exps):
                if e:
                    v *= x**e
            if v:
                out[mask] = out.get(mask, 0) + v
        return Multivector(self.sig, out)

    def substitute(
        self, images: Union[Sequence["CliffordPoly"], Mapping[str, "CliffordPoly"]], space: VarSpace | None = None
    ) -> "CliffordPoly":
        """Ring homomorphism fixing coefficients, sending variable i to images[i].

        Images may carry Clifford coefficients; a term ``c x_0^k0 x_1^k1 ...``
        becomes ``c * img0^k0 * img1^k1 * ...`` in that order.
        """
        if isinstance(images, Mapping):
            unknown = set(images) - set(self.space.names)
            if unknown:
                raise PolyError(f"unknown variables {sorted(unknown)}")
            target = space
            if target is None:
                target = next(iter(images.values())).space if images else self.space
            seq = []
            for i, n in enumerate(self.space.names):
                if n in images:
                    seq.append(images[n])
                elif target == self.space:
                    seq.append(CliffordPoly.var(self.sig, self.space, i))
                else:
                    raise PolyError(f"missing substitution for {n}")
            images = seq
        images = list(images)
        if len(images) != len(self.space):
            raise PolyError(f"expected {len(self.space)} images, got {len(images)}")
        target = space or (images[0].space if images else self.space)
        for img in images:
            if img.space != target:
                raise VarSpaceMismatch("substitution images live in different spaces")
        one = CliffordPoly.const(Multivector.scalar(self.sig), target)
        powers: dict[tuple[int, int], CliffordPoly] = {}

        def power(i: int, e: int) -> CliffordPoly:
            if (i, e) not in powers:
                powers[(i, e)] = images[i] if e == 1 else power(i, e - 1) * images[i]
            return powers[(i, e)]

        out: dict[Key, Fraction] = {}
        for exps, coeff in self.terms.items():
            img = one
            for i, e in enumerate(exps):
                if e:
                    img = img * power(i, e)
            for key, c in img.lmul(coeff)._data.items():
                _add_into(out, key, c)
        return CliffordPoly._raw(self.sig, target, out)

    # division

    def divmod_scalar(self, d: "CliffordPoly") -> tuple["CliffordPoly", "CliffordPoly"]:
        """Multivariate division by a real-coefficient polynomial.

        Returns ``(q, r)`` with ``self = q*d + r`` where no term of ``r`` is
        divisible by the leading monomial of ``d``.
        """
        self._same(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not d.has_scalar_coeffs():
            raise PolyError("divisor must have real scalar coefficients")
        d_terms = [(e, c) for (e, _), c in d._data.items()]
        lead, lc = max(d_terms, key=lambda t: order_key(t[0]))
        tail = [(e, c) for e, c in d_terms if e != lead]

        rest: dict[Exps, dict[int, Fraction]] = {}
        for (e, mask), c in self._data.items():
            rest.setdefault(e, {})[mask] = c
        heap = [_heap_key(e) for e in rest]
        heapq.heapify(heap)
        q: dict[Key, Fraction] = {}
        r: dict[Key, Fraction] = {}
        while heap:
            e = _from_heap_key(heapq.heappop(heap))
            coeffs = rest.pop(e, None)
            if not coeffs:
                continue
            if all(a >= b for a, b in zip(e, lead)):
                qe = tuple(a - b for a, b in zip(e, lead))
                for mask, c in coeffs.items():
                    qc = c / lc
                    _add_into(q, (qe, mask), qc)
                    for de, dc in tail:
                        target = tuple(a + b for a, b in zip(qe, de))
                        bucket = rest.get(target)
                        if bucket is None:
                            bucket = rest[target] = {}
                            heapq.heappush(heap, _heap_key(target))
                        v = bucket.get(mask, 0) - qc * dc
                        if v:
                            bucket[mask] = v
                        else:
                            bucket.pop(mask, None)
            else:
                for mask, c in coeffs.items():
                    r[(e, mask)] = c
        return (
            CliffordPoly._raw(self.sig, self.space, q),
            CliffordPoly._raw(self.sig, self.space, r),
        )

    def exact_divide(self, d: "CliffordPoly") -> "CliffordPoly":
        q, r = self.divmod_scalar(d)
        if r:
            raise NotDivisibleError(q, r)
        return q

    # serialization

    def to_json(self) -> dict:
        items = sorted(self._data.items(), key=lambda t: (_heap_key(t[0][0]), t[0][1]))
        return {
            "signature": [self.sig.p, self.sig.q],
            "vars": list(self.space.names),
            "roles": list(self.space.roles),
            "terms": [
                {"exps": list(e), "coeff": Multivector._raw(self.sig, {k: c}).to_json()}
                for (e, k), c in items
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping, sig: Signature | None = None) -> "CliffordPoly":
        names = tuple(data["vars"])
        roles = tuple(data.get("roles") or _guess_roles(names))
        space = VarSpace(names, roles)
        if sig is None and "signature" in data:
            sig = Signature(*map(int, data["signature"]))
        out: dict[Key, Fraction] = {}
        for t in data["terms"]:
            mv = Multivector.from_json(t["coeff"])
            if sig is None:
                sig = mv.sig
            elif mv.sig != sig:
                raise SignatureMismatch("mixed signatures in polynomial JSON")
            for k, c in mv.items():
                _add_into(out, (tuple(int(x) for x in t["exps"]), k), c)
        if sig is None:
            raise PolyError("cannot infer the signature of an empty polynomial")
        obj = cls._raw(sig, space, out)
        obj._validate_exps()
        return obj


def _guess_roles(names: Sequence[str]) -> tuple[str, ...]:
    roles = []
    for n in names:
        roles.append({"a": "alpha", "b": "beta"}.get(n[0], "x"))
    return tuple(roles)


def _heap_key(e: Exps) -> tuple:
    # smallest heap key = largest monomial
    return (-sum(e), tuple(-x for x in reversed(e)))


def _from_heap_key(k: tuple) -> Exps:
    return tuple(-x for x in reversed(k[1]))


class LaurentPoly(_PolyBase):
    """Like CliffordPoly, but beta-role variables may have negative exponents."""

    __slots__ = ()

    def _validate_exps(self) -> None:
        betas = set(self.space.beta_indices)
        for exps, _ in self._data:
            for i, e in enumerate(exps):
                if e < 0 and i not in betas:
                    raise PolyError(f"negative exponent on non-beta variable {self.space.names[i]}")

    @classmethod
    def from_poly(cls, p: CliffordPoly) -> "LaurentPoly":
        return cls._raw(p.sig, p.space, dict(p._data))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Multivector):
            return self.rmul(other)
        return NotImplemented


def laurent_normalize(p: _PolyBase) -> CliffordPoly:
    if isinstance(p, CliffordPoly):
        return p
    bad = [(e, m, c) for (e, m), c in p.raw_items() if any(x < 0 for x in e)]
    if bad:
        raise NegativeExponentError(bad)
    return CliffordPoly._raw(p.sig, p.space, dict(p._data))


def x_poly_ring(sig: Signature, N: int) -> tuple[VarSpace, list[CliffordPoly]]:
    """The x-variable space and its coordinate polynomials x0..xN."""
    space = VarSpace.x(N)
    return space, [CliffordPoly.var(sig, space, s) for s in range(N + 1)]
