"""The recursive polynomial family T_kappa and the degree-k sets F_k."""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .algebra import Multivector
from .hypercomplex import HypercomplexBasis, StepList
from .poly import CliffordPoly, VarSpace
from .stem import block_vector

MultiIndex = tuple[int, ...]


class TPolyFamily:
    """Memoized generator of T_kappa for one step list and basis."""

    def __init__(self, T: StepList, basis: HypercomplexBasis):
        if basis.N != T.N:
            raise ValueError(f"basis dimension N={basis.N} does not match steps {T}")
        self.T = T
        self.basis = basis
        self.space = VarSpace.x(T.N)
        sig = basis.sig
        self._one = CliffordPoly.const(Multivector.scalar(sig), self.space)
        self._x = [CliffordPoly.var(sig, self.space, s) for s in range(T.N + 1)]
        self._x0v = [None] + [self._x[0].lmul(basis[s]) for s in range(1, T.t0 + 1)]
        self._blocks = [None] + [block_vector(basis, T, u) for u in range(1, T.tau + 1)]
        self._cache: dict[MultiIndex, CliffordPoly] = {}
        self._lock = threading.Lock()

    @property
    def arity(self) -> int:
        return self.T.t0 + self.T.tau

    def __call__(self, kappa: Sequence[int]) -> CliffordPoly:
        kappa = tuple(int(k) for k in kappa)
        if len(kappa) != self.arity:
            raise ValueError(f"kappa needs {self.arity} entries for T={self.T}, got {len(kappa)}")
        return self._get(kappa)

    def _get(self, kappa: MultiIndex) -> CliffordPoly:
        if any(k < 0 for k in kappa):
            return CliffordPoly.zero(self.basis.sig, self.space)
        hit = self._cache.get(kappa)
        if hit is not None:
            return hit
        value = self._compute(kappa)
        with self._lock:
            # first writer wins; values are identical anyway
            value = self._cache.setdefault(kappa, value)
        return value

    def _compute(self, kappa: MultiIndex) -> CliffordPoly:
        total = sum(kappa)
        if total == 0:
            return self._one
        t0 = self.T.t0
        n = len(kappa)
        a = sum(kappa[t0:])
        acc = CliffordPoly.zero(self.basis.sig, self.space)
        for s in range(1, n + 1):
            k = kappa[s - 1]
            if k == 0:
                continue
            prev = self._get(kappa[: s - 1] + (k - 1,) + kappa[s:])
            if s <= t0:
                # x_s - (-1)^a x0 v_s
                bracket = self._x[s] - self._x0v[s] if a % 2 == 0 else self._x[s] + self._x0v[s]
                term = prev * bracket
            else:
                a_s = a - k
                b_s = sum(kappa[s:])
                xu = self._blocks[s - t0]
                bracket = self._x[0] + xu if a_s % 2 == 0 else self._x[0] - xu
                term = prev * bracket
                if b_s % 2:
                    term = -term
            acc = acc + term.scale(k)
        return acc.scale(Fraction(1, total))


_FAMILIES: dict[tuple, TPolyFamily] = {}
_FAMILIES_LOCK = threading.Lock()


def family(T: StepList, basis: HypercomplexBasis) -> TPolyFamily:
    key = (T, basis)
    with _FAMILIES_LOCK:
        fam = _FAMILIES.get(key)
        if fam is None:
            fam = _FAMILIES[key] = TPolyFamily(T, basis)
    return fam


def t_kappa(T: StepList, basis: HypercomplexBasis, kappa: Sequence[int]) -> CliffordPoly:
    return family(T, basis)(kappa)


def multi_indices(n: int, k: int) -> list[MultiIndex]:
    """All kappa in N^n with |kappa| = k, lexicographically descending."""
    if n == 0:
        return [()] if k == 0 else []
    out = []
    for first in range(k, -1, -1):
        for rest in multi_indices(n - 1, k - first):
            out.append((first,) + rest)
    return out


def family_Fk(T: StepList, basis: HypercomplexBasis, k: int) -> list[tuple[MultiIndex, CliffordPoly]]:
    if k < 0:
        raise ValueError("k must be nonnegative")
    fam = family(T, basis)
    return [(kappa, fam(kappa)) for kappa in multi_indices(fam.arity, k)]
