"""T-stem functions and the operators acting on them.

A stem over ``T = (t0, ..., t_tau)`` has one component ``F_K`` per subset
``K`` of ``{1..tau}``; each component is a polynomial in
``(a0..a_{t0}, b1..b_tau)`` whose degree in ``b_h`` is odd exactly when
``h`` is in ``K``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import Multivector
from .hypercomplex import HypercomplexBasis, StepList, TorusPoint, sigma_sign, suffix
from .poly import CliffordPoly, LaurentPoly, VarSpace, laurent_normalize

Subset = tuple[int, ...]


class StemError(ValueError):
    pass


class StemParityError(StemError):
    def __init__(self, K: Subset, h: int, exps: tuple[int, ...]):
        self.K, self.h, self.exps = K, h, exps
        want = "odd" if h in K else "even"
        super().__init__(f"component K={set(K) or '{}'} has monomial {exps} with b{h}-degree not {want}")


class NotHarmonicError(StemError):
    pass


def all_subsets(tau: int) -> list[Subset]:
    """Subsets of {1..tau}, by size then lexicographically."""
    return [c for r in range(tau + 1) for c in combinations(range(1, tau + 1), r)]


def sym_diff(K: Subset, h: int) -> Subset:
    s = set(K) ^ {h}
    return tuple(sorted(s))


def _norm_subset(K: Iterable[int]) -> Subset:
    return tuple(sorted(set(int(k) for k in K)))


class StemFunction:
    """Immutable map K -> F_K with the even/odd rule enforced on construction."""

    __slots__ = ("T", "basis", "_comps")

    def __init__(
        self,
        T: StepList,
        basis: HypercomplexBasis,
        components: Mapping[Iterable[int], CliffordPoly] | None = None,
        validate: bool = True,
    ):
        if basis.N != T.N:
            raise StemError(f"basis has N={basis.N} but steps end at {T.N}")
        self.T = T
        self.basis = basis
        space = VarSpace.stem(T.t0, T.tau)
        comps: dict[Subset, CliffordPoly] = {}
        for K, p in (components or {}).items():
            K = _norm_subset(K)
            if any(not 1 <= k <= T.tau for k in K):
                raise StemError(f"subset {K} not inside 1..{T.tau}")
            if p.space != space:
                raise StemError(f"component {K} lives in {p.space.names}, expected {space.names}")
            if p.sig != basis.sig:
                raise StemError("component signature differs from the basis algebra")
            if K in comps:
                p = comps[K] + p
            if p:
                comps[K] = p
            else:
                comps.pop(K, None)
        self._comps = comps
        if validate:
            self._check_parity()

    def _check_parity(self) -> None:
        t0, tau = self.T.t0, self.T.tau
        for K in sorted(self._comps):
            for (exps, _), _c in self._comps[K].raw_items():
                for h in range(1, tau + 1):
                    if (exps[t0 + h] & 1) != (h in K):
                        raise StemParityError(K, h, exps)

    @property
    def space(self) -> VarSpace:
        return VarSpace.stem(self.T.t0, self.T.tau)

    @property
    def sig(self):
        return self.basis.sig

    def __getitem__(self, K: Iterable[int]) -> CliffordPoly:
        K = _norm_subset(K)
        p = self._comps.get(K)
        return p if p is not None else CliffordPoly.zero(self.sig, self.space)

    def items(self) -> Iterator[tuple[Subset, CliffordPoly]]:
        order = {K: i for i, K in enumerate(all_subsets(self.T.tau))}
        return iter(sorted(self._comps.items(), key=lambda kv: order[kv[0]]))

    def support(self) -> list[Subset]:
        return [K for K, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._comps

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StemFunction):
            return NotImplemented
        return self.T == other.T and self.basis == other.basis and self._comps == other._comps

    def __repr__(self) -> str:
        from .printing import format_stem

        return f"StemFunction{self.T}[{format_stem(self)}]"

    def _like(self, comps: Mapping[Subset, CliffordPoly], validate: bool = True) -> "StemFunction":
        return StemFunction(self.T, self.basis, comps, validate=validate)

    def __add__(self, other: "StemFunction") -> "StemFunction":
        self._same(other)
        comps = dict(self._comps)
        for K, p in other._comps.items():
            comps[K] = comps[K] + p if K in comps else p
        return self._like(comps, validate=False)

    def __sub__(self, other: "StemFunction") -> "StemFunction":
        return self + other.scale(-1)

    def scale(self, c) -> "StemFunction":
        return self._like({K: p.scale(c) for K, p in self._comps.items()}, validate=False)

    def _same(self, other: "StemFunction") -> None:
        if self.T != other.T or self.basis != other.basis:
            raise StemError("stems over different steps or bases")

    def to_json(self) -> dict:
        return {
            "steps": list(self.T.steps),
            "components": [{"K": list(K), "poly": p.to_json()} for K, p in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping, basis: HypercomplexBasis) -> "StemFunction":
        T = StepList(tuple(data["steps"]))
        comps = {}
        for c in data["components"]:
            p = CliffordPoly.from_json(c["poly"], basis.sig)
            if p.space != VarSpace.stem(T.t0, T.tau):
                p = CliffordPoly._raw(p.sig, VarSpace.stem(T.t0, T.tau), dict(p.raw_items()))
            comps[tuple(c["K"])] = p
        return cls(T, basis, comps)


def validate_stem(
    T: StepList, basis: HypercomplexBasis, components: Mapping[Iterable[int], CliffordPoly]
) -> StemFunction:
    return StemFunction(T, basis, components, validate=True)


def stem_var(F_or_space, name: str, sig=None, coeff=1) -> CliffordPoly:
    """Coordinate polynomial of a stem variable, e.g. ``stem_var(F, "b1")``."""
    if isinstance(F_or_space, StemFunction):
        return CliffordPoly.var(F_or_space.sig, F_or_space.space, name, coeff)
    return CliffordPoly.var(sig, F_or_space, name, coeff)


# --- stem operators -------------------------------------------------------


def _t0_of(space: VarSpace) -> int:
    return sum(1 for r in space.roles if r == "alpha") - 1


def dbar_alpha_u(phi: CliffordPoly, u: int, basis: HypercomplexBasis) -> CliffordPoly:
    """d/da0 phi - (-1)^u sum_{s=1}^{t0} v_s d/da_s phi."""
    t0 = _t0_of(phi.space)
    out = phi.ddx(0)
    for s in range(1, t0 + 1):
        term = phi.ddx(s).lmul(basis[s])
        out = out - term if u % 2 == 0 else out + term
    return out


def _beta_index(F: StemFunction, h: int) -> int:
    return F.T.t0 + h


def dbar_T(F: StemFunction) -> StemFunction:
    tau = F.T.tau
    comps = {}
    for K in all_subsets(tau):
        acc = dbar_alpha_u(F[K], len(K) + 1, F.basis)
        for h in range(1, tau + 1):
            dp = F[sym_diff(K, h)].ddx(_beta_index(F, h))
            acc = acc + dp if sigma_sign(h, K) else acc - dp
        comps[K] = acc
    return F._like(comps)


def d_T(F: StemFunction) -> StemFunction:
    tau = F.T.tau
    comps = {}
    for K in all_subsets(tau):
        acc = dbar_alpha_u(F[K], len(K), F.basis)
        for h in range(1, tau + 1):
            dp = F[sym_diff(K, h)].ddx(_beta_index(F, h))
            acc = acc - dp if sigma_sign(h, K) else acc + dp
        comps[K] = acc
    return F._like(comps)


def laplacian_components(p: CliffordPoly) -> CliffordPoly:
    out = CliffordPoly.zero(p.sig, p.space)
    for i in range(len(p.space)):
        out = out + p.ddx(i, 2)
    return out


def delta_T(F: StemFunction) -> StemFunction:
    return F._like({K: laplacian_components(p) for K, p in F.items()})


# --- induction and extraction --------------------------------------------


def induce(F: StemFunction, J: TorusPoint, point: Sequence) -> Multivector:
    """sum_K J_K F_K(alpha, beta) at a rational point ``(a0..a_t0, b1..b_tau)``."""
    out = Multivector.zero(F.sig)
    for K, p in F.items():
        out = out + J.product(K, F.sig) * p.eval(point)
    return out


def block_vector(basis: HypercomplexBasis, T: StepList, u: int) -> CliffordPoly:
    """x^u = sum_{s in block u} x_s v_s as a polynomial in x-variables."""
    space = VarSpace.x(T.N)
    out = CliffordPoly.zero(basis.sig, space)
    for s in T.block(u):
        out = out + CliffordPoly.var(basis.sig, space, s, basis[s])
    return out


def block_norm_sq(basis: HypercomplexBasis, T: StepList, u: int) -> CliffordPoly:
    space = VarSpace.x(T.N)
    out = CliffordPoly.zero(basis.sig, space)
    for s in T.block(u):
        x = CliffordPoly.var(basis.sig, space, s)
        out = out + x * x
    return out


class _PowerCache:
    def __init__(self, base: CliffordPoly):
        self._pows = [CliffordPoly.const(Multivector.scalar(base.sig), base.space), base]

    def __getitem__(self, n: int) -> CliffordPoly:
        while len(self._pows) <= n:
            self._pows.append(self._pows[-1] * self._pows[1])
        return self._pows[n]


def induce_poly(F: StemFunction) -> CliffordPoly:
    """The induced T-function as a polynomial in x0..xN.

    Uses J_u b_u = x^u and b_u^2 = ||x^u||^2, so no torus point is needed.
    """
    T, basis = F.T, F.basis
    space = VarSpace.x(T.N)
    sig = basis.sig
    t0 = T.t0
    norms = [None] + [_PowerCache(block_norm_sq(basis, T, u)) for u in range(1, T.tau + 1)]
    vecs = [None] + [block_vector(basis, T, u) for u in range(1, T.tau + 1)]
    one = CliffordPoly.const(Multivector.scalar(sig), space)
    out = CliffordPoly.zero(sig, space)
    for K, p in F.items():
        XK = one
        for k in K:
            XK = XK * vecs[k]
        G = CliffordPoly.zero(sig, space)
        for exps, coeff in p.terms.items():
            mono_exps = tuple(exps[: t0 + 1]) + (0,) * (T.N - t0)
            mono = CliffordPoly.from_terms(sig, space, {mono_exps: coeff})
            for h in range(1, T.tau + 1):
                e = exps[t0 + h]
                n = (e - 1) // 2 if h in K else e // 2
                if n:
                    mono = mono * norms[h][n]
            G = G + mono
        out = out + XK * G
    return out


def _torus_coords(basis: HypercomplexBasis, T: StepList, I: TorusPoint) -> list[list[Fraction]]:
    out = []
    for u in range(1, T.tau + 1):
        cs = basis.coords(I[u])
        out.append([cs[s] for s in T.block(u)])
    return out


def extract_stem(f: CliffordPoly, T: StepList, basis: HypercomplexBasis, I: TorusPoint) -> StemFunction:
    """Candidate stem of ``f``: F_K = I_K^{-1} (part of f(a + b I) with b-parity K).

    This equals 2^{-tau} I_K^{-1} sum_H (-1)^{|K n H|} f(a + b^H I).  The
    caller decides whether ``f`` is really induced by the result.
    """
    sig = basis.sig
    space = VarSpace.stem(T.t0, T.tau)
    images: list[CliffordPoly] = []
    for s in T.block(0):
        images.append(CliffordPoly.var(sig, space, s))
    for u, cs in enumerate(_torus_coords(basis, T, I), start=1):
        b = CliffordPoly.var(sig, space, T.t0 + u)
        images.extend(b.scale(c) for c in cs)
    g = f.substitute(images, space)
    t0, tau = T.t0, T.tau
    parts: dict[Subset, dict] = {}
    for (exps, mask), c in g.raw_items():
        K = tuple(h for h in range(1, tau + 1) if exps[t0 + h] & 1)
        parts.setdefault(K, {})[(exps, mask)] = c
    comps = {}
    for K, data in parts.items():
        part = CliffordPoly._raw(sig, space, data)
        comps[K] = part.lmul(I.product(K, sig).inverse())
    return StemFunction(T, basis, comps)


def is_induced_by(f: CliffordPoly, F: StemFunction) -> bool:
    return induce_poly(F) == f


# --- tilde map --------------------------------------------------------------


def tilde(F: StemFunction) -> StemFunction:
    """The stem over T~ = (t1, ..., t_tau) inducing the same function."""
    T = F.T
    if T.tau == 0:
        raise StemError("tilde needs at least one step beyond t0")
    return _collapse(F, 1)


def multitilde(F: StemFunction, sigma: int, closed_form: bool = False) -> StemFunction:
    """sigma-fold tilde; ``closed_form`` uses the direct sum over k1 < ... < kp."""
    if not 1 <= sigma <= F.T.tau:
        raise StemError(f"sigma={sigma} outside 1..{F.T.tau}")
    if closed_form:
        return _collapse(F, sigma)
    for _ in range(sigma):
        F = tilde(F)
    return F


def _collapse(F: StemFunction, sigma: int) -> StemFunction:
    T, basis, sig = F.T, F.basis, F.sig
    Ts = suffix(T, sigma)
    t0, ts = T.t0, Ts.t0
    new_space = VarSpace.stem(ts, Ts.tau)
    one = CliffordPoly.const(Multivector.scalar(sig), new_space)
    norms = [None]
    vecs = [None]
    for v in range(1, sigma + 1):
        N = CliffordPoly.zero(sig, new_space)
        X = CliffordPoly.zero(sig, new_space)
        for s in T.block(v):
            a = CliffordPoly.var(sig, new_space, s)
            N = N + a * a
            X = X + a.lmul(basis[s])
        norms.append(_PowerCache(N))
        vecs.append(X)

    comps: dict[Subset, CliffordPoly] = {}
    for K, p in F.items():
        S = tuple(k for k in K if k <= sigma)
        H = tuple(k - sigma for k in K if k > sigma)
        body = CliffordPoly.zero(sig, new_space)
        for exps, coeff in p.terms.items():
            new_exps = (
                tuple(exps[: t0 + 1])
                + (0,) * (ts - t0)
                + tuple(exps[t0 + sigma + 1 :])
            )
            mono = CliffordPoly.from_terms(sig, new_space, {new_exps: coeff})
            for v in range(1, sigma + 1):
                n = exps[t0 + v] // 2
                if n:
                    mono = mono * norms[v][n]
            body = body + mono
        XS = one
        for k in S:
            XS = XS * vecs[k]
        term = XS * body
        if (len(S) * len(H)) & 1:
            term = -term
        comps[H] = comps[H] + term if H in comps else term
    return StemFunction(Ts, basis, comps)


# --- mixed Laplacians and the dbar correction -------------------------------


def delta_Tsigma(F: StemFunction, sigma: int) -> StemFunction:
    """Stem over T of the T_sigma-Laplacian of the function induced by F."""
    T = F.T
    if not 1 <= sigma <= T.tau:
        raise StemError(f"sigma={sigma} outside 1..{T.tau}")
    base = delta_T(F)
    comps = {}
    for K, p in F.items():
        acc = LaurentPoly.from_poly(base[K])
        for v in range(1, sigma + 1):
            b = T.t0 + v
            gap = T[v] - T[v - 1]
            if gap != 1:
                acc = acc + p.ddx(b).shift(b, -1).scale(gap - 1)
                if v in K:
                    acc = acc + p.shift(b, -2).scale(1 - gap)
        comps[K] = laurent_normalize(acc)
    return F._like(comps)


def correction_g(F: StemFunction) -> StemFunction:
    """G_K = b1^{-1} F_{{1} u K} for 1 not in K, else 0."""
    if F.T.tau == 0:
        raise StemError("needs tau >= 1")
    b1 = F.T.t0 + 1
    comps = {}
    for K in all_subsets(F.T.tau):
        if 1 in K:
            continue
        src = F[(1,) + K]
        if src:
            comps[K] = laurent_normalize(src.shift(b1, -1))
    return F._like(comps)


def dbar_Ttilde(F: StemFunction) -> tuple[StemFunction, StemFunction]:
    """(stem of dbar_{T~} f, G) with dbar_{T~} f = dbar_T f + (1 + t0 - t1) g."""
    G = correction_g(F)
    T = F.T
    return dbar_T(F) + G.scale(1 + T.t0 - T[1]), G


def d_Ttilde(F: StemFunction) -> StemFunction:
    G = correction_g(F)
    T = F.T
    return d_T(F) + G.scale(T[1] - T.t0 - 1)


# --- iterated Laplacians ------------------------------------------------------


def bessel_b(n: int, l: int) -> Fraction:
    """b_{n,l} = (-1)^{n+l} 2^{l-n} (2n-l)! / (l! (n-l)!), with b_{-1,-1} = 1."""
    if l == -1:
        return Fraction(1 if n == -1 else 0)
    if n < 0 or l < 0 or l > n:
        return Fraction(0)
    sign = -1 if (n + l) & 1 else 1
    return sign * Fraction(2) ** (l - n) * Fraction(factorial(2 * n - l), factorial(l) * factorial(n - l))


def f_power(F: StemFunction, n: int) -> StemFunction:
    """Closed form F^{[n]} for a Delta_T-harmonic stem."""
    if n < 0:
        raise StemError("n must be nonnegative")
    if F.T.tau == 0:
        raise StemError("needs tau >= 1")
    if not delta_T(F).is_zero():
        raise NotHarmonicError("f_power needs Delta_T F = 0")
    b1 = F.T.t0 + 1
    comps = {}
    for K, p in F.items():
        acc = LaurentPoly.from_poly(CliffordPoly.zero(p.sig, p.space))
        deriv = p
        for l in range(n + 1):
            c = bessel_b(n, l) if 1 in K else bessel_b(n - 1, l - 1)
            if c and deriv:
                acc = acc + deriv.shift(b1, l - 2 * n).scale(c)
            deriv = deriv.ddx(b1)
        comps[K] = laurent_normalize(acc)
    return F._like(comps)


def power_scale(T: StepList, n: int) -> int:
    """prod_{l=1}^{n} (t1 - t0 - 2l + 1)."""
    out = 1
    for l in range(1, n + 1):
        out *= T[1] - T.t0 - 2 * l + 1
    return out


def iterate_delta_tilde(F: StemFunction, n: int) -> StemFunction:
    for _ in range(n):
        F = delta_Tsigma(F, 1)
    return F
