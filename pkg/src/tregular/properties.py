"""Randomized law checks shared by the test-suite and the ``paper-suite`` command.

Each ``check_*`` function takes a ``random.Random`` and a case count and
returns a ``PropertyResult``.  All arithmetic is exact, so a single
counterexample is a genuine failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .algebra import Multivector, Signature, blade_product
from .hypercomplex import (
    HypercomplexBasis,
    StepList,
    canonical_torus_point,
    paravector_basis,
    suffix,
    torus_point,
    w_h_basis,
)
from .ops import dbar_J, dbar_T_x_form, delta_T_x, restrict
from .poly import CliffordPoly, VarSpace
from .stem import (
    StemFunction,
    all_subsets,
    bessel_b,
    d_T,
    dbar_T,
    dbar_Ttilde,
    delta_T,
    delta_Tsigma,
    extract_stem,
    f_power,
    induce,
    induce_poly,
    iterate_delta_tilde,
    power_scale,
)
from .tpoly import family, multi_indices


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.cases > 0

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.cases += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(detail())


# --- generators -----------------------------------------------------------------


def random_fraction(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def random_multivector(rng: random.Random, sig: Signature, max_terms: int = 4) -> Multivector:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.randrange(sig.dim)] = random_fraction(rng)
    return Multivector(sig, terms)


def random_stem(
    rng: random.Random,
    T: StepList,
    basis: HypercomplexBasis,
    max_alpha: int = 2,
    max_half: int = 1,
    max_terms: int = 3,
    coeff_terms: int = 2,
) -> StemFunction:
    """Random polynomial stem; each component gets parity-correct monomials."""
    space = VarSpace.stem(T.t0, T.tau)
    subsets = all_subsets(T.tau)
    chosen = rng.sample(subsets, rng.randint(1, len(subsets)))
    comps = {}
    for K in chosen:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            alpha = [rng.randint(0, max_alpha) for _ in range(T.t0 + 1)]
            betas = [2 * rng.randint(0, max_half) + (1 if h in K else 0) for h in range(1, T.tau + 1)]
            exps = tuple(alpha + betas)
            terms[exps] = random_multivector(rng, basis.sig, coeff_terms)
        comps[K] = CliffordPoly.from_terms(basis.sig, space, terms)
    return StemFunction(T, basis, comps)


def rational_point(rng: random.Random, n: int) -> list[Fraction]:
    return [random_fraction(rng) for _ in range(n)]


# small configurations used by the stem suites: (steps, basis)
def stem_configs() -> list[tuple[StepList, HypercomplexBasis]]:
    return [
        (StepList((0, 3, 6)), paravector_basis(6)),
        (StepList((1, 4, 7)), w_h_basis(6, 6)),
        (StepList((0, 2, 4)), paravector_basis(4)),
        (StepList((1, 3, 4)), paravector_basis(4)),
        (StepList((2, 3, 5)), paravector_basis(5)),
        (StepList((0, 1, 2, 4)), paravector_basis(4)),
        (StepList((0, 3)), w_h_basis(2, 2)),
        (StepList((0, 5)), paravector_basis(5)),
    ]


def _pick(rng: random.Random):
    return rng.choice(stem_configs())


# --- algebra --------------------------------------------------------------------


def brute_blade_product(p: int, a: int, b: int) -> tuple[int, int]:
    """Bubble-sort the generator word of e_A e_B, contracting equal neighbours."""
    word = [i for i in range(1, 64) if a >> (i - 1) & 1] + [i for i in range(1, 64) if b >> (i - 1) & 1]
    sign = 1
    changed = True
    while changed:
        changed = False
        for j in range(len(word) - 1):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
                changed = True
                break
            if word[j] == word[j + 1]:
                sign *= 1 if word[j] <= p else -1
                del word[j : j + 2]
                changed = True
                break
    mask = 0
    for i in word:
        mask |= 1 << (i - 1)
    return sign, mask


def check_blade_oracle(rng: random.Random, cases: int = 0) -> PropertyResult:
    res = PropertyResult("blade product vs bubble-sort oracle, all pairs, m <= 5")
    for m in range(0, 6):
        for p in range(0, m + 1):
            for a, b in product(range(1 << m), repeat=2):
                ok = blade_product(p, a, b) == brute_blade_product(p, a, b)
                res.record(ok, lambda: f"Cl({p},{m - p}) blades {a},{b}")
    return res


def check_clifford_laws(rng: random.Random, cases: int = 100) -> PropertyResult:
    res = PropertyResult("associativity and *-involution laws, m <= 6")
    for _ in range(cases):
        m = rng.randint(1, 6)
        p = rng.choice((0, 0, rng.randint(0, m)))
        sig = Signature(p, m - p)
        a, b, c = (random_multivector(rng, sig, 5) for _ in range(3))
        assoc = (a * b) * c == a * (b * c)
        invol = a.conj().conj() == a
        anti = (a * b).conj() == b.conj() * a.conj()
        res.record(assoc and invol and anti, lambda: f"{sig}: {a!r}, {b!r}, {c!r}")
    return res


# --- stems ----------------------------------------------------------------------


def check_stem_closure(rng: random.Random, cases: int = 100) -> PropertyResult:
    """Outputs of the stem operators satisfy the even/odd rule."""
    res = PropertyResult("stem parity closure of dbar_T, d_T, delta_T, delta_Tsigma, dbar_Ttilde, f_power")
    for _ in range(cases):
        T, basis = _pick(rng)
        F = random_stem(rng, T, basis)
        try:
            outs = [dbar_T(F), d_T(F), delta_T(F)]
            if T.tau:
                outs.append(delta_Tsigma(F, rng.randint(1, T.tau)))
                outs.extend(dbar_Ttilde(F))
                H = _harmonic_stem(rng, T, basis)
                outs.append(f_power(H, rng.randint(0, 3)))
            ok = all(isinstance(o, StemFunction) for o in outs)
            for o in outs:
                o._check_parity()
        except ValueError as exc:
            ok = False
            err = str(exc)
            res.record(ok, lambda: f"{T}: {err}")
            continue
        res.record(ok, lambda: f"{T}: {F!r}")
    return res


def check_factorization(rng: random.Random, cases: int = 100) -> PropertyResult:
    res = PropertyResult("delta_T = d_T dbar_T = dbar_T d_T on stems")
    configs = [(T, b) for T, b in stem_configs() if T.tau <= 3 and T.t0 <= 2]
    for _ in range(cases):
        T, basis = rng.choice(configs)
        F = random_stem(rng, T, basis)
        lap = delta_T(F)
        ok = lap == d_T(dbar_T(F)) and lap == dbar_T(d_T(F))
        res.record(ok, lambda: f"{T}: {F!r}")
    return res


def check_slice_compatibility(rng: random.Random, cases: int = 100, points: int = 3) -> PropertyResult:
    """(dbar_T f)_J = dbar_J f_J, with both sides built independently."""
    res = PropertyResult("slice compatibility (dbar_T f)_J = dbar_J f_J at rational torus points")
    for _ in range(cases):
        T, basis = _pick(rng)
        if T.tau == 0:
            continue
        F = random_stem(rng, T, basis, max_alpha=1)
        f = induce_poly(F)
        form = dbar_T_x_form(f, T, basis)
        stem_side = induce_poly(dbar_T(F))
        ok = True
        for _j in range(points):
            J = torus_point(basis, T, rng.randrange(1 << 30))
            lhs = restrict(form.numerator, T, basis, J).poly
            rhs = dbar_J(restrict(f, T, basis, J)).poly
            for u, e in enumerate(form.denom, start=1):
                for _ in range(e):
                    b = CliffordPoly.var(basis.sig, rhs.space, T.t0 + u)
                    rhs = rhs * b * b
            via_stem = restrict(stem_side, T, basis, J).poly
            ok = ok and lhs == rhs and via_stem == dbar_J(restrict(f, T, basis, J)).poly
        res.record(ok, lambda: f"{T}: {F!r}")
    return res


def check_representation_roundtrip(rng: random.Random, cases: int = 102, points: int = 50) -> PropertyResult:
    """extract_stem then induce reproduces f; one case is a (stem, I) pair."""
    res = PropertyResult("representation formula roundtrip at 50 rational points")
    stems = max(1, cases // 3)
    for _ in range(stems):
        T, basis = _pick(rng)
        F = random_stem(rng, T, basis, max_alpha=1)
        f = induce_poly(F)
        for _i in range(3):
            I = torus_point(basis, T, rng.randrange(1 << 30))
            G = extract_stem(f, T, basis, I)
            ok = True
            for _p in range(points):
                J = torus_point(basis, T, rng.randrange(1 << 30))
                pt = rational_point(rng, T.t0 + 1 + T.tau)
                x = _x_coords(T, basis, J, pt)
                if induce(G, J, pt) != f.eval(x):
                    ok = False
                    break
            res.record(ok, lambda: f"{T}: {F!r} with I={I.units!r}")
    return res


def _x_coords(T: StepList, basis: HypercomplexBasis, J, pt) -> list[Fraction]:
    coords = list(pt[: T.t0 + 1]) + [Fraction(0)] * (T.N - T.t0)
    for u in range(1, T.tau + 1):
        cs = basis.coords(J[u])
        for s in T.block(u):
            coords[s] = cs[s] * pt[T.t0 + u]
    return coords


def check_bessel(rng: random.Random, cases: int = 0, n_max: int = 8) -> PropertyResult:
    res = PropertyResult("Bessel coefficient recurrences, n <= 8")
    b = bessel_b
    for n in range(0, n_max + 1):
        for l in range(0, n + 2):
            r1 = b(n + 1, l) == (l - 2 * n - 1) * b(n, l) + b(n, l - 1)
            r2 = b(n - 1, l - 1) == b(n, l) + (l + 1) * b(n, l + 1)
            r3 = l * (l - 2 * n - 1) * b(n, l) + 2 * (l - n - 1) * b(n, l - 1) == 0
            res.record(r1, lambda: f"b(n+1,l) recurrence fails at n={n}, l={l}")
            res.record(r2, lambda: f"b(n-1,l-1) recurrence fails at n={n}, l={l}")
            res.record(r3, lambda: f"three-term identity fails at n={n}, l={l}")
        res.record(b(n, n) == 1, lambda: f"b({n},{n}) != 1")
    return res


def check_stem_vs_x(rng: random.Random, cases: int = 100) -> PropertyResult:
    res = PropertyResult("stem-level delta_Tsigma equals x-level Delta over T_sigma")
    for _ in range(cases):
        T, basis = _pick(rng)
        if T.tau == 0:
            continue
        F = random_stem(rng, T, basis, max_alpha=1)
        sigma = rng.randint(1, T.tau)
        f = induce_poly(F)
        form = delta_T_x(f, suffix(T, sigma), basis)
        ok = form.is_polynomial() and form.numerator == induce_poly(delta_Tsigma(F, sigma))
        res.record(ok, lambda: f"{T}, sigma={sigma}: {F!r}")
    return res


def _harmonic_stem(rng: random.Random, T: StepList, basis: HypercomplexBasis) -> StemFunction:
    """Right-linear combination of stems of T_kappa, which are Delta_T-harmonic."""
    fam = family(T, basis)
    space = VarSpace.x(T.N)
    f = CliffordPoly.zero(basis.sig, space)
    for _ in range(rng.randint(1, 3)):
        k = rng.randint(0, 3)
        kappa = rng.choice(multi_indices(fam.arity, k))
        f = f + fam(kappa).rmul(random_multivector(rng, basis.sig, 2))
    return extract_stem(f, T, basis, canonical_torus_point(basis, T))


def check_power_closed_form(rng: random.Random, cases: int = 100) -> PropertyResult:
    res = PropertyResult("closed form f^[n] vs iterated Laplacian, n <= 3")
    configs = [(T, b) for T, b in stem_configs() if T.tau >= 1]
    for _ in range(cases):
        T, basis = rng.choice(configs)
        H = _harmonic_stem(rng, T, basis)
        n = rng.randint(0, 3)
        lhs = f_power(H, n).scale(power_scale(T, n))
        ok = lhs == iterate_delta_tilde(H, n)
        res.record(ok, lambda: f"{T}, n={n}: {H!r}")
    return res


def vanishing_families() -> list[tuple[StepList, HypercomplexBasis, int]]:
    """(steps, basis, max degree) for the critical-power vanishing suite."""
    return [
        (StepList((0, 3, 6)), paravector_basis(6), 4),
        (StepList((1, 4, 7)), w_h_basis(6, 6), 3),
        (StepList((0, 3)), w_h_basis(2, 2), 5),
        (StepList((1, 4)), paravector_basis(4), 5),
        (StepList((0, 5)), paravector_basis(5), 5),
        (StepList((0, 1, 4)), paravector_basis(4), 4),
        (StepList((2, 5)), paravector_basis(5), 3),
    ]


def check_critical_vanishing(rng: random.Random, cases: int = 0) -> PropertyResult:
    """Delta_{T~}^{n1+1} f = 0 for the strongly T-regular T_kappa."""
    from .ops import laplacian_power

    res = PropertyResult("Delta_{T~}^(n1+1) f = 0 on strongly T-regular suite polynomials")
    for T, basis, kmax in vanishing_families():
        gap = T[1] - T[0]
        if gap % 2 == 0:
            continue
        n1 = (gap - 1) // 2
        fam = family(T, basis)
        T1 = suffix(T, 1)
        for k in range(kmax + 1):
            for kappa in multi_indices(fam.arity, k):
                f = fam(kappa)
                ok = laplacian_power(f, T1, basis, n1 + 1).is_zero()
                res.record(ok, lambda: f"{T}, kappa={kappa}")
    return res


ALL_CHECKS: list[tuple[str, Callable[..., PropertyResult], int]] = [
    ("props.clifford-laws", check_clifford_laws, 100),
    ("props.blade-oracle", check_blade_oracle, 0),
    ("props.stem-closure", check_stem_closure, 100),
    ("props.factorization", check_factorization, 100),
    ("props.slice-compatibility", check_slice_compatibility, 100),
    ("props.representation-roundtrip", check_representation_roundtrip, 102),
    ("props.bessel", check_bessel, 0),
    ("props.stem-vs-x", check_stem_vs_x, 100),
    ("props.power-closed-form", check_power_closed_form, 100),
    ("props.critical-vanishing", check_critical_vanishing, 0),
]
