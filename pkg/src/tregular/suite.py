"""Reproduction suite: golden polynomial identities plus randomized law checks.

Expected values are written in the block notation understood by the parser
(``x¹``, ``‖x¹‖²``), so each golden check reads like the formula it tests.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fnmatch import fnmatch
from typing import Callable

from .algebra import CliffordAlgebra, in_quadratic_cone, scalar_product
from .fueter import EvenGapError, first_transform, negative_control, plan, run_pipeline, sigma_transform
from .hypercomplex import (
    AnticommutationError,
    StepList,
    canonical_torus_point,
    decompose,
    grade_h_basis,
    paravector_basis,
    suffix,
    validate_basis,
    w_h_basis,
)
from .ops import dbar_T_x, delta_T_x, is_T_harmonic, is_T_regular
from .poly import CliffordPoly, VarSpace
from .printing import format_multivector, format_poly, format_stem, format_x_poly, parse_stem_poly, parse_x_poly
from .properties import ALL_CHECKS
from .stem import (
    StemFunction,
    bessel_b,
    dbar_T,
    dbar_Ttilde,
    delta_T,
    delta_Tsigma,
    extract_stem,
    f_power,
    induce_poly,
    tilde,
)
from .tpoly import family, family_Fk, multi_indices


@dataclass(frozen=True)
class CheckRecord:
    id: str
    anchor: str
    expected: str
    computed: str
    ok: bool

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.ok,
        }


@dataclass
class RunReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.records)

    @property
    def failed(self) -> int:
        return len(self.records) - self.passed

    @property
    def exit_status(self) -> int:
        return 0 if self.failed == 0 else 1

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.id}  [{r.anchor}]")
            if not r.ok:
                lines.append(f"      expected: {r.expected}")
                lines.append(f"      computed: {r.computed}")
        lines.append(f"{self.passed} passed, {self.failed} failed, {len(self.records)} checks")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "checks": [r.to_json() for r in self.records],
            "summary": {"passed": self.passed, "failed": self.failed, "total": len(self.records)},
            "exit_status": self.exit_status,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


Check = tuple[str, str, Callable[[random.Random], tuple[str, str, bool]]]


# --- shared contexts ----------------------------------------------------------------


class _Ctx:
    def __init__(self, steps, basis):
        self.T = StepList(steps)
        self.B = basis
        self.fam = family(self.T, basis)

    def parse(self, text: str) -> CliffordPoly:
        return parse_x_poly(text, self.B, self.T)

    def show(self, p: CliffordPoly) -> str:
        return format_x_poly(p, self.T, self.B)

    def compare(self, expected: str | CliffordPoly, computed: CliffordPoly) -> tuple[str, str, bool]:
        e = self.parse(expected) if isinstance(expected, str) else expected
        return self.show(e), self.show(computed), e == computed

    def stem(self, comps: dict) -> StemFunction:
        return StemFunction(self.T, self.B, {K: parse_stem_poly(t, self.B, self.T) for K, t in comps.items()})


_CTX: dict[str, _Ctx] = {}


def ctx(name: str) -> _Ctx:
    if name not in _CTX:
        if name == "036":
            _CTX[name] = _Ctx((0, 3, 6), paravector_basis(6))
        elif name == "147":
            _CTX[name] = _Ctx((1, 4, 7), w_h_basis(6, 6))
        elif name == "H03":
            _CTX[name] = _Ctx((0, 3), w_h_basis(2, 2))
        else:
            raise KeyError(name)
    return _CTX[name]


def _k(kappa) -> str:
    return "(" + ",".join(map(str, kappa)) + ")"


def _scaled(factor: int) -> str:
    return "" if factor == 1 else f"{factor} "


def _bool(ok: bool, expected: str = "true") -> tuple[str, str, bool]:
    return expected, "true" if ok else "false", ok


# --- golden formulas --------------------------------------------------------------

T036_GOLDEN = [
    ((1, 0), 1, "x0 + x¹"),
    ((0, 1), 1, "x0 + x²"),
    ((2, 0), 1, "x0^2 + 2 x0 x¹ - ‖x¹‖²"),
    ((1, 1), 2, "2 (x0 x¹ - x0 x² - x¹ x²)"),
    ((0, 2), 1, "x0^2 + 2 x0 x² - ‖x²‖²"),
    ((3, 0), 1, "x0^3 + 3 x0^2 x¹ - 3 x0 ‖x¹‖² - ‖x¹‖² x¹"),
    ((2, 1), 3, "x0^3 + 3 x0^2 x² - 3 x0 ‖x¹‖² + 6 x0 x¹ x² - 3 ‖x¹‖² x²"),
    ((1, 2), 3, "x0^3 + 3 x0^2 x¹ - 6 x0 x¹ x² - 3 x0 ‖x²‖² - 3 x¹ ‖x²‖²"),
    ((0, 3), 1, "x0^3 + 3 x0^2 x² - 3 x0 ‖x²‖² - ‖x²‖² x²"),
]

# 10 T_(3,2) written through the printed degree-3 expansions
T036_T32 = (
    "(x0^3 + 3 x0^2 x¹ - 6 x0 x¹ x² - 3 x0 ‖x²‖² - 3 x¹ ‖x²‖²) (x0^2 + 2 x0 x¹ - ‖x¹‖²)"
    " + 2 (x0^3 + 3 x0^2 x² - 3 x0 ‖x¹‖² + 6 x0 x¹ x² - 3 ‖x¹‖² x²) (x0 x¹ + x0 x² - x¹ x²)"
    " + (x0^3 + 3 x0^2 x¹ - 3 x0 ‖x¹‖² - ‖x¹‖² x¹) (x0^2 - 2 x0 x² - ‖x²‖²)"
)

T147_GOLDEN = [
    ((1, 0, 0), 1, "x1 - x0 e1"),
    ((0, 1, 0), 1, "x0 + x¹"),
    ((0, 0, 1), 1, "x0 + x²"),
    ((2, 0, 0), 1, "(x1 - x0 e1)^2"),
    ((0, 2, 0), 1, "(x0 + x¹)^2"),
    ((0, 0, 2), 1, "(x0 + x²)^2"),
    ((1, 1, 0), 1, "x0 x1 - x0 e1 x¹ + x1 x¹"),
    ((1, 0, 1), 1, "x0 x1 - x0 e1 x² + x1 x²"),
    ((0, 1, 1), 1, "x0 x¹ - x0 x² - x¹ x²"),
]

# 6 T_(1,2,1) written through the printed degree-2 expansions
T147_T121 = (
    "(x0 x¹ - x0 x² - x¹ x²) (-2 x0 x1 - 2 x0 e1 x¹ + 2 x1 x¹)"
    " + (x0 + x¹)^2 (x0 x1 - x0 e1 x² + x1 x²)"
    " + (x0 x1 - x0 e1 x² + x1 x²) (x0^2 - 2 x0 x¹ - ‖x¹‖²)"
    " + (x0 x1 - x0 e1 x¹ + x1 x¹) (2 x0 x¹ + 2 x0 x² + 2 x¹ x²)"
)

QUATER = "-4 x0^3 - 4 x0^2 x¹ + 8 x0 x¹ x² + 12 x0 ‖x²‖² + 4 x¹ ‖x²‖²"


def _algebra_checks() -> list[Check]:
    def e1e2(rng):
        A = CliffordAlgebra(0, 2)
        r = A.e(1) * A.e(2)
        return "e12", format_multivector(r), r == A.e(1, 2)

    def e1sq(rng):
        A = CliffordAlgebra(0, 2)
        r = A.e(1) * A.e(1)
        return "-1", format_multivector(r), r == -1

    def zero_div(rng):
        A = CliffordAlgebra(0, 3)
        r = (1 + A.e(1, 2, 3)) * (1 - A.e(1, 2, 3))
        return "0", format_multivector(r), r.is_zero()

    def conj_e1(rng):
        A = CliffordAlgebra(0, 3)
        r = A.e(1).conj()
        return "-e1", format_multivector(r), r == -A.e(1)

    def norm_formula(rng):
        sig = CliffordAlgebra(0, 1).sig
        space = VarSpace(("a", "b"), ("x", "x"))
        a = CliffordPoly.var(sig, space, "a")
        b = CliffordPoly.var(sig, space, "b")
        e1 = CliffordPoly.const(CliffordAlgebra(0, 1).e(1), space)
        x = a + b * e1
        n = x * (a - b * e1)
        exp = a * a + b * b
        return format_poly(exp), format_poly(n), n == exp

    def cone(rng):
        A = CliffordAlgebra(0, 3)
        ok = (
            not in_quadratic_cone(1 + A.e(1, 2, 3))
            and in_quadratic_cone(2 + 5 * A.e(1))
            and in_quadratic_cone(A.scalar(-7))
        )
        return _bool(ok)

    def mult_norm_failure(rng):
        A = CliffordAlgebra(0, 3)
        a, b = 1 + A.e(1, 2, 3), 1 - A.e(1, 2, 3)
        lhs = scalar_product(a * b, a * b)
        rhs = scalar_product(a, a) * scalar_product(b, b)
        return "|ab|^2 = 0, |a|^2 |b|^2 = 4", f"|ab|^2 = {lhs}, |a|^2 |b|^2 = {rhs}", lhs == 0 and rhs == 4

    return [
        ("algebra.e1e2", "generator product", e1e2),
        ("algebra.e1-squared", "generator square", e1sq),
        ("algebra.zero-divisor", "paravector zero divisors", zero_div),
        ("algebra.conj-e1", "conjugation of a grade-1 blade", conj_e1),
        ("algebra.norm-formula", "n(a + b e1) = a^2 + b^2", norm_formula),
        ("algebra.quadratic-cone", "cone membership", cone),
        ("algebra.norm-not-multiplicative", "1 + e123 times 1 - e123", mult_norm_failure),
    ]



def _hypercomplex_checks() -> list[Check]:
    def para(rng):
        B = paravector_basis(6)
        return "7", str(len(B)), len(B) == 7

    def w6(rng):
        B = w_h_basis(6, 6)
        return "8", str(len(B)), len(B) == 8

    def bad(rng):
        A = CliffordAlgebra(0, 2)
        try:
            validate_basis([A.scalar(), A.e(1), A.e(1)])
        except AnticommutationError as exc:
            return "(1, 2)", str(exc.pair), exc.pair == (1, 2)
        return "(1, 2)", "valid", False

    def v55(rng):
        B = grade_h_basis(5, 5)
        return "1, e12345", ", ".join(format_multivector(v) for v in B.elements), len(B) == 2

    def quat(rng):
        B = w_h_basis(2, 2)
        return "1, e1, e2, e12", ", ".join(format_multivector(v) for v in B.elements), len(B) == 4

    def blocks(rng):
        got = decompose(tuple(range(7)), StepList((0, 3, 6)))
        return "((0,), (1, 2, 3), (4, 5, 6))", str(got), got == ((0,), (1, 2, 3), (4, 5, 6))

    def suffixes(rng):
        T = StepList((0, 3, 6))
        got = f"{suffix(T, 1)} {suffix(T, 2)}"
        return "(3,6) (6)", got, got == "(3,6) (6)"

    return [
        ("hypercomplex.paravector-6", "paravectors in Cl(0,6)", para),
        ("hypercomplex.w6", "W6 in Cl(0,6)", w6),
        ("hypercomplex.repeated-unit", "anticommutation failure", bad),
        ("hypercomplex.grade-5", "grade-5 basis of Cl(0,5)", v55),
        ("hypercomplex.quaternions", "w_h basis (2,2)", quat),
        ("hypercomplex.decompose", "blocks of T=(0,3,6)", blocks),
        ("hypercomplex.suffix", "suffixes of (0,3,6)", suffixes),
    ]


def _tpoly_checks() -> list[Check]:
    out: list[Check] = []
    for kappa, factor, text in T036_GOLDEN:
        def fn(rng, kappa=kappa, factor=factor, text=text):
            c = ctx("036")
            return c.compare(text, c.fam(kappa).scale(factor))

        label = "".join(map(str, kappa))
        out.append((f"tpoly.036.T{label}", f"T=(0,3,6), {_scaled(factor)}T_{_k(kappa)}", fn))

    def t32(rng):
        c = ctx("036")
        return c.compare(T036_T32, c.fam((3, 2)).scale(10))

    out.append(("tpoly.036.T32", "T=(0,3,6), 10 T_(3,2)", t32))

    def f3(rng):
        c = ctx("036")
        got = [k for k, _ in family_Fk(c.T, c.B, 3)]
        return "[(3, 0), (2, 1), (1, 2), (0, 3)]", str(got), got == [(3, 0), (2, 1), (1, 2), (0, 3)]

    out.append(("tpoly.036.F3", "T=(0,3,6), degree-3 family", f3))

    for kappa, factor, text in T147_GOLDEN:
        def fn(rng, kappa=kappa, factor=factor, text=text):
            c = ctx("147")
            return c.compare(text, c.fam(kappa).scale(factor))

        label = "".join(map(str, kappa))
        out.append((f"tpoly.147.T{label}", f"T=(1,4,7), T_{_k(kappa)}", fn))

    def t121(rng):
        c = ctx("147")
        return c.compare(T147_T121, c.fam((1, 2, 1)).scale(6))

    out.append(("tpoly.147.T121", "T=(1,4,7), 6 T_(1,2,1)", t121))

    def slice_powers(rng):
        B = paravector_basis(5)
        T = StepList((0, 5))
        c = _Ctx((0, 5), B)
        ok = all(p == c.parse(f"(x0 + x¹)^{k}") for k in range(5) for _, p in family_Fk(T, B, k))
        return _bool(ok, "F_k = {x^k}")

    out.append(("tpoly.slice-endpoint", "T=(0,N) gives powers of x", slice_powers))
    return out


def _stem_checks() -> list[Check]:
    ter = {(): "α^3 - 3 α β1^2", (2,): "(3 α^2 - 3 β1^2) β2", (1, 2): "6 α β1 β2"}

    def extract(rng):
        c = ctx("036")
        f = c.fam((2, 1)).scale(3)
        F = extract_stem(f, c.T, c.B, canonical_torus_point(c.B, c.T))
        E = c.stem(ter)
        return format_stem(E), format_stem(F), E == F

    def tilde_check(rng):
        c = ctx("036")
        F = c.stem(ter)
        Ft = tilde(F)
        T1 = suffix(c.T, 1)
        space = VarSpace.stem(T1.t0, T1.tau)
        x1 = "(a1 e1 + a2 e2 + a3 e3)"
        n1 = "(a1^2 + a2^2 + a3^2)"
        exp = StemFunction(
            T1,
            c.B,
            {
                (): parse_stem_poly(f"a0^3 - 3 a0 {n1}", c.B, T1),
                (1,): parse_stem_poly(f"(3 a0^2 - 6 a0 {x1} - 3 {n1}) b1", c.B, T1),
            },
        )
        assert space == exp.space
        return format_stem(exp), format_stem(Ft), exp == Ft

    def kernels(rng):
        c = ctx("036")
        f = c.fam((2, 1)).scale(3)
        F = extract_stem(f, c.T, c.B, canonical_torus_point(c.B, c.T))
        ok = dbar_T(F).is_zero() and delta_T(F).is_zero()
        return _bool(ok, "dbar_T F = 0 and Delta_T F = 0")

    def mixed(rng):
        c = ctx("036")
        F = c.stem(ter)
        return c.compare("-12 x0 - 12 x²", induce_poly(delta_Tsigma(F, 2)))

    def quater(rng):
        c = ctx("036")
        g = c.fam((3, 2))
        F = extract_stem(g, c.T, c.B, canonical_torus_point(c.B, c.T))
        return c.compare(QUATER, induce_poly(delta_Tsigma(F, 1)))

    def g_check(rng):
        c = ctx("036")
        res, G = dbar_Ttilde(c.stem(ter))
        e1, c1, ok1 = c.compare("6 x0 x²", induce_poly(G))
        e2, c2, ok2 = c.compare("-12 x0 x²", induce_poly(res))
        return f"g = {e1}; dbar = {e2}", f"g = {c1}; dbar = {c2}", ok1 and ok2

    def bessel(rng):
        got = [bessel_b(2, l) for l in range(3)] + [bessel_b(1, 0)]
        return "[3, -3, 1, -1]", str([int(v) for v in got]), got == [3, -3, 1, -1]

    def power_zero(rng):
        c = ctx("036")
        F = c.stem(ter)
        return _bool(f_power(F, 0) == F, "F^[0] = F")

    return [
        ("stem.extract-3T21", "stem of 3 T_(2,1) with I=(e1,e4)", extract),
        ("stem.tilde-3T21", "tilde of that stem", tilde_check),
        ("stem.kernels-3T21", "stem-level dbar_T and Delta_T vanish", kernels),
        ("stem.delta-T2-3T21", "Delta over (6) at stem level", mixed),
        ("stem.delta-T1-T32", "Delta over (3,6) of T_(3,2) at stem level", quater),
        ("stem.dbar-tilde-3T21", "dbar over (3,6) split as dbar_T + (1+t0-t1) g", g_check),
        ("stem.bessel-values", "b_(2,l) and b_(1,0)", bessel),
        ("stem.power-zero", "n = 0 closed form", power_zero),
    ]


def _ops_checks() -> list[Check]:
    def bis(rng):
        c = ctx("036")
        f = c.fam((2, 1)).scale(3)
        ok = is_T_regular(f, c.T, c.B) and is_T_harmonic(f, c.T, c.B)
        return _bool(ok, "dbar_T = 0 and Delta_T = 0")

    def dbar_tilde(rng):
        c = ctx("036")
        f = c.fam((2, 1)).scale(3)
        return c.compare("-12 x0 x²", dbar_T_x(f, suffix(c.T, 1), c.B).as_poly())

    def ter(rng):
        c = ctx("036")
        f = c.fam((2, 1)).scale(3)
        T1 = suffix(c.T, 1)
        ok = not is_T_regular(f, T1, c.B) and not is_T_harmonic(f, T1, c.B)
        return _bool(ok, "neither regular nor harmonic over (3,6)")

    def lap(sigma, text, kappa, factor):
        def fn(rng):
            c = ctx("036")
            f = c.fam(kappa).scale(factor)
            return c.compare(text, delta_T_x(f, suffix(c.T, sigma), c.B).as_poly())

        return fn

    def quater2(rng):
        c = ctx("036")
        T1 = suffix(c.T, 1)
        q = delta_T_x(c.fam((3, 2)), T1, c.B).as_poly()
        return c.compare("0", delta_T_x(q, T1, c.B).as_poly())

    def low_degree(rng):
        c = ctx("036")
        ok = all(is_T_regular(c.fam(k), c.T, c.B) for d in range(4) for k in multi_indices(2, d))
        return _bool(ok, "all |kappa| <= 3 regular")

    return [
        ("ops.regular-3T21", "x-level dbar_T and Delta_T of 3 T_(2,1)", bis),
        ("ops.not-regular-tilde", "3 T_(2,1) over (3,6)", ter),
        ("ops.dbar-T1-3T21", "dbar over (3,6) of 3 T_(2,1)", dbar_tilde),
        ("ops.delta-T1-3T21", "Delta over (3,6) of 3 T_(2,1)", lap(1, "-12 x0 - 12 x²", (2, 1), 3)),
        ("ops.delta-T2-3T21", "Delta over (6) of 3 T_(2,1)", lap(2, "-12 x0 - 12 x²", (2, 1), 3)),
        ("ops.delta-T1-T32", "Delta over (3,6) of T_(3,2)", lap(1, QUATER, (3, 2), 1)),
        ("ops.delta-squared-T32", "second Delta over (3,6) of T_(3,2)", quater2),
        ("ops.low-degree-regular", "T_kappa, |kappa| <= 3, over (0,3,6)", low_degree),
    ]


def _fueter_checks() -> list[Check]:
    def quinquies(rng):
        c = ctx("036")
        f = c.fam((2, 1)).scale(3)
        return c.compare("-12 x0 - 12 x²", first_transform(f, c.T, c.B))

    def b147(rng):
        c = ctx("147")
        return c.compare("-4 x0 x1 + 4 x0 e1 x² - 4 x1 x²", first_transform(c.fam((1, 2, 1)), c.T, c.B))

    def sexties(rng):
        c = ctx("036")
        r = sigma_transform(c.fam((3, 2)), c.T, c.B, 2)
        e, got, ok = c.compare("48 x0 + 16 x¹", r)
        return e, got, ok and is_T_regular(r, StepList((6,)), c.B)

    def neg036(rng):
        c = ctx("036")
        nc = negative_control(c.fam((2, 1)).scale(3), c.T, c.B)
        return c.compare("24", nc.residue)

    def neg147(rng):
        c = ctx("147")
        nc = negative_control(c.fam((1, 2, 1)), c.T, c.B)
        return c.compare("8 x0 e1 + 8 x1", nc.residue)

    def neg_same_delta(rng):
        c = ctx("147")
        f = c.fam((1, 2, 1))
        a = delta_T_x(f, suffix(c.T, 1), c.B).as_poly()
        b = delta_T_x(f, suffix(c.T, 2), c.B).as_poly()
        return c.show(a), c.show(b), a == b

    def plans(rng):
        p = plan(StepList((0, 3, 6)), 2)
        try:
            plan(StepList((0, 2, 5)), 1)
            even = False
        except EvenGapError:
            even = True
        got = f"n = {p.n}; even gap {'rejected' if even else 'accepted'}"
        return "n = (1, 1); even gap rejected", got, p.n == (1, 1) and even

    def classical(rng):
        c = ctx("H03")
        f = c.fam((2,))
        lap = delta_T_x(f, StepList((3,)), c.B).as_poly()
        return _bool(is_T_regular(lap, StepList((3,)), c.B), "Delta x^2 Fueter-regular over H")

    return [
        ("fueter.first-3T21", "first transform of 3 T_(2,1)", quinquies),
        ("fueter.first-T121", "first transform of T_(1,2,1) over (1,4,7)", b147),
        ("fueter.second-T32", "second transform of T_(3,2)", sexties),
        ("fueter.negative-3T21", "dbar_(6) Delta_(6) of 3 T_(2,1)", neg036),
        ("fueter.negative-T121", "dbar_(7) Delta_(7) of T_(1,2,1)", neg147),
        ("fueter.same-laplacian-T121", "Delta over (4,7) and over (7) agree on T_(1,2,1)", neg_same_delta),
        ("fueter.plan", "gap bookkeeping", plans),
        ("fueter.classical-quaternions", "T=(0,3) over the quaternions", classical),
    ]


def family_check(name: str, kmax: int) -> Callable[[random.Random], tuple[str, str, bool]]:
    """Strong regularity and every pipeline stage for all |kappa| <= kmax."""

    def fn(rng):
        c = ctx(name)
        total = bad = 0
        for k in range(kmax + 1):
            for kappa in multi_indices(c.fam.arity, k):
                total += 1
                f = c.fam(kappa)
                try:
                    run = run_pipeline(f, c.T, c.B, c.T.tau)
                    final = run.result
                    ok = all(cert.ok for cert in run.certificates)
                    ok = ok and is_T_regular(final, StepList((c.T.N,)), c.B)
                except ValueError:
                    ok = False
                bad += not ok
        return f"{total} certified", f"{total - bad} certified", bad == 0

    return fn


def _family_checks() -> list[Check]:
    return [
        ("family.036", "every T_kappa, |kappa| <= 4, T=(0,3,6)", family_check("036", 4)),
        ("family.147", "every T_kappa, |kappa| <= 3, T=(1,4,7)", family_check("147", 3)),
    ]


PROPERTY_ANCHORS = {
    "props.clifford-laws": "associativity, distributivity, conjugation laws",
    "props.blade-oracle": "blade products against a bubble-sort oracle",
    "props.stem-closure": "stem operators keep the even/odd rule",
    "props.factorization": "Delta_T = d_T dbar_T = dbar_T d_T on stems",
    "props.slice-compatibility": "x-level operators restricted to slices",
    "props.representation-roundtrip": "extract then induce reproduces f",
    "props.bessel": "b_(n,l) recursions and endpoints",
    "props.stem-vs-x": "stem and x-level operators agree",
    "props.power-closed-form": "iterated mixed Laplacian closed form",
    "props.critical-vanishing": "Delta^(n1+1) over T~ kills T_kappa",
}


def _property_checks() -> list[Check]:
    out: list[Check] = []
    for cid, fn, n in ALL_CHECKS:
        def run(rng, fn=fn, n=n):
            res = fn(rng, n) if n else fn(rng)
            exp = ">= 100 cases, 0 failures"
            got = f"{res.cases} cases, {len(res.failures)} failures"
            if res.failures:
                got += ": " + res.failures[0]
            return exp, got, res.ok and res.cases >= 100

        out.append((cid, PROPERTY_ANCHORS[cid], run))
    return out


def all_checks() -> list[Check]:
    return (
        _algebra_checks()
        + _hypercomplex_checks()
        + _tpoly_checks()
        + _stem_checks()
        + _ops_checks()
        + _fueter_checks()
        + _family_checks()
        + _property_checks()
    )


def matches(check_id: str, pattern: str | None) -> bool:
    if not pattern:
        return True
    return fnmatch(check_id, pattern) or fnmatch(check_id, pattern + ".*")


def run_suite(pattern: str | None = None, seed: int = 0) -> RunReport:
    report = RunReport()
    for cid, anchor, fn in all_checks():
        if not matches(cid, pattern):
            continue
        rng = random.Random(f"{seed}:{cid}")
        try:
            expected, computed, ok = fn(rng)
        except Exception as exc:  # a crashing check is a failing check
            expected, computed, ok = "no error", f"{type(exc).__name__}: {exc}", False
        report.records.append(CheckRecord(cid, anchor, expected, computed, bool(ok)))
    return report


if __name__ == "__main__":  # pragma: no cover
    t = time.time()
    r = run_suite()
    print(r.to_text())
    print(f"{time.time() - t:.1f}s")
