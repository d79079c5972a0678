"""Command-line entry point: ``tregular <command> [options]``.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .fueter import CertificationError, FueterError, negative_control, run_pipeline
from .hypercomplex import (
    BasisError,
    HypercomplexBasis,
    StepList,
    StepListError,
    basis_from_name,
    canonical_torus_point,
    make_torus_point,
    torus_point,
)
from .ops import RationalForm, dbar_T_x, delta_T_x
from .poly import CliffordPoly, PolyError
from .printing import ParseError, format_stem, format_x_poly, parse_multivector, parse_x_poly
from .stem import (
    StemError,
    StemFunction,
    d_T,
    d_Ttilde,
    dbar_T,
    dbar_Ttilde,
    delta_T,
    delta_Tsigma,
    extract_stem,
    f_power,
    induce_poly,
    tilde,
)
from .suite import run_suite
from .tpoly import family, family_Fk

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- argument plumbing ---------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="emit JSON instead of text")
    p.add_argument("--seed", type=int, default=default if suppress else 0,
                   help="seed for randomized property suites (default 0)")
    p.add_argument("--filter", dest="filter", default=default, metavar="GLOB",
                   help="only run checks whose id matches GLOB")
    return p


def _context_flags(p: argparse.ArgumentParser, steps_required: bool = True) -> None:
    p.add_argument("--steps", required=steps_required, help="step list, e.g. 0,3,6")
    p.add_argument("--basis", help="paravector:m, vh:m,h or wh:m,h (default paravector:N)")


def _source_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="polynomial text, e.g. 'x0 + x¹' or 'x0^2 - N1'")
    g.add_argument("--poly-json", type=Path, help="file holding a polynomial in JSON form")
    g.add_argument("--kappa", help="generate T_kappa, e.g. 2,1")
    p.add_argument("--source-steps", help="step list used to generate T_kappa (default --steps)")
    p.add_argument("--scale", default="1", help="rational factor applied to the input")


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(
        prog="tregular",
        description="Exact T-regular polynomial calculus over Clifford algebras.",
        parents=[_global_flags(suppress=False)],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("tpoly", parents=[common], help="generate T_kappa or the degree-k family")
    _context_flags(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--kappa", help="multi-index, e.g. 2,1")
    g.add_argument("--degree", type=int, help="list every T_kappa with |kappa| = k")
    p.add_argument("--scale", default="1", help="rational factor applied to the output")
    p.add_argument("--expanded", action="store_true", help="print every monomial")

    p = sub.add_parser("verify", parents=[common], help="check a property of a polynomial")
    p.add_argument("property", choices=("regular", "harmonic", "tfunction"))
    _context_flags(p)
    _source_flags(p)

    p = sub.add_parser("stem", parents=[common], help="stem-function operations")
    p.add_argument("action", choices=("extract", "induce", "tilde", "op"))
    _context_flags(p, steps_required=False)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--poly", help="polynomial text in x-variables")
    g.add_argument("--poly-json", type=Path)
    g.add_argument("--kappa")
    g.add_argument("--stem-json", type=Path, help="file holding a stem function in JSON form")
    p.add_argument("--source-steps")
    p.add_argument("--scale", default="1")
    p.add_argument("--units", help="torus point as ';'-separated units, e.g. 'e1;e4'")
    p.add_argument("--torus-seed", type=int, help="use a random rational torus point")
    p.add_argument(
        "--op",
        choices=("dbar", "d", "delta", "delta-sigma", "dbar-tilde", "d-tilde", "power"),
        help="operator for 'stem op'",
    )
    p.add_argument("--sigma", type=int, default=1)
    p.add_argument("--n", type=int, default=1, help="exponent for --op power")

    p = sub.add_parser("fueter", parents=[common], help="run the staged Fueter transform")
    _context_flags(p)
    _source_flags(p)
    p.add_argument("--sigma", type=int, default=1)
    p.add_argument("--certify", action="store_true", help="print every stage certificate")
    p.add_argument("--negative-control", action="store_true",
                   help="also apply the full Laplacian and report the residue")

    sub.add_parser("paper-suite", parents=[common], help="run every golden and property check")
    return parser


# --- input resolution ----------------------------------------------------------


def _steps(text: str | None, what: str = "--steps") -> StepList:
    if not text:
        raise UsageError(f"{what} is required")
    return StepList.parse(text)


def _basis(args, T: StepList) -> HypercomplexBasis:
    basis = basis_from_name(args.basis) if args.basis else basis_from_name(f"paravector:{T.N}")
    if basis.N != T.N:
        raise UsageError(f"basis {basis.name} has N={basis.N}, steps {T} need N={T.N}")
    return basis


def _kappa(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"bad multi-index {text!r}") from None


def _scale(text: str):
    from fractions import Fraction

    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad scale {text!r}") from None


def _source(args, T: StepList, basis: HypercomplexBasis) -> CliffordPoly:
    if getattr(args, "kappa", None):
        src = _steps(args.source_steps, "--source-steps") if args.source_steps else T
        if src.N != basis.N:
            raise UsageError(f"source steps {src} do not match the basis")
        f = family(src, basis)(_kappa(args.kappa))
    elif getattr(args, "poly", None):
        f = parse_x_poly(args.poly, basis, T if T.tau else None)
    elif getattr(args, "poly_json", None):
        f = CliffordPoly.from_json(json.loads(args.poly_json.read_text()), basis.sig)
    else:
        raise UsageError("give --poly, --poly-json or --kappa")
    return f.scale(_scale(args.scale))


def _torus(args, T: StepList, basis: HypercomplexBasis):
    if args.units:
        units = [parse_multivector(u, basis.sig) for u in args.units.split(";")]
        return make_torus_point(basis, T, units)
    if args.torus_seed is not None:
        return torus_point(basis, T, args.torus_seed)
    return canonical_torus_point(basis, T)


# --- output helpers ------------------------------------------------------------


def _emit(args, text: str, data: dict) -> None:
    if args.json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


def _poly_json(p: CliffordPoly, T: StepList, basis: HypercomplexBasis) -> dict:
    return {"text": format_x_poly(p, T, basis), "poly": p.to_json()}


def _form_text(form: RationalForm, shown: StepList) -> str:
    num = format_x_poly(form.numerator, shown, form.basis)
    # denominators refer to the blocks of the tested step list
    den = [
        f"‖x_({','.join(map(str, form.T.block(u)))})‖²" + (f"^{e}" if e > 1 else "")
        for u, e in enumerate(form.denom, 1)
        if e
    ]
    if not den:
        return num
    return f"({num}) / ({' '.join(den)})"


# --- commands ------------------------------------------------------------------


def cmd_tpoly(args) -> int:
    T = _steps(args.steps)
    basis = _basis(args, T)
    c = _scale(args.scale)
    if args.kappa is not None:
        entries = [(_kappa(args.kappa), family(T, basis)(_kappa(args.kappa)))]
    else:
        if args.degree < 0:
            raise UsageError("--degree must be nonnegative")
        entries = family_Fk(T, basis, args.degree)
    rows, data = [], []
    for kappa, p in entries:
        p = p.scale(c)
        text = format_x_poly(p, T, basis, expanded=args.expanded)
        label = ",".join(map(str, kappa))
        prefix = "" if c == 1 else f"{c} "
        rows.append(f"{prefix}T_({label}) = {text}")
        data.append({"kappa": list(kappa), **_poly_json(p, T, basis)})
    _emit(args, "\n".join(rows), {"steps": list(T.steps), "basis": basis.name, "scale": str(c), "family": data})
    return EXIT_OK


def cmd_verify(args) -> int:
    T = _steps(args.steps)
    basis = _basis(args, T)
    f = _source(args, T, basis)
    # residues read best in the notation of the step list that produced f
    shown = _steps(args.source_steps) if args.source_steps else T
    if args.property == "tfunction":
        F = extract_stem(f, T, basis, canonical_torus_point(basis, T))
        residue = f - induce_poly(F)
        ok = residue.is_zero()
        residue_text = format_x_poly(residue, shown, basis)
        residue_json = residue.to_json()
    else:
        op = dbar_T_x if args.property == "regular" else delta_T_x
        form = op(f, T, basis)
        ok = form.is_zero()
        residue_text = _form_text(form, shown)
        residue_json = {"numerator": form.numerator.to_json(), "denominator": list(form.denom)}
    lines = [f"{'PASS' if ok else 'FAIL'} {args.property} over {T}"]
    data = {"property": args.property, "steps": list(T.steps), "basis": basis.name, "pass": ok}
    if not ok:
        lines.append(f"residue: {residue_text}")
        data["residue"] = {"text": residue_text, **residue_json}
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if ok else EXIT_FAIL


def _stem_input(args) -> tuple[StemFunction, HypercomplexBasis]:
    if args.stem_json:
        data = json.loads(args.stem_json.read_text())
        T = StepList(tuple(data["steps"]))
        basis = _basis(args, T)
        return StemFunction.from_json(data, basis), basis
    T = _steps(args.steps)
    basis = _basis(args, T)
    f = _source(args, T, basis)
    return extract_stem(f, T, basis, _torus(args, T, basis)), basis


def _stem_payload(F: StemFunction) -> tuple[str, str, dict]:
    induced = induce_poly(F)
    itext = format_x_poly(induced, F.T, F.basis)
    return format_stem(F), itext, {"stem": F.to_json(), "text": format_stem(F), "induced": _poly_json(induced, F.T, F.basis)}


STEM_OPS = {
    "dbar": lambda F, a: dbar_T(F),
    "d": lambda F, a: d_T(F),
    "delta": lambda F, a: delta_T(F),
    "delta-sigma": lambda F, a: delta_Tsigma(F, a.sigma),
    "d-tilde": lambda F, a: d_Ttilde(F),
    "power": lambda F, a: f_power(F, a.n),
}


def cmd_stem(args) -> int:
    F, basis = _stem_input(args)
    g = None
    if args.action in ("extract", "induce"):
        out = F
    elif args.action == "tilde":
        out = tilde(F)
    elif not args.op:
        raise UsageError("stem op needs --op")
    elif args.op == "dbar-tilde":
        out, g = dbar_Ttilde(F)
    else:
        out = STEM_OPS[args.op](F, args)
    stext, itext, data = _stem_payload(out)
    if args.action == "induce":
        text = itext
    else:
        text = f"stem over {out.T}: {stext}\ninduced: {itext}"
    if g is not None:
        _, gtext, gdata = _stem_payload(g)
        text += f"\ncorrection g: {gtext}"
        data["g"] = gdata
    _emit(args, text, data)
    return EXIT_OK


def cmd_fueter(args) -> int:
    T = _steps(args.steps)
    basis = _basis(args, T)
    f = _source(args, T, basis)
    lines, data = [], {"steps": list(T.steps), "basis": basis.name, "sigma": args.sigma}
    status = EXIT_OK
    try:
        run = run_pipeline(f, T, basis, args.sigma)
        result = run.result
        lines.append(format_x_poly(result, T, basis))
        data["result"] = _poly_json(result, T, basis)
        certs = run.certificates
        data["n"] = list(run.plan.n)
    except CertificationError as exc:
        lines.append(f"FAIL {exc}")
        data["error"] = str(exc)
        certs = []
        status = EXIT_FAIL
    if args.certify:
        for c in certs:
            lines.append(
                f"stage {c.stage}: {c.laplacians} Laplacian(s) over {c.steps}; "
                f"regular={'yes' if c.regular else 'no'} T-function={'yes' if c.t_function else 'no'}"
            )
    data["certificates"] = [
        {"stage": c.stage, "steps": list(c.steps.steps), "laplacians": c.laplacians,
         "regular": c.regular, "t_function": c.t_function}
        for c in certs
    ]
    if args.negative_control:
        nc = negative_control(f, T, basis)
        lines.append(f"negative control over {nc.steps}: dbar after {nc.laplacians} Laplacian(s) = "
                     f"{format_x_poly(nc.residue, T, basis)}")
        data["negative_control"] = {"laplacians": nc.laplacians, **_poly_json(nc.residue, T, basis)}
    _emit(args, "\n".join(lines), data)
    return status


def cmd_paper_suite(args) -> int:
    report = run_suite(args.filter, args.seed)
    if args.json:
        print(report.dumps())
    else:
        print(report.to_text())
    return report.exit_status


COMMANDS = {
    "tpoly": cmd_tpoly,
    "verify": cmd_verify,
    "stem": cmd_stem,
    "fueter": cmd_fueter,
    "paper-suite": cmd_paper_suite,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ParseError, BasisError, StepListError, PolyError, StemError,
            FueterError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
