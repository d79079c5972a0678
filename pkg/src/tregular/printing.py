"""Text forms of multivectors, polynomials and stems, and a parser for them.

Two polynomial layouts exist.  The expanded one lists every monomial:
``3 x0^2 x4 e4``.  The grouped one writes T-functions with block symbols,
as in ``x0^3 + 3 x0^2 x² - 3 x0 ‖x¹‖² + 6 x0 x¹ x²``; it is only emitted
when it parses back to the same polynomial.  The parser accepts both, plus
the ASCII spellings ``X1`` for x¹ and ``N1`` for ‖x¹‖².
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import TYPE_CHECKING

from .algebra import Multivector, Signature, blade_product, indices_of, mask_of
from .poly import CliffordPoly, VarSpace, order_key

if TYPE_CHECKING:
    from .hypercomplex import HypercomplexBasis, StepList
    from .stem import StemFunction

SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
UNSUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


class ParseError(ValueError):
    pass


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def blade_name(mask: int, m: int) -> str:
    idx = indices_of(mask)
    if m <= 9:
        return "e" + "".join(map(str, idx))
    return "e{" + ",".join(map(str, idx)) + "}"


def _join_terms(terms: list[tuple[Fraction, str]]) -> str:
    """Join (coefficient, factor-string) pairs into ``a + b - c``."""
    if not terms:
        return "0"
    parts = []
    for i, (c, body) in enumerate(terms):
        neg = c < 0
        mag = -c if neg else c
        if body:
            txt = body if mag == 1 else f"{_frac(mag)} {body}"
        else:
            txt = _frac(mag)
        if i == 0:
            parts.append(("-" if neg else "") + txt)
        else:
            parts.append(("- " if neg else "+ ") + txt)
    return " ".join(parts)


def format_multivector(x: Multivector) -> str:
    m = x.sig.m
    return _join_terms([(c, blade_name(k, m) if k else "") for k, c in x.items()])


def _mono(exps, names) -> list[str]:
    out = []
    for n, e in zip(names, exps):
        if e == 1:
            out.append(n)
        elif e:
            out.append(f"{n}^{e}")
    return out


def format_poly(p: CliffordPoly) -> str:
    """Fully expanded canonical text, terms in descending monomial order."""
    m = p.sig.m
    terms = []
    for exps, mv in p.sorted_terms():
        mono = _mono(exps, p.space.names)
        for k, c in mv.items():
            body = mono + ([blade_name(k, m)] if k else [])
            terms.append((c, " ".join(body)))
    return _join_terms(terms)


def block_symbol(u: int) -> str:
    return "x" + str(u).translate(SUP)


def norm_symbol(u: int) -> str:
    return "‖" + block_symbol(u) + "‖²"


def _grouped_text(p: CliffordPoly, T: "StepList", basis: "HypercomplexBasis") -> str | None:
    from .hypercomplex import canonical_torus_point
    from .stem import extract_stem

    if T.tau == 0:
        return None
    F = extract_stem(p, T, basis, canonical_torus_point(basis, T))
    t0, sig = T.t0, basis.sig
    mirror_names = [f"x{s}" for s in range(t0 + 1)]
    rows = []
    for K, comp in F.items():
        for exps, mv in comp.terms.items():
            alpha = exps[: t0 + 1]
            halves = []
            for h in range(1, T.tau + 1):
                e = exps[t0 + h]
                halves.append((e - 1) // 2 if h in K else e // 2)
            scalar = _mono(alpha, mirror_names)
            for h, n in enumerate(halves, start=1):
                if n == 1:
                    scalar.append(norm_symbol(h))
                elif n:
                    scalar.append(f"{norm_symbol(h)}^{n}")
            blocks = [block_symbol(k) for k in K]
            for mask, c in mv.items():
                sign = _uniform_sign(mask, K, T, basis)
                if mask == 0:
                    body = scalar + blocks
                elif sign is not None:
                    c = c * sign
                    body = scalar + [blade_name(mask, sig.m)] + blocks
                else:
                    body = scalar + blocks + [blade_name(mask, sig.m)]
                degree = sum(alpha) + sum(2 * n for n in halves) + len(K)
                key = (-degree, len(K), K, tuple(-a for a in alpha), tuple(-n for n in halves), mask)
                rows.append((key, c, " ".join(body)))
    rows.sort(key=lambda r: r[0])
    return _join_terms([(c, body) for _, c, body in rows])


def _uniform_sign(mask: int, K, T: "StepList", basis: "HypercomplexBasis") -> int | None:
    """sign with x^K e_A = sign e_A x^K, if it does not depend on the point."""
    if mask == 0:
        return 1
    p = basis.sig.p
    total = 1
    for u in K:
        signs = set()
        for s in T.block(u):
            if len(basis[s].terms) != 1:
                return None
            (vb, _), = basis[s].items()
            s1, _ = blade_product(p, vb, mask)
            s2, _ = blade_product(p, mask, vb)
            signs.add(s1 * s2)
        if len(signs) != 1:
            return None
        total *= signs.pop()
    return total


def format_x_poly(
    p: CliffordPoly,
    T: "StepList | None" = None,
    basis: "HypercomplexBasis | None" = None,
    expanded: bool = False,
) -> str:
    """Grouped text when it round-trips, expanded text otherwise."""
    if not expanded and T is not None and basis is not None and not p.is_zero():
        try:
            text = _grouped_text(p, T, basis)
        except (ValueError, KeyError):
            text = None
        if text is not None and parse_poly(text, p.sig, p.space, T, basis) == p:
            return text
    return format_poly(p)


def format_stem(F: "StemFunction") -> str:
    parts = []
    for K, p in F.items():
        label = "{" + ",".join(map(str, K)) + "}"
        parts.append(f"E{label}: {format_poly(p)}")
    return "; ".join(parts) if parts else "0"


# --- parser -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<norm>‖x[⁰¹²³⁴⁵⁶⁷⁸⁹]+‖²)
  | (?P<block>x[⁰¹²³⁴⁵⁶⁷⁸⁹]+)
  | (?P<blade>e\{[\d,\s]*\}|e\d*)
  | (?P<name>[A-Za-zαβ][A-Za-z0-9_]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    text = text.replace("−", "-").replace("·", "*")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group()))
    return out


class _Parser:
    def __init__(self, text, sig, space, T, basis):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.space = space
        self.T = T
        self.basis = basis
        self.one = CliffordPoly.const(Multivector.scalar(sig), space)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> CliffordPoly:
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return out

    def expr(self) -> CliffordPoly:
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> CliffordPoly:
        neg = False
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                neg = not neg
        out = self.power()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                out = out * self.power()
            elif kind in ("num", "norm", "block", "blade", "name") or (kind, val) == ("op", "("):
                out = out * self.power()
            else:
                break
        return -out if neg else out

    def power(self) -> CliffordPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be a natural number")
            base = base ** int(val)
        return base

    def atom(self) -> CliffordPoly:
        kind, val = self.take()
        if kind is None:
            raise ParseError("unexpected end of input")
        if kind == "num":
            return self.one.scale(Fraction(val))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        if kind == "blade":
            if val.startswith("e{"):
                idx = [int(t) for t in val[2:-1].replace(" ", "").split(",") if t]
            else:
                idx = [int(ch) for ch in val[1:]]
            mv = Multivector(self.sig, {mask_of(idx): 1}) if idx else Multivector.scalar(self.sig)
            return CliffordPoly.const(mv, self.space)
        if kind == "block":
            return self.block_vec(int(val[1:].translate(UNSUP)))
        if kind == "norm":
            return self.block_norm(int(val[2:-2].translate(UNSUP)))
        if kind == "name":
            return self.name(val)
        raise ParseError(f"unexpected token {val!r}")

    def name(self, val: str) -> CliffordPoly:
        name = val.replace("α", "a").replace("β", "b")
        name = {"a": "a0", "b": "b1"}.get(name, name)
        if name in self.space.names:
            return CliffordPoly.var(self.sig, self.space, name)
        m = re.fullmatch(r"([XN])(\d+)", name)
        if m:
            u = int(m.group(2))
            return self.block_vec(u) if m.group(1) == "X" else self.block_norm(u)
        raise ParseError(f"unknown symbol {val!r}")

    def _need_blocks(self, u: int) -> None:
        if self.T is None or self.basis is None:
            raise ParseError("block symbols need a step list and basis")
        if not 1 <= u <= self.T.tau:
            raise ParseError(f"block {u} outside 1..{self.T.tau}")
        if self.space != VarSpace.x(self.T.N):
            raise ParseError("block symbols only apply to x-polynomials")

    def block_vec(self, u: int) -> CliffordPoly:
        from .stem import block_vector

        self._need_blocks(u)
        return block_vector(self.basis, self.T, u)

    def block_norm(self, u: int) -> CliffordPoly:
        from .stem import block_norm_sq

        self._need_blocks(u)
        return block_norm_sq(self.basis, self.T, u)


def parse_poly(
    text: str,
    sig: Signature,
    space: VarSpace,
    T: "StepList | None" = None,
    basis: "HypercomplexBasis | None" = None,
) -> CliffordPoly:
    return _Parser(text, sig, space, T, basis).parse()


def parse_multivector(text: str, sig: Signature) -> Multivector:
    p = parse_poly(text, sig, VarSpace((), ()))
    terms = p.terms
    return terms.get((), Multivector.zero(sig))


def parse_x_poly(text: str, basis: "HypercomplexBasis", T: "StepList | None" = None) -> CliffordPoly:
    return parse_poly(text, basis.sig, VarSpace.x(basis.N), T, basis)


def parse_stem_poly(text: str, basis: "HypercomplexBasis", T: "StepList") -> CliffordPoly:
    return parse_poly(text, basis.sig, VarSpace.stem(T.t0, T.tau))
