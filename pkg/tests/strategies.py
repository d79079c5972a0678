"""Hypothesis strategies for multivectors and polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from tregular.algebra import Multivector, Signature
from tregular.poly import CliffordPoly, VarSpace

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def signatures(draw, max_m=5):
    m = draw(st.integers(0, max_m))
    p = draw(st.integers(0, m))
    return Signature(p, m - p)


@st.composite
def multivectors(draw, sig, max_terms=5):
    masks = draw(st.lists(st.integers(0, (1 << sig.m) - 1), max_size=max_terms))
    return Multivector(sig, {k: draw(fractions) for k in masks})


@st.composite
def sig_and_mvs(draw, count=3, max_m=5):
    sig = draw(signatures(max_m))
    return sig, [draw(multivectors(sig)) for _ in range(count)]


@st.composite
def polys(draw, sig, space, max_terms=4, max_deg=2):
    n = len(space)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[exps] = draw(multivectors(sig, 3))
    return CliffordPoly.from_terms(sig, space, terms)


@st.composite
def scalar_polys(draw, space, max_terms=5, max_deg=3):
    sig = Signature(0, 0)
    n = len(space)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[exps] = Multivector.scalar(sig, draw(fractions))
    return CliffordPoly.from_terms(sig, space, terms)


XYZ = VarSpace(("x", "y", "z"), ("x", "x", "x"))
