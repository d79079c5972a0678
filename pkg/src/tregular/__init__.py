"""Exact computer algebra for T-regular functions over Clifford algebras."""

from .algebra import (
    AlgebraError,
    CliffordAlgebra,
    Multivector,
    Signature,
    conj,
    in_quadratic_cone,
    is_imaginary_unit,
    mul,
    norm,
    scalar_product,
    trace,
)
from .hypercomplex import (
    HypercomplexBasis,
    StepList,
    TorusPoint,
    basis_from_name,
    canonical_torus_point,
    decompose,
    grade_h_basis,
    paravector_basis,
    rational_sphere_point,
    suffix,
    torus_point,
    validate_basis,
    w_h_basis,
)
from .poly import CliffordPoly, LaurentPoly, NotDivisibleError, VarSpace, laurent_normalize
from .printing import format_poly, format_x_poly, parse_poly, parse_x_poly
from .stem import StemFunction, extract_stem, induce, induce_poly, tilde, validate_stem
from .tpoly import family_Fk, t_kappa

__version__ = "0.1.0"
