"""Exact arithmetic substrate: rationals, polynomials, number fields,
etale algebras and fixed-precision p-adic numbers."""

from .rationals import (
    Rat,
    icbrt,
    is_perfect_cube,
    is_rational_cube,
    rational_cube_root,
    rational_sqrt,
    strip_primes,
    valuation,
)
from .poly import MPoly, UPoly
from .numberfield import (
    AlgElem,
    EtaleAlgebra,
    FieldIso,
    NfElem,
    NumberField,
    ZeroDivisorError,
    factor_deg_le4,
)
from .padic import NotLiftable, PadicNum, padic_hensel_root

__all__ = [
    "Rat", "icbrt", "is_perfect_cube", "is_rational_cube",
    "rational_cube_root", "rational_sqrt", "strip_primes", "valuation",
    "MPoly", "UPoly",
    "AlgElem", "EtaleAlgebra", "FieldIso", "NfElem", "NumberField",
    "ZeroDivisorError", "factor_deg_le4",
    "NotLiftable", "PadicNum", "padic_hensel_root",
]
