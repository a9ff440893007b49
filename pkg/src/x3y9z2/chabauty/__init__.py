"""Elliptic-curve Chabauty over the quartic field: residue sieves at the
primes above 11 and 31, p-adic uniqueness bounds on the surviving
residue classes, and machine-checkable completeness certificates."""

from .series import PrecisionTooLow, formal_log, newton_polygon, strassman_zero_bound
from .engine import (
    BadPrime,
    ChabautyOutcome,
    CurveProblem,
    RankConditionViolated,
    RationalFunctionOnE,
    rational_st_values,
    residue_sieve,
)
from .setup import chabauty_setup_for_row

__all__ = [
    "PrecisionTooLow", "formal_log", "newton_polygon", "strassman_zero_bound",
    "BadPrime", "ChabautyOutcome", "CurveProblem", "RankConditionViolated",
    "RationalFunctionOnE", "rational_st_values", "residue_sieve",
    "chabauty_setup_for_row",
]
