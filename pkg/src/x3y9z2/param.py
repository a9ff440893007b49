"""Parametrizations of x^3 + v^3 = z^2, the six quartic-cube equations,
weighted equivalence, and lifting solutions to x^3 + y^9 = z^2.

Every parametrization is verified symbolically on construction, so a
typo in the tables below cannot survive import.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith.poly import MPoly
from .arith.rationals import icbrt, strip_primes, valuation


class STValue:
    """A point of P^1(Q): a rational number or infinity, in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if isinstance(num, STValue):
            self.num, self.den = num.num, num.den
            return
        if den == 0:
            self.num, self.den = 1, 0
            return
        q = Fraction(num) / Fraction(den)
        self.num, self.den = q.numerator, q.denominator

    @classmethod
    def infinity(cls):
        return cls(1, 0)

    @property
    def is_infinity(self):
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinity:
            raise ValueError("infinity")
        return Fraction(self.num, self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = STValue(other)
        if not isinstance(other, STValue):
            return NotImplemented
        return (self.num, self.den) == (other.num, other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def sort_key(self):
        return (1, Fraction(0)) if self.is_infinity else (0, self.as_fraction())

    def __repr__(self):
        if self.is_infinity:
            return "oo"
        return str(Fraction(self.num, self.den))

    def serialize(self) -> str:
        return "oo" if self.is_infinity else str(Fraction(self.num, self.den))

    @classmethod
    def parse(cls, s: str) -> "STValue":
        return cls.infinity() if s in ("oo", "inf") else cls(Fraction(s))


INF = STValue.infinity()


def _mp(d):
    return MPoly(2, {e: Fraction(c) for e, c in d.items()})


# The three displayed families of solutions to x^3 + v^3 = z^2.
_FAMILY_DATA = {
    1: (_mp({(4, 0): 1, (2, 2): 6, (0, 4): -3}),
        _mp({(4, 0): -1, (2, 2): 6, (0, 4): 3}),
        _mp({(5, 1): 6, (1, 5): 18})),
    2: (_mp({(4, 0): Fraction(1, 4), (2, 2): Fraction(3, 2), (0, 4): Fraction(-3, 4)}),
        _mp({(4, 0): Fraction(-1, 4), (2, 2): Fraction(3, 2), (0, 4): Fraction(3, 4)}),
        _mp({(5, 1): Fraction(3, 4), (1, 5): Fraction(9, 4)})),
    3: (_mp({(4, 0): 1, (1, 3): 8}),
        _mp({(0, 4): 4, (3, 1): -4}),
        _mp({(6, 0): 1, (3, 3): -20, (0, 6): -8})),
}


@dataclass(frozen=True)
class Parametrization:
    family: int
    swapped: bool
    z_sign: int
    x_poly: MPoly
    v_poly: MPoly
    z_poly: MPoly

    def __post_init__(self):
        ident = self.x_poly**3 + self.v_poly**3 - self.z_poly**2
        if ident.terms:
            raise ValueError("parametrization identity fails")

    def evaluate(self, s, t):
        args = (Fraction(s), Fraction(t))
        return (self.x_poly(args), self.v_poly(args), self.z_poly(args))

    @property
    def label(self):
        swap = "v,x" if self.swapped else "x,v"
        sign = "+" if self.z_sign > 0 else "-"
        return f"family {self.family} ({swap}; z {sign})"


def mordell_families():
    """All 12 sign/swap variants of the three parametrizing families."""
    out = []
    for fam in (1, 2, 3):
        A, B, C = _FAMILY_DATA[fam]
        for swapped in (False, True):
            x, v = (B, A) if swapped else (A, B)
            for z_sign in (1, -1):
                out.append(Parametrization(fam, swapped, z_sign, x, v, z_sign * C))
    return out


# The six equations y^3 = f_i(s, t): (unit constant, primitive quartic form).
_EQUATIONS = {
    1: (Fraction(1), _mp({(4, 0): 1, (2, 2): 6, (0, 4): -3})),
    2: (Fraction(1), _mp({(4, 0): -1, (2, 2): 6, (0, 4): 3})),
    3: (Fraction(1, 4), _mp({(4, 0): 1, (2, 2): 6, (0, 4): -3})),
    4: (Fraction(1, 4), _mp({(4, 0): -1, (2, 2): 6, (0, 4): 3})),
    5: (Fraction(1), _mp({(4, 0): 1, (1, 3): 8})),
    6: (Fraction(4), _mp({(0, 4): 1, (3, 1): -1})),
}


def six_equations():
    """(id, rhs polynomial, unit constant, primitive quartic) for the six
    equations y^3 = f(s,t) the problem reduces to."""
    out = []
    for eq_id in range(1, 7):
        unit, form = _EQUATIONS[eq_id]
        out.append((eq_id, form * unit, unit, form))
    return out


def equation_rhs(eq_id: int) -> MPoly:
    unit, form = _EQUATIONS[eq_id]
    return form * unit


def eq5_eq6_transfer(s, t, y):
    """The bijection (s,t,y) -> (-t/2, s/4, y/4) between solutions of
    equation 5 and equation 6; induced map on s/t is v -> -2/v."""
    s, t, y = Fraction(s), Fraction(t), Fraction(y)
    return (-t / 2, s / 4, y / 4)


def eq5_eq6_transfer_inverse(s2, t2, y2):
    s2, t2, y2 = Fraction(s2), Fraction(t2), Fraction(y2)
    return (4 * t2, -2 * s2, 4 * y2)


def transfer_st_value(v: STValue) -> STValue:
    """s/t -> -2t/s = -2/(s/t) on P^1."""
    if v.is_infinity:
        return STValue(0)
    if v.num == 0:
        return INF
    return STValue(Fraction(-2) / v.as_fraction())


def is_S_primitive(values, S) -> bool:
    """True iff no prime outside S divides all values (as Z_S ideals).

    Values must be integral outside S (denominators only contain primes
    of S); the zero tuple is not primitive.
    """
    S = set(S)
    stripped = []
    for v in values:
        v = Fraction(v)
        d = v.denominator
        for p in S:
            while d % p == 0:
                d //= p
        if d != 1:
            raise ValueError(f"{v} is not integral outside {sorted(S)}")
        if v != 0:
            stripped.append(strip_primes(v.numerator, S))
    if not stripped:
        return False
    g = 0
    for n in stripped:
        g = gcd(g, n)
    return g == 1


def weighted_rescale(s, t, y, lam):
    """(s, t, y) -> (lam^3 s, lam^3 t, lam^4 y); preserves y^3 = f(s,t)
    for quartic f and fixes s/t."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    s, t, y = Fraction(s), Fraction(t), Fraction(y)
    return (lam**3 * s, lam**3 * t, lam**4 * y)


@dataclass(frozen=True, order=True)
class SolutionTriple:
    """A solution of the tagged equation; z is kept nonnegative and the
    +-z pair is expanded at reporting time."""

    x: int
    y: int
    z: int
    equation: str = "cube-ninth-square"

    def __post_init__(self):
        if self.equation == "cube-ninth-square":
            assert self.x**3 + self.y**9 == self.z**2, "triple does not satisfy x^3+y^9=z^2"
        else:
            assert self.x**3 + self.y**3 == self.z**2, "triple does not satisfy x^3+v^3=z^2"

    def signed_pair(self):
        if self.z == 0:
            return [(self.x, self.y, 0)]
        return [(self.x, self.y, self.z), (self.x, self.y, -self.z)]


def _remove_weighted_content(x: int, v: int, z: int):
    """Largest (lam^2 x, lam^2 v, lam^3 z)-reduction with integer results."""
    from .arith.rationals import factorize
    g = gcd(gcd(abs(x), abs(v)), abs(z))
    if g <= 1:
        return x, v, z
    lam = 1
    big = 10**9
    for p in factorize(g):
        k = min(valuation(x, p) // 2 if x else big,
                valuation(v, p) // 2 if v else big,
                valuation(z, p) // 3 if z else big)
        if 0 < k < big:
            lam *= p**k
    return x // lam**2, v // lam**2, z // lam**3


def lift_to_ninth(x: int, v: int, z: int, bound: int = 12):
    """All primitive solutions of x^3 + y^9 = z^2 weighted-equivalent to
    the x^3 + v^3 = z^2 solution (x, v, z), via scalings
    (lam^2 x, lam^2 v, lam^3 z) with lam a {2,3}-unit (|exponents| <= bound)
    after content removal.  Empty list when no equivalent primitive
    solution exists (a valid outcome).
    """
    assert x**3 + v**3 == z**2, "input does not satisfy x^3+v^3=z^2"
    x, v, z = _remove_weighted_content(x, v, abs(z))
    found = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            num = Fraction(2) ** a * Fraction(3) ** b
            x2 = Fraction(x) * num**2
            v2 = Fraction(v) * num**2
            z2 = Fraction(z) * num**3
            if x2.denominator != 1 or v2.denominator != 1 or z2.denominator != 1:
                continue
            xi, vi, zi = int(x2), int(v2), int(z2)
            for big, cube in ((xi, vi), (vi, xi)):
                y = icbrt(cube)
                if y is None:
                    continue
                if gcd(gcd(abs(big), abs(y)), abs(zi)) != 1:
                    continue
                found.add(SolutionTriple(big, y, abs(zi)))
    return sorted(found)
