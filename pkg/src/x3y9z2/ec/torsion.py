"""Rational torsion of integral short Weierstrass curves.

Order bound from #E(F_p) at several good odd primes, candidates from the
Nagell-Lutz divisor condition (torsion points are integral with y = 0 or
y^2 | disc), each candidate certified by exact multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from ..arith.localfield import FqField
from ..arith.poly import UPoly
from ..arith.rationals import divisors, factorize
from .weierstrass import EcPoint, WeierstrassCurve


def integralize_curve(a: Fraction, b: Fraction):
    """Scale y^2 = x^3 + ax + b to integer coefficients.

    Returns (a', b', lam) with a' = a lam^4, b' = b lam^6 integers; the
    point map is (x, y) -> (lam^2 x, lam^3 y).
    """
    a, b = Fraction(a), Fraction(b)
    lam = 1
    for p in set(factorize(a.denominator)) | set(factorize(b.denominator)):
        va = _den_val(a, p)
        vb = _den_val(b, p)
        k = max(-(-va // 4), -(-vb // 6))
        lam *= p**k
    a2 = a * lam**4
    b2 = b * lam**6
    assert a2.denominator == 1 and b2.denominator == 1
    return int(a2), int(b2), lam


def _den_val(x: Fraction, p: int) -> int:
    v = 0
    d = x.denominator
    while d % p == 0:
        d //= p
        v += 1
    return v


def count_points_fp(a: int, b: int, p: int) -> int:
    """#E(F_p) for y^2 = x^3 + ax + b by direct enumeration."""
    sq = [0] * p
    for y in range(p):
        sq[y * y % p] += 1
    total = 1  # point at infinity
    for x in range(p):
        total += sq[(x * x * x + a * x + b) % p]
    return total


def good_odd_primes(a: int, b: int, count: int):
    disc = -16 * (4 * a**3 + 27 * b**2)
    out = []
    p = 3
    while len(out) < count:
        p += 2
        if not _is_prime(p):
            continue
        if disc % p == 0:
            continue
        out.append(p)
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _integer_roots_cubic(a: int, b: int):
    """Integer roots of x^3 + a x + b."""
    if b == 0:
        roots = {0}
        # x^2 = -a
        if a <= 0:
            r = isqrt(-a)
            if r * r == -a:
                roots |= {r, -r}
        return sorted(roots)
    roots = set()
    for d in divisors(b):
        for x in (d, -d):
            if x**3 + a * x + b == 0:
                roots.add(x)
    return sorted(roots)


def torsion_over_Q(curve: WeierstrassCurve):
    """(structure, points) for E(Q)_tors of an integral short model.

    structure is a string like "trivial", "Z/2", "Z/3", "Z/6" (products
    appear as "Z/2 x Z/2" etc.); points lists the nontrivial torsion
    points as EcPoints.
    """
    a, b = curve.a, curve.b
    if isinstance(a, Fraction):
        if a.denominator != 1 or Fraction(b).denominator != 1:
            raise ValueError("integral model required; use integralize_curve")
        a, b = int(a), int(b)
    counts = [count_points_fp(a, b, p) for p in good_odd_primes(a, b, 6)]
    bound = 0
    for c in counts:
        bound = gcd(bound, c)
    disc = abs(-16 * (4 * a**3 + 27 * b**2))

    points = []
    for x in _integer_roots_cubic(a, b):
        points.append(curve.point(Fraction(x), Fraction(0)))
    y = 1
    while y * y <= disc:
        if disc % (y * y) == 0:
            const = b - y * y
            for x in _integer_roots_cubic(a, const):
                points.append(curve.point(Fraction(x), Fraction(y)))
                points.append(curve.point(Fraction(x), Fraction(-y)))
        y += 1

    torsion = {}
    for P in points:
        n = _torsion_order(P, bound)
        if n is not None:
            torsion[P] = n
    for P, n in torsion.items():
        assert all(cnt % _group_order(torsion) == 0 for cnt in counts), \
            "torsion does not inject into some good reduction"
    order = _group_order(torsion)
    if order == 1:
        return "trivial", []
    max_ord = max(torsion.values())
    if max_ord == order:
        structure = f"Z/{order}"
    else:
        assert order == max_ord * 2, "unexpected torsion structure"
        structure = f"Z/2 x Z/{max_ord}"
    pts = sorted(torsion, key=lambda P: (torsion[P], repr(P)))
    return structure, pts


def _group_order(torsion: dict) -> int:
    return len(torsion) + 1


def _torsion_order(P: EcPoint, bound: int):
    """Exact order if P is torsion of order dividing bound, else None."""
    if bound <= 0 or bound > 10**6:
        return None
    if (bound * P).is_zero():
        for d in divisors(bound):
            if (d * P).is_zero():
                return d
    return None
