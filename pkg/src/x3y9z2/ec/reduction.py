"""Reduction of curves and points over a number field K at unramified
rational primes, and the m-divisibility sieve on Mordell-Weil generators.

Only the order Z[alpha] is used: primes dividing disc(minpoly) are
refused, which is all the pipeline needs (11 and 31 pass the check).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from ..arith.localfield import FqField, ZqRing, factor_quartic_mod_p
from ..arith.numberfield import NfElem, NumberField
from ..arith.rationals import valuation
from .weierstrass import EcPoint, WeierstrassCurve


class BadPrime(ValueError):
    """Ramified / index / bad-reduction prime refused by reduction."""


class NfPrime:
    """A prime of Z[alpha] above p, described by an irreducible factor of
    the minimal polynomial mod p; residue field F_(p^d)."""

    def __init__(self, field: NumberField, p: int, factor_ints, idx: int):
        self.field = field
        self.p = p
        self.factor = list(factor_ints)
        self.degree = len(self.factor) - 1
        self.idx = idx
        self._fq = FqField(p, self.factor)
        self._zq_cache = {}

    def fq(self) -> FqField:
        return self._fq

    def zq(self, prec: int) -> ZqRing:
        if prec not in self._zq_cache:
            ring = ZqRing(self.p, self.factor, prec)
            fq = ring.residue_field()
            f_ints = self.field.minpoly.integer_coeffs()
            root = ring.teich_lift_root(fq.gen(), f_ints)
            self._zq_cache[prec] = (ring, root)
        return self._zq_cache[prec]

    def residue(self, x: NfElem):
        """Image in F_q; BadPrime if x is not p-integral."""
        d = x.denominator_lcm()
        if d % self.p == 0:
            raise BadPrime(f"denominator divisible by {self.p}")
        fq = self._fq
        acc = fq.zero()
        g = fq.gen() if self.degree > 1 else fq.elem((-self.factor[0]) % self.p)
        for c in reversed(x.coords):
            acc = acc * g + fq.from_fraction(c)
        return acc

    def embed(self, x: NfElem, prec: int):
        """(u, v): x = u * p^v with u an integral ZqElem (exact to p^prec)."""
        ring, root = self.zq(prec)
        d = x.denominator_lcm()
        num = x * d
        acc = ring.zero()
        for c in reversed(num.coords):
            acc = acc * root + ring.from_fraction(c)
        vd = valuation(d, self.p)
        du = d // self.p**vd
        acc = acc * ring.from_fraction(Fraction(1, du))
        vn = acc.valuation()
        if vn >= ring.N:
            return ring.zero(), -vd  # zero at precision
        unit, shift = acc.unit_part()
        return unit, shift - vd

    def __repr__(self):
        return f"prime({self.p}, deg {self.degree}, {self.factor})"


def primes_above(field: NumberField, p: int, degree_cap: int = 4):
    """Primes of Z[alpha] above p with residue degree <= degree_cap,
    sorted by (degree, factor); BadPrime when p ramifies in Z[alpha]
    or divides disc(minpoly)."""
    disc = field.minpoly.discriminant()
    if disc.numerator % p == 0:
        raise BadPrime(f"{p} divides disc of the defining polynomial")
    f_ints = field.minpoly.integer_coeffs()
    factors = factor_quartic_mod_p(f_ints, p, degree_cap=degree_cap)
    if any(m > 1 for _, m in factors):
        raise BadPrime(f"{p} ramifies in Z[alpha]")
    return [NfPrime(field, p, fac, i) for i, (fac, m) in enumerate(factors)]


def reduce_at_prime(curve: WeierstrassCurve, point, p: int, prime_idx: int):
    """Reduce (curve over K, point) at the prime_idx-th prime above p.

    point may be None (reduce the curve alone), an EcPoint, or an (x, y)
    pair of NfElems.  Returns (curve over F_q, reduced point or None).
    """
    a, b = curve.a, curve.b
    field = a.parent if isinstance(a, NfElem) else b.parent
    prs = primes_above(field, p)
    if prime_idx >= len(prs):
        raise BadPrime(f"no prime with index {prime_idx} above {p}")
    pr = prs[prime_idx]
    Ebar = reduce_curve(curve, pr)
    if point is None:
        return Ebar, None
    return Ebar, reduce_point(Ebar, curve, point, pr)


def reduce_curve(curve: WeierstrassCurve, pr: NfPrime) -> WeierstrassCurve:
    abar = pr.residue(curve.a) if isinstance(curve.a, NfElem) else pr.fq().from_fraction(curve.a)
    bbar = pr.residue(curve.b) if isinstance(curve.b, NfElem) else pr.fq().from_fraction(curve.b)
    Ebar = WeierstrassCurve(abar, bbar, check_smooth=False)
    if not Ebar.discriminant():
        raise BadPrime(f"bad reduction at {pr}")
    return Ebar


def reduce_point(Ebar: WeierstrassCurve, curve: WeierstrassCurve, point, pr: NfPrime) -> EcPoint:
    """Reduction is defined for every K-point: coordinates with negative
    valuation reduce to O after projective rescaling."""
    if isinstance(point, EcPoint):
        if point.is_zero():
            return Ebar.zero()
        x, y = point.affine()
    else:
        x, y = point
    dx = x.denominator_lcm() if isinstance(x, NfElem) else Fraction(x).denominator
    dy = y.denominator_lcm() if isinstance(y, NfElem) else Fraction(y).denominator
    if dx % pr.p and dy % pr.p:
        fq = pr.fq()
        xb = pr.residue(x) if isinstance(x, NfElem) else fq.from_fraction(x)
        yb = pr.residue(y) if isinstance(y, NfElem) else fq.from_fraction(y)
        P = EcPoint(Ebar, xb, yb, fq.one())
        if not P.on_curve():
            raise BadPrime("reduced point not on reduced curve")
        return P
    # Negative valuation: embed p-adically and rescale projectively.
    prec = 12
    field = pr.field
    xe = x if isinstance(x, NfElem) else field(Fraction(x))
    ye = y if isinstance(y, NfElem) else field(Fraction(y))
    ux, vx = pr.embed(xe, prec)
    uy, vy = pr.embed(ye, prec)
    m = max(0, -vx, -vy)
    ring, _ = pr.zq(prec)
    fq = pr.fq()
    pm = pr.p**m

    def scaled(u, v):
        k = v + m
        if k >= prec:
            return fq.zero()
        co = [c * pr.p**k % pr.p for c in u.coords]
        return fq.elem(co)

    Xb, Yb, Zb = scaled(ux, vx), scaled(uy, vy), fq.elem(pm % pr.p if m == 0 else 0)
    if m == 0:
        Zb = fq.one()
    P = EcPoint(Ebar, Xb, Yb, Zb)
    if not P.on_curve():
        raise BadPrime("reduced point not on reduced curve")
    return P


def curve_order_fq(Ebar: WeierstrassCurve) -> int:
    """#E(F_q) by enumeration (q small)."""
    fq = _fq_of(Ebar)
    sq = {}
    for y in fq.elements():
        key = y * y
        sq[key] = sq.get(key, 0) + 1
    total = 1
    for x in fq.elements():
        rhs = x * x * x + Ebar.a * x + Ebar.b
        total += sq.get(rhs, 0)
    return total


def all_points_fq(Ebar: WeierstrassCurve):
    fq = _fq_of(Ebar)
    pts = [Ebar.zero()]
    roots = {}
    for y in fq.elements():
        roots.setdefault(y * y, []).append(y)
    for x in fq.elements():
        rhs = x * x * x + Ebar.a * x + Ebar.b
        for y in roots.get(rhs, []):
            pts.append(EcPoint(Ebar, x, y, fq.one()))
    return pts


def _fq_of(Ebar):
    return Ebar.a.field if hasattr(Ebar.a, "field") else Ebar.b.field


def non_divisibility_sieve(curve: WeierstrassCurve, points, m: int, prime_specs):
    """Certify that <points> + torsion has index prime to m in E(K).

    prime_specs: iterable of (p, prime_idx).  True when every nonzero
    e in (Z/m)^r has, at some supplied prime, sum(e_i P_i) outside
    m*E(F_q); otherwise returns the list of surviving vectors (the
    Inconclusive outcome — never silently converted to a success).
    """
    from itertools import product

    r = len(points)
    survivors = [e for e in product(range(m), repeat=r) if any(e)]
    used = []
    field = curve.a.parent if isinstance(curve.a, NfElem) else curve.b.parent
    for (p, idx) in prime_specs:
        if not survivors:
            break
        try:
            prs = primes_above(field, p)
            if idx >= len(prs):
                continue
            pr = prs[idx]
            Ebar = reduce_curve(curve, pr)
            red = [reduce_point(Ebar, curve, P, pr) for P in points]
        except BadPrime:
            continue
        mult_set = {_pt_key(m * Q) for Q in all_points_fq(Ebar)}
        still = []
        for e in survivors:
            S = Ebar.zero()
            for k, P in zip(e, red):
                if k:
                    S = S + k * P
            if _pt_key(S) in mult_set:
                still.append(e)
        if len(still) < len(survivors):
            used.append((p, idx))
        survivors = still
    return (True, used) if not survivors else (survivors, used)


def _pt_key(P: EcPoint):
    aff = P.affine()
    if aff is None:
        return "O"
    return (aff[0].coords, aff[1].coords)
