"""Fixed-precision p-adic numbers and Hensel lifting.

A PadicNum carries its working precision explicitly: a nonzero value is
unit * p^val known modulo p^(val + prec); the zero-at-precision element
only records that the valuation is >= its absolute precision.  Every
consumer is expected to check precision sufficiency rather than trust
digits that were never computed.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import UPoly
from .rationals import valuation

DEFAULT_PRECISION = 50


class NotLiftable(Exception):
    """Hensel precondition |g(a)|_p < |g'(a)|_p^2 cannot be certified."""


class PadicNum:
    """unit * p^val + O(p^(val+prec)); unit = 0 encodes O(p^val)."""

    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val: int, unit: int, prec: int):
        if prec <= 0:
            raise ValueError("precision must be positive")
        self.p = p
        unit %= p**prec
        if unit == 0:
            self.val = val
            self.unit = 0
            self.prec = prec
        else:
            shift = valuation(unit, p)
            if shift:
                unit //= p**shift
                prec -= shift
                if prec <= 0:
                    # All known digits were zero.
                    self.val = val + shift
                    self.unit = 0
                    self.prec = 1
                    return
            self.val = val + shift
            self.unit = unit % p**prec
            self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int, abs_prec: int = DEFAULT_PRECISION) -> "PadicNum":
        return cls(p, abs_prec, 0, 1)

    @classmethod
    def from_rational(cls, q, p: int, prec: int = DEFAULT_PRECISION) -> "PadicNum":
        q = Fraction(q)
        if q == 0:
            return cls.zero(p, prec)
        v = valuation(q, p)
        num = q.numerator
        den = q.denominator
        if v > 0:
            num //= p**v
        elif v < 0:
            den //= p ** (-v)
        m = p**prec
        return cls(p, v, num * pow(den, -1, m) % m, prec)

    # -- structure ----------------------------------------------------

    def is_zero_at_precision(self) -> bool:
        return self.unit == 0

    @property
    def abs_prec(self) -> int:
        """The value is known modulo p^abs_prec."""
        return self.val + self.prec if self.unit else self.val

    def valuation(self) -> int:
        if self.unit == 0:
            raise ValueError("valuation of zero-at-precision is only bounded below")
        return self.val

    def valuation_lower_bound(self) -> int:
        return self.val

    def digits(self, n=None):
        """Base-p digits of the unit part (length n, default full precision)."""
        n = self.prec if n is None else n
        out = []
        u = self.unit
        for _ in range(n):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def residue(self, k: int) -> int:
        """Value mod p^k in [0, p^k); requires val >= 0 and enough precision."""
        if self.val < 0:
            raise ValueError("negative valuation has no integer residue")
        if self.abs_prec < k:
            raise ValueError("insufficient precision for residue")
        if self.unit == 0:
            return 0
        return self.unit * self.p**self.val % self.p**k

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        return PadicNum.from_rational(other, self.p, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.p
        ap = min(self.abs_prec, other.abs_prec)
        base = min(self.val, other.val)
        rel = ap - base
        if rel <= 0:
            return PadicNum.zero(p, ap)
        m = p**rel
        total = 0
        if self.unit:
            total += self.unit * p ** (self.val - base)
        if other.unit:
            total += other.unit * p ** (other.val - base)
        total %= m
        if total == 0:
            return PadicNum.zero(p, ap)
        return PadicNum(p, base, total, rel)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicNum(self.p, self.val, self.p**self.prec - self.unit, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        v = self.val + other.val
        if self.unit == 0 or other.unit == 0:
            return PadicNum.zero(self.p, v)
        prec = min(self.prec, other.prec)
        return PadicNum(self.p, v, self.unit * other.unit, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.unit == 0:
            raise ZeroDivisionError("division by zero-at-precision")
        if self.unit == 0:
            return PadicNum.zero(self.p, self.val - other.val)
        prec = min(self.prec, other.prec)
        m = self.p**prec
        inv = pow(other.unit % m, -1, m)
        return PadicNum(self.p, self.val - other.val, self.unit * inv, prec)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (self._coerce(1) / self) ** (-n)
        result = self._coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        """Indistinguishable at the shared absolute precision."""
        try:
            other = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return (self - other).unit == 0

    def __hash__(self):
        raise TypeError("PadicNum is approximate; not hashable")

    def __repr__(self):
        if self.unit == 0:
            return f"O({self.p}^{self.val})"
        ds = self.digits(min(self.prec, 12))
        s = " + ".join(f"{d}*{self.p}^{self.val + i}" for i, d in enumerate(ds) if d)
        return f"{s} + O({self.p}^{self.abs_prec})"


def padic_eval(g: UPoly, x: PadicNum) -> PadicNum:
    """Horner evaluation of a rational polynomial at a p-adic point."""
    result = None
    for c in reversed(g.coeffs):
        cp = PadicNum.from_rational(c, x.p, x.prec)
        result = cp if result is None else result * x + cp
    return result if result is not None else PadicNum.zero(x.p, x.prec)


def padic_hensel_root(g: UPoly, approx: PadicNum) -> PadicNum:
    """Lift approx to a root of g by Newton iteration.

    Requires the quantitative Hensel condition v(g(a)) > 2 v(g'(a)) to be
    certifiable at the precision of `approx`; otherwise NotLiftable is
    raised and the caller must refine its approximation mod p^k first.
    The result satisfies g(r) = 0 to the working precision N of approx
    and agrees with approx to the guaranteed modulus p^(v(g(a)) - v(g'(a))).
    """
    p = approx.p
    N = approx.prec if approx.unit else approx.val
    if N <= 0:
        raise NotLiftable("approximation carries no digits")
    d = padic_eval(g.derivative(), approx)
    if d.unit == 0:
        raise NotLiftable("derivative valuation not certifiable at this precision")
    m = d.valuation()
    e = padic_eval(g, approx)
    v_e = e.abs_prec if e.unit == 0 else e.val
    if v_e <= 2 * m:
        raise NotLiftable(f"v(g(a)) = {v_e} does not exceed 2*v(g'(a)) = {2 * m}")

    if approx.val < 0:
        raise NotLiftable("negative-valuation approximation")
    W = N + 2 * m + 5
    mod = p**W
    a = 0 if approx.unit == 0 else approx.unit * p**approx.val % mod
    den = g.denominator_lcm()
    gi = [int(c * den) for c in g.coeffs]
    gpi = [i * gi[i] for i in range(1, len(gi))]

    def ev(ints, t):
        acc = 0
        for c in reversed(ints):
            acc = (acc * t + c) % mod
        return acc

    target = p ** min(N + m, W - 1)
    for _ in range(80):
        ga = ev(gi, a)
        if ga % target == 0:
            break
        gpa = ev(gpi, a)
        if gpa == 0 or valuation(gpa, p) != m:
            raise NotLiftable("derivative valuation drifted during iteration")
        u = gpa // p**m
        step = (ga // p**m) * pow(u, -1, mod) % mod
        a = (a - step) % mod
    else:
        raise NotLiftable("Newton iteration failed to converge")
    return PadicNum(p, 0, a % p**N, N) if a % p**N else PadicNum.zero(p, N)
