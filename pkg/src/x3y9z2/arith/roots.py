"""n-th roots inside number fields, and cubic-residue characters.

Roots are found p-adically: pick an auxiliary prime q at which the
defining polynomial stays irreducible, Hensel-lift each residue root of
X^n - xi in the unramified ring Z_q (where the power-basis coordinates
of a global element are literally its rational coordinates mod q^N),
reconstruct the coordinates with Wang rational reconstruction, and
verify beta^n = xi exactly.  A positive answer is therefore proven; a
None may in principle be a precision artifact, so negative results that
matter are certified separately through cubic characters at split
primes q = 1 (mod 3).
"""

from __future__ import annotations

from fractions import Fraction

from .localfield import (FqField, ZqRing, factor_quartic_mod_p,
                         poly_roots_mod_p, quartic_is_irreducible_mod_p)
from .numberfield import NfElem, NumberField
from .rationals import rational_cube_root, rational_reconstruct, rational_sqrt


def _primes(start=2):
    from itertools import count
    found = []
    for n in count(max(start, 2)):
        if all(n % p for p in found if p * p <= n):
            found.append(n)
            yield n


def small_primes(bound):
    out = []
    for p in _primes():
        if p > bound:
            return out
        out.append(p)


def _rational_nth_root(x: Fraction, n: int):
    if n == 1:
        return x
    if n == 2:
        return rational_sqrt(x)
    if n == 3:
        return rational_cube_root(x)
    if n == 6:
        r = rational_sqrt(x)
        if r is None:
            return None
        # Either sqrt may be the cube; try both signs.
        for s in (r, -r):
            c = rational_cube_root(s)
            if c is not None:
                return c
        return None
    raise ValueError(f"unsupported root order {n}")


def _inert_prime_rings(field: NumberField, avoid, prec: int, enum_bound=250_000):
    """Yield ZqRing contexts at primes where the defining poly is
    irreducible (so K tensor Q_q is one unramified field)."""
    f_ints = field.minpoly.integer_coeffs()
    disc = field.minpoly.discriminant()
    for q in small_primes(400):
        if q in avoid or q < 5:
            continue
        if disc.numerator % q == 0 or disc.denominator % q == 0:
            continue
        if q**field.degree > enum_bound:
            return
        if field.degree == 4:
            irreducible = quartic_is_irreducible_mod_p(f_ints, q)
        else:
            factors = factor_quartic_mod_p(f_ints, q)
            irreducible = (len(factors) == 1 and factors[0][1] == 1
                           and len(factors[0][0]) - 1 == field.degree)
        if irreducible:
            yield ZqRing(q, [c % q**prec for c in f_ints], prec)


def nf_nth_root(xi, n: int, field: NumberField | None = None):
    """beta with beta^n = xi in the given number field, or None.

    xi may be an NfElem or a Fraction (with field=None for plain Q).
    """
    if isinstance(xi, (int, Fraction)):
        if field is None:
            return _rational_nth_root(Fraction(xi), n)
        xi = field(Fraction(xi))
    field = xi.parent
    if not xi:
        return field.zero()
    if xi.is_rational():
        r = _rational_nth_root(xi.rational_value(), n)
        if r is not None:
            return field(r)
        # A rational can still have an irrational n-th root in K.
    # Only the primes where xi fails to be a unit (or n itself) are unusable.
    avoid = {n}
    for c in xi.coords:
        for pr, _ in _small_factor(c.denominator):
            avoid.add(pr)
    nrm = xi.norm()
    for pr, _ in _small_factor(nrm.numerator):
        avoid.add(pr)
    for pr, _ in _small_factor(nrm.denominator):
        avoid.add(pr)

    for prec in (24, 60):
        tried = 0
        for ring in _inert_prime_rings(field, avoid, prec):
            beta = _root_in_ring(xi, n, ring)
            if beta is not None:
                return beta
            tried += 1
            if tried >= 3:
                break
    return None


def _small_factor(m: int, bound=10_000):
    """Partial factorization (small primes only) -- enough for 'avoid' sets."""
    out = []
    m = abs(m)
    if m in (0, 1):
        return out
    for p in small_primes(bound):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return out


def _residue_nth_roots(target, n: int):
    """All y in F_q* with y^n = target (target a unit)."""
    fq = target.field
    q = fq.q
    if q <= 5000:
        return [y for y in fq.elements() if y and y**n == target]
    # Exponent trick per prime factor of n (n in {2, 3, 6} here).
    roots = [target]
    for ell in ([2] if n % 2 == 0 else []) + [3] * (1 if n % 3 == 0 else 0):
        new_roots = []
        m = (q - 1) // ell
        if m % ell == 0:
            return [y for y in fq.elements() if y and y**n == target]  # rare: fall back
        inv = pow(ell, -1, m)
        # ell-th roots of unity.
        mus = [fq.one()]
        for x in fq.elements():
            if x and len(mus) < ell:
                cand = x**m
                if cand != fq.one() and cand not in mus:
                    mus = [fq.one()]
                    acc = cand
                    while acc != fq.one():
                        mus.append(acc)
                        acc = acc * cand
                    break
        for r in roots:
            if r**m != fq.one():
                continue
            base = r**inv
            for mu in mus[:ell]:
                new_roots.append(base * mu)
        roots = new_roots
    return [y for y in roots if y**n == target]


def _root_in_ring(xi: NfElem, n: int, ring: ZqRing):
    field = xi.parent
    fq = ring.residue_field()
    target_res = fq.from_nf(xi)
    if not target_res:
        return None  # avoided primes should prevent this
    res_roots = _residue_nth_roots(target_res, n)
    xi_q = ring.from_nf(xi)
    for r0 in res_roots:
        # Hensel-lift y^n - xi_q (derivative n y^(n-1) is a unit).
        y = ring.elem(list(r0.coords))
        for _ in range(ring.N.bit_length() + 2):
            err = y**n - xi_q
            if not err:
                break
            y = y - err * (ring.from_fraction(n) * y ** (n - 1)).inverse()
        if y**n != xi_q:
            continue
        coords = []
        ok = True
        for c in y.coords:
            rec = rational_reconstruct(c, ring.mod)
            if rec is None:
                ok = False
                break
            coords.append(rec)
        if not ok:
            continue
        beta = field(coords)
        if beta**n == xi:
            return beta
    return None


def nf_is_nth_power(xi, n: int, field=None) -> bool:
    return nf_nth_root(xi, n, field) is not None


# -- cubic characters ----------------------------------------------------


def degree_one_character_data(field: NumberField, bound=400, avoid=()):
    """(q, root) pairs: split primes q = 1 mod 3 with a root of the
    defining polynomial mod q — each gives a cubic character on q-units."""
    f_ints = field.minpoly.integer_coeffs()
    disc = field.minpoly.discriminant()
    out = []
    for q in small_primes(bound):
        if q < 5 or q % 3 != 1 or q in avoid:
            continue
        if disc.numerator % q == 0:
            continue
        for r in poly_roots_mod_p(f_ints, q):
            out.append((q, r))
    return out


def nf_cubic_character(xi, q: int, root: int):
    """Character exponent in {0,1,2} of xi at the degree-1 prime
    (q, alpha -> root); None if xi is not a q-unit there.

    xi: NfElem or Fraction.  A nonzero exponent proves xi is not a cube
    in the field (the character kills cubes).
    """
    fq = FqField(q)
    if isinstance(xi, (int, Fraction)):
        x = Fraction(xi)
        if x.numerator % q == 0 or x.denominator % q == 0:
            return None
        img = fq.from_fraction(x)
    else:
        for c in xi.coords:
            if c.denominator % q == 0:
                return None
        acc = fq.zero()
        for c in reversed(xi.coords):
            acc = acc * fq.elem(root) + fq.from_fraction(c)
        img = acc
        if not img:
            return None
    return img.cube_character()


def certify_non_cube(xi, field: NumberField | None = None, bound=400):
    """Return (q, root) proving xi is not a cube, or None if every
    sampled character vanished (inconclusive)."""
    if isinstance(xi, (int, Fraction)) and field is None:
        # Rational case: exact cube test is already rigorous.
        return None if rational_cube_root(Fraction(xi)) is not None else ("exact", None)
    f = field or xi.parent
    for q, r in degree_one_character_data(f, bound):
        e = nf_cubic_character(xi, q, r)
        if e:
            return (q, r)
    return None
