"""The Chabauty/sieve engine.

Given E/K: y^2 = x^3 + c with trusted generators of a finite-index
subgroup, and the degree-3 map psi = s/t : E -> P^1 defined over K,
determine every point of E(K) with psi-value in P^1(Q).

Residue classes of the generator lattice modulo simultaneous reduction
at all primes above p survive only if a single P^1(F_p)-value is
compatible with psi's reduction at every completion (coordinates above
the constant one must vanish for residue degree > 1, and the rational
values must agree across primes).  Surviving classes are then closed
p-adically: inside a class the rationality equations are power series
in the lattice coordinates whose terms beyond the linear one carry
valuation >= 2, so a linear part that is nondegenerate pins at most one
point, which must then be the known one; a class with no known point is
emptied modulo p^2 or left honestly unclosed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..arith.numberfield import NfElem, NumberField
from ..arith.rationals import valuation
from ..ec.reduction import (BadPrime, NfPrime, curve_order_fq, primes_above,
                            reduce_curve, reduce_point)
from ..ec.weierstrass import EcPoint, WeierstrassCurve, _complete_add
from ..param import STValue
from .series import PrecisionTooLow

DEFAULT_PREC = 30


class RankConditionViolated(Exception):
    pass


class CurveProblem(Exception):
    """Setup-level failure (torsion, isomorphism, or data trouble)."""


@dataclass
class RationalFunctionOnE:
    """psi(x, y) = (n0 + n1 x + n2 y) / (d0 + d1 x + d2 y) over K."""

    field: NumberField
    num: tuple
    den: tuple

    def value_pair(self, P: EcPoint):
        """Projective pair [num : den] at P (well-defined up to scaling)."""
        X, Y, Z = P.X, P.Y, P.Z
        n0, n1, n2 = self.num
        d0, d1, d2 = self.den
        return (n0 * Z + n1 * X + n2 * Y, d0 * Z + d1 * X + d2 * Y)

    def rational_value(self, P: EcPoint):
        """STValue if psi(P) lies in P^1(Q), else None."""
        num, den = self.value_pair(P)
        if not den:
            if not num:
                raise CurveProblem("psi undefined at a point")
            return STValue.infinity()
        ratio = num * den.inverse()
        if ratio.is_rational():
            return STValue(ratio.rational_value())
        return None

    def value_in_K(self, P: EcPoint):
        num, den = self.value_pair(P)
        if not den:
            return None
        return num * den.inverse()


# -- per-prime local data --------------------------------------------------


class PrimeContext:
    """Reduction and p-adic embedding data at one prime of K above p."""

    def __init__(self, pr: NfPrime, curve: WeierstrassCurve,
                 psi: RationalFunctionOnE, gens, prec: int):
        self.pr = pr
        self.p = pr.p
        self.fq = pr.fq()
        self.Ebar = reduce_curve(curve, pr)
        self.order = curve_order_fq(self.Ebar)
        self.gens_bar = [reduce_point(self.Ebar, curve, g, pr) for g in gens]
        self.psi_bar = self._reduce_psi(psi)
        self.ring, self.alpha_root = pr.zq(prec)
        self.curve_q = WeierstrassCurve(self.ring.zero(),
                                        self._embed_integral(curve.b), check_smooth=False)
        # Strip any common p-power from the six coefficients: [num : den]
        # is scale-invariant and the analytic charts need unit denominators.
        embedded = [self.pr.embed(c, self.ring.N) for c in psi.num + psi.den]
        if any(v < 0 for u, v in embedded if u):
            raise BadPrime("non-integral psi coefficient at the prime")
        nonzero_shifts = [v for u, v in embedded if u]
        if not nonzero_shifts:
            raise BadPrime("psi embeds to 0/0 at the prime")
        m = min(nonzero_shifts)
        pf = self.ring.from_fraction
        self.psi_q = tuple(u * pf(Fraction(self.p) ** (v - m)) if u else u
                           for u, v in embedded)

    def _embed_integral(self, x: NfElem):
        u, v = self.pr.embed(x, self.ring.N)
        if v < 0:
            raise BadPrime("non-integral coefficient at the prime")
        return u * self.ring.from_fraction(Fraction(self.p) ** v)

    def _reduce_psi(self, psi: RationalFunctionOnE):
        coeffs = list(psi.num) + list(psi.den)
        embedded = [self.pr.embed(c, 8) for c in coeffs]
        m = min(v for _, v in embedded)
        out = []
        for u, v in embedded:
            k = v - m
            if k >= 8:
                out.append(self.fq.zero())
            else:
                out.append(self.fq.elem([c * self.p**k % self.p for c in u.coords]))
        if not any(out):
            raise BadPrime("psi reduces to 0/0 at the prime")
        return tuple(out)

    def residue_value(self, P: EcPoint):
        """('inf', None) | ('val', a in F_p) | 'incompatible' | 'undefined'."""
        n0, n1, n2, d0, d1, d2 = self.psi_bar
        num = n0 * P.Z + n1 * P.X + n2 * P.Y
        den = d0 * P.Z + d1 * P.X + d2 * P.Y
        if not num and not den:
            return "undefined"
        if self.fq.d > 1:
            if num**self.p * den != den**self.p * num:
                return "incompatible"
        if not den:
            return ("inf", None)
        ratio = den.inverse() * num
        if any(ratio.coords[1:]):
            return "incompatible"
        return ("val", ratio.coords[0])

    def zero_point(self) -> "ZqPoint":
        ring = self.ring
        return ZqPoint(self, ring.zero(), ring.one(), ring.zero(), ring.N)

    def embedded_gens(self, gens):
        if not hasattr(self, "_gens_q"):
            self._gens_q = [self.embed_point(g) for g in gens]
        return self._gens_q

    def embed_point(self, P: EcPoint) -> "ZqPoint":
        if P.is_zero():
            return self.zero_point()
        x, y = P.affine()
        ux, vx = self.pr.embed(x, self.ring.N)
        uy, vy = self.pr.embed(y, self.ring.N)
        m = max(0, -vx, -vy)
        pf = self.ring.from_fraction
        X = ux * pf(Fraction(self.p) ** (vx + m))
        Y = uy * pf(Fraction(self.p) ** (vy + m))
        Z = pf(Fraction(self.p) ** m)
        return ZqPoint(self, X, Y, Z, self.ring.N)


class ZqPoint:
    """Primitive projective point over Z_q with tracked reliable precision."""

    __slots__ = ("ctx", "X", "Y", "Z", "known")

    def __init__(self, ctx, X, Y, Z, known):
        self.ctx = ctx
        self.X, self.Y, self.Z = X, Y, Z
        self.known = known
        if known <= 0:
            raise PrecisionTooLow("point has no reliable digits left")

    def add(self, other: "ZqPoint") -> "ZqPoint":
        X3, Y3, Z3 = _complete_add(self.ctx.curve_q, self.X, self.Y, self.Z,
                                   other.X, other.Y, other.Z)
        known = min(self.known, other.known)
        m = min(v.valuation() for v in (X3, Y3, Z3))
        if m >= known:
            raise PrecisionTooLow("projective point lost all precision")
        if m:
            ring = self.ctx.ring
            pm = self.ctx.p**m
            X3 = ring.elem([c // pm for c in X3.coords])
            Y3 = ring.elem([c // pm for c in Y3.coords])
            Z3 = ring.elem([c // pm for c in Z3.coords])
            known -= m
        return ZqPoint(self.ctx, X3, Y3, Z3, known)

    def neg(self) -> "ZqPoint":
        return ZqPoint(self.ctx, self.X, -self.Y, self.Z, self.known)

    def mul(self, n: int) -> "ZqPoint":
        if n < 0:
            return self.neg().mul(-n)
        acc = self.ctx.zero_point()
        base = self
        while n:
            if n & 1:
                acc = acc.add(base)
            base = base.add(base)
            n >>= 1
        return acc

    def in_kernel(self) -> bool:
        return (self.Y.valuation() == 0 and self.X.valuation() >= 1
                and self.Z.valuation() >= 1)

    def t_parameter(self):
        if self.Y.valuation() != 0:
            raise PrecisionTooLow("point not in the kernel chart")
        return -(self.X * self.Y.inverse())


# -- residue classes of the generator lattice -------------------------------


def _tuple_key(points):
    out = []
    for P in points:
        aff = P.affine()
        out.append("O" if aff is None else (aff[0].coords, aff[1].coords))
    return tuple(out)


def _tuple_order(imgs, bound):
    out = 1
    for P in imgs:
        acc = P
        order = None
        for d in range(1, bound + 1):
            if acc.is_zero():
                order = d
                break
            acc = acc + P
        out = out * order // gcd(out, order)
    return out


class SieveData:
    """Z^r modulo the kernel of simultaneous reduction at the primes."""

    def __init__(self, contexts, rank):
        self.contexts = contexts
        self.rank = rank
        self.gens_imgs = [[ctx.gens_bar[i] for ctx in contexts] for i in range(rank)]
        self.zeros = [ctx.Ebar.zero() for ctx in contexts]
        bound = 1
        for ctx in contexts:
            bound = bound * ctx.order // gcd(bound, ctx.order)
        if rank == 0:
            self.o1, self.k2, self.a_rel = 1, 1, 0
            self.basis = []
        elif rank == 1:
            self.o1 = _tuple_order(self.gens_imgs[0], bound)
            self.k2, self.a_rel = 1, 0
            self.basis = [(self.o1,)]
        elif rank == 2:
            self.o1 = _tuple_order(self.gens_imgs[0], bound)
            seen = {}
            T = self.zeros
            for j in range(self.o1):
                seen[_tuple_key(T)] = j
                T = [A + B for A, B in zip(T, self.gens_imgs[0])]
            T = [A + B for A, B in zip(self.zeros, self.gens_imgs[1])]
            k2 = a = None
            for k in range(1, bound + 1):
                key = _tuple_key(T)
                if key in seen:
                    k2, a = k, seen[key]
                    break
                T = [A + B for A, B in zip(T, self.gens_imgs[1])]
            if k2 is None:
                raise AssertionError("no relation for the second generator")
            self.k2, self.a_rel = k2, a
            self.basis = [(self.o1, 0), (-a, k2)]
        else:
            raise RankConditionViolated("only rank <= 2 lattices are handled")

    def n_classes(self) -> int:
        return self.o1 * self.k2

    def class_of(self, nvec) -> tuple:
        if self.rank == 0:
            return ()
        if self.rank == 1:
            return (nvec[0] % self.o1,)
        c2 = nvec[1] % self.k2
        mu = (nvec[1] - c2) // self.k2
        c1 = (nvec[0] + mu * self.a_rel) % self.o1
        return (c1, c2)

    def iter_classes(self):
        if self.rank == 0:
            yield (), list(self.zeros)
            return
        if self.rank == 1:
            T = list(self.zeros)
            for c1 in range(self.o1):
                yield (c1,), T
                T = [A + B for A, B in zip(T, self.gens_imgs[0])]
            return
        T2 = list(self.zeros)
        for c2 in range(self.k2):
            T = list(T2)
            for c1 in range(self.o1):
                yield (c1, c2), T
                T = [A + B for A, B in zip(T, self.gens_imgs[0])]
            T2 = [A + B for A, B in zip(T2, self.gens_imgs[1])]


def residue_sieve(contexts, rank):
    """(SieveData, survivors): classes whose psi-reductions admit one
    common P^1(F_p) value at every prime above p simultaneously."""
    sd = SieveData(contexts, rank)
    survivors = {}
    for cls, imgs in sd.iter_classes():
        vals = []
        verdict = None
        for ctx, P in zip(contexts, imgs):
            v = ctx.residue_value(P)
            if v == "incompatible":
                verdict = "killed"
                break
            vals.append(v)
        if verdict == "killed":
            continue
        if "undefined" in vals:
            survivors[cls] = {"images_key": _tuple_key(imgs), "residue_value": "undefined"}
            continue
        if any(v != vals[0] for v in vals[1:]):
            continue
        survivors[cls] = {"images_key": _tuple_key(imgs), "residue_value": vals[0]}
    return sd, survivors


# -- the per-curve run -------------------------------------------------------


@dataclass
class ChabautyOutcome:
    values: list
    witnesses: dict
    status: str            # "Complete" | "Inconclusive"
    reason: str
    certificates: list

    @property
    def complete(self):
        return self.status == "Complete"

    def value_set(self):
        return set(self.values)

    def as_dict(self):
        return {
            "status": self.status,
            "reason": self.reason,
            "values": sorted(v.serialize() for v in self.values),
            "witnesses": {k: v for k, v in sorted(self.witnesses.items())},
            "certificates": self.certificates,
        }


class ChabautyRun:
    """One curve E_i/K with psi and known points, analyzed at one prime p."""

    def __init__(self, curve, psi, gens, known_points, p, prec=DEFAULT_PREC):
        if len(gens) >= 4:
            raise RankConditionViolated("rank condition rk < [K:Q] = 4 violated")
        self.curve = curve
        self.psi = psi
        self.gens = gens
        self.known = known_points    # list of (nvec or None, EcPoint, STValue)
        self.p = p
        self.prec = prec
        field = psi.field
        self.contexts = [PrimeContext(pr, curve, psi, gens, prec)
                         for pr in primes_above(field, p)]

    def run(self):
        """Per-class certificates; returns (all_closed, certificates)."""
        sd, survivors = residue_sieve(self.contexts, len(self.gens))
        known_by_key = {}
        for nvec, P, val in self.known:
            key = _tuple_key([reduce_point(ctx.Ebar, self.curve, P, ctx.pr)
                              for ctx in self.contexts])
            known_by_key.setdefault(key, []).append((nvec, P, val))
        for key in known_by_key:
            assert any(info["images_key"] == key for info in survivors.values()), \
                "a known rational-value point was sieved out (soundness bug)"

        certs = []
        all_closed = True
        self._kernel_cache = None
        for cls, info in sorted(survivors.items()):
            pts_here = known_by_key.get(info["images_key"], [])
            closed, cert = self._close_class(sd, cls, info, pts_here)
            cert["n_known"] = len(pts_here)
            certs.append(cert)
            if not closed:
                all_closed = False
        summary = {
            "prime": self.p,
            "n_classes": sd.n_classes(),
            "n_survivors": len(survivors),
            "lattice_basis": [list(b) for b in sd.basis],
            "local_orders": [ctx.order for ctx in self.contexts],
            "residue_degrees": [ctx.fq.d for ctx in self.contexts],
        }
        return all_closed, {"summary": summary, "classes": certs}

    # -- analytic pieces ---------------------------------------------------

    def _kernel_basis_points(self, sd: SieveData):
        if self._kernel_cache is None:
            basis_pts = []
            for vec in sd.basis:
                per_prime = []
                for ctx in self.contexts:
                    gq = ctx.embedded_gens(self.gens)
                    acc = ctx.zero_point()
                    for n, G in zip(vec, gq):
                        if n:
                            acc = acc.add(G.mul(n))
                    if not acc.in_kernel():
                        raise AssertionError("lattice basis point not in the kernel")
                    per_prime.append(acc)
                basis_pts.append(per_prime)
            self._kernel_cache = basis_pts
        return self._kernel_cache

    def _chart_values(self, pts, invert):
        """Chart value h_j at each prime for a tuple of ZqPoints."""
        out = []
        for ctx, P in zip(self.contexts, pts):
            n0, n1, n2, d0, d1, d2 = ctx.psi_q
            num = n0 * P.Z + n1 * P.X + n2 * P.Y
            den = d0 * P.Z + d1 * P.X + d2 * P.Y
            if invert:
                num, den = den, num
            if den.valuation() != 0:
                raise PrecisionTooLow("chart denominator is not a unit")
            out.append((num * den.inverse(), P.known))
        return out

    def _equations(self, values):
        """Scalar Z_p rationality equations: (residue int, known precision)."""
        eqs = []
        base = None
        for (h, known), ctx in zip(values, self.contexts):
            d = ctx.ring.d
            for ell in range(1, d):
                eqs.append((h.coords[ell] % ctx.ring.mod, known))
            if base is None:
                base = (h.coords[0], known)
            else:
                eqs.append(((h.coords[0] - base[0]) % ctx.ring.mod, min(known, base[1])))
        return eqs

    def _close_class(self, sd, cls, info, pts_here):
        p = self.p
        cert = {"class": list(cls), "prime": p}
        if info["residue_value"] == "undefined":
            cert["mechanism"] = "unclosed-undefined-chart"
            return False, cert
        invert = info["residue_value"][0] == "inf"
        rank = sd.rank
        if rank == 0:
            # Torsion-free rank-0 input: the class is the single point O.
            cert["mechanism"] = "rank-zero-finite"
            cert["bound"] = len(pts_here)
            return True, cert
        if len(pts_here) > 1:
            cert["mechanism"] = "unclosed-multiple-known"
            return False, cert

        basis_pts = self._kernel_basis_points(sd)
        # R0: a global integer representative of the class.
        R0_pts = []
        for ci, ctx in enumerate(self.contexts):
            gq = ctx.embedded_gens(self.gens)
            acc = ctx.zero_point()
            for n, G in zip(cls, gq):
                if n:
                    acc = acc.add(G.mul(n))
            R0_pts.append(acc)
        H0 = self._equations(self._chart_values(R0_pts, invert))
        shifted_pts = []
        Hs = []
        for per_prime in basis_pts:
            shifted = [R.add(B) for R, B in zip(R0_pts, per_prime)]
            shifted_pts.append(shifted)
            Hs.append(self._equations(self._chart_values(shifted, invert)))

        n_eq = len(H0)
        A = [H0[s][0] for s in range(n_eq)]
        knowns = [min(H0[s][1], *(h[s][1] for h in Hs)) if Hs else H0[s][1]
                  for s in range(n_eq)]
        D = [[(h[s][0] - H0[s][0]) for h in Hs] for s in range(n_eq)]  # n_eq x rank
        kmin = min(knowns) if knowns else self.prec
        if kmin < 6:
            raise PrecisionTooLow("precision eroded below certification level")

        def v(x, cap):
            if x % p**cap == 0:
                return cap
            return valuation(x % p**cap, p)

        cert["linear_data"] = {
            "A_valuations": [v(a, kmin) for a in A],
            "D_valuations": [[v(d, kmin) for d in row] for row in D],
        }

        bound = None
        if rank == 1:
            beta = min(v(row[0], kmin) for row in D)
            if beta <= 1:
                bound = 1
        elif rank == 2:
            best = None
            for s in range(n_eq):
                for t in range(s + 1, n_eq):
                    det = D[s][0] * D[t][1] - D[s][1] * D[t][0]
                    vd = v(det, kmin)
                    bmin = min(v(D[s][0], kmin), v(D[s][1], kmin),
                               v(D[t][0], kmin), v(D[t][1], kmin))
                    if vd <= 1 or (vd <= 2 and bmin >= 1):
                        best = (s, t, vd, bmin)
                        break
                if best:
                    break
            if best:
                bound = 1
                cert["unique_minor"] = list(best)
        if bound == 1 and len(pts_here) == 1:
            cert["mechanism"] = "closed-unique-linear"
            cert["bound"] = 1
            return True, cert
        if len(pts_here) == 0:
            # Try to empty the class modulo p^2, then modulo p^3 with the
            # quadratic (second-difference) terms.
            if self._empty_mod_p2(A, D, knowns):
                cert["mechanism"] = "closed-empty-mod-p2"
                cert["bound"] = 0
                return True, cert
            if self._empty_mod_p3(sd, R0_pts, basis_pts, shifted_pts,
                                  H0, Hs, invert, knowns):
                cert["mechanism"] = "closed-empty-mod-p3"
                cert["bound"] = 0
                return True, cert
            if bound == 1:
                cert["mechanism"] = "unclosed-phantom-possible"
                cert["bound"] = 1
                return False, cert
        cert["mechanism"] = "unclosed-degenerate-linear"
        return False, cert

    def _empty_mod_p3(self, sd, R0_pts, basis_pts, shifted_pts, H0, Hs,
                      invert, knowns):
        """No zero modulo p^3: in the Newton (binomial) form the class
        functions are H(n) = H(0) + sum_i D1_i(n_i) + cross terms, where
        the forward differences of order k carry valuation >= k; the
        terms of order 3 and higher vanish mod p^3, so solvability is a
        finite check over n mod p^2."""
        p = self.p
        rank = sd.rank
        mod3 = p**3
        # Second differences along each axis, and mixed ones for rank 2.
        H2 = {}
        h2_known = min(knowns) if knowns else self.prec
        for i, per_prime in enumerate(basis_pts):
            twice = [S.add(B) for S, B in zip(shifted_pts[i], per_prime)]
            H2[(i, i)] = self._equations(self._chart_values(twice, invert))
            for j in range(i + 1, rank):
                mixed = [S.add(B) for S, B in zip(shifted_pts[i], basis_pts[j])]
                H2[(i, j)] = self._equations(self._chart_values(mixed, invert))
        for vals in H2.values():
            h2_known = min(h2_known, *(k for _, k in vals))
        if any(k < 3 for k in knowns) or h2_known < 3:
            raise PrecisionTooLow("not enough digits for the mod-p^3 sieve")
        n_eq = len(H0)

        def Hval(vals, s):
            return vals[s][0]

        from itertools import product as iproduct
        for n in iproduct(range(p * p), repeat=rank):
            ok = True
            for s in range(n_eq):
                # Newton form: H(n) = H0 + sum_i (H(e_i)-H0) C(n_i,1)
                #   + sum_i (H(2e_i)-2H(e_i)+H0) C(n_i,2)
                #   + sum_{i<j} (H(e_i+e_j)-H(e_i)-H(e_j)+H0) n_i n_j  (mod p^3)
                tot = Hval(H0, s)
                for i in range(rank):
                    d1 = Hval(Hs[i], s) - Hval(H0, s)
                    tot += d1 * n[i]
                    d2 = Hval(H2[(i, i)], s) - 2 * Hval(Hs[i], s) + Hval(H0, s)
                    tot += d2 * (n[i] * (n[i] - 1) // 2)
                    for j in range(i + 1, rank):
                        dm = (Hval(H2[(i, j)], s) - Hval(Hs[i], s)
                              - Hval(Hs[j], s) + Hval(H0, s))
                        tot += dm * n[i] * n[j]
                if tot % mod3:
                    ok = False
                    break
            if ok:
                return False
        return True

    def _empty_mod_p2(self, A, D, knowns):
        """True if A + D n = 0 (mod p^2) has no solution n in Z_p^r."""
        p = self.p
        rank = len(D[0]) if D else 0
        if any(k < 2 for k in knowns):
            raise PrecisionTooLow("not enough digits for the mod-p^2 sieve")
        from itertools import product as iproduct
        # When every linear coefficient is divisible by p, the value mod p^2
        # only depends on n mod p.
        all_div = all(d % p == 0 for row in D for d in row)
        box = p if all_div else p * p
        for n in iproduct(range(box), repeat=rank):
            ok = True
            for s in range(len(A)):
                tot = A[s]
                for i in range(rank):
                    tot += D[s][i] * n[i]
                if tot % (p * p):
                    ok = False
                    break
            if ok:
                return False
        return True


_coprimality_cache = {}


def _reduction_orders(curve, field, bound):
    """[(q, idx, #E(F_q))] over primes of good reduction with a small
    residue field (degree 1 everywhere; degree 2 for q <= 60)."""
    key = (repr(curve.b), bound)
    if key not in _coprimality_cache:
        out = []
        from ..arith.roots import small_primes
        for q in small_primes(bound):
            if q < 5:
                continue
            cap = 2 if q <= 60 else 1
            try:
                for pr in primes_above(field, q, degree_cap=cap):
                    Ebar = reduce_curve(curve, pr)
                    out.append((q, pr.idx, curve_order_fq(Ebar)))
            except BadPrime:
                continue
        _coprimality_cache[key] = out
    return _coprimality_cache[key]


def certify_index_coprimality(curve, gens, ells, field):
    """Certify [E(K) : <gens> + tors] coprime to each prime in ells via the
    reduction sieve; returns ({ell: primes used}, uncertified list).

    Only primes where ell divides #E(F_q) carry information, so the scan
    is restricted to those, widening the search bound on demand.
    """
    from ..ec.reduction import non_divisibility_sieve
    certified = {}
    failed = []
    for ell in sorted(set(ells)):
        done = False
        for bound in (600, 2000, 5000):
            orders = _reduction_orders(curve, field, bound)
            specs = [(q, idx) for (q, idx, n) in orders if n % ell == 0]
            if not specs:
                continue
            result, used = non_divisibility_sieve(curve, gens, ell, specs)
            if result is True:
                certified[ell] = used
                done = True
                break
        if not done:
            failed.append(ell)
    return certified, failed


def rational_st_values(curve, psi, gens, known_points, primes=(11, 31),
                       prec=DEFAULT_PREC):
    """ChabautyOutcome over the given primes (each tried until Complete).

    known_points: list of (nvec or None, EcPoint, STValue) with rational
    psi-values; completeness means every surviving residue class is
    closed onto exactly these points.  Soundness of a closing prime p
    additionally requires the generator-subgroup index to be coprime to
    p and to every prime dividing the local group orders: {2, 3} come
    from the trusted descent data plus the 3-divisibility sieve, and the
    rest is certified here by the same sieve (else the prime is skipped).
    """
    certificates = []
    last_reason = ""
    for p in primes:
        for use_prec in (prec, 2 * prec):
            try:
                run = ChabautyRun(curve, psi, gens, known_points, p, use_prec)
                ells = {p}
                for ctx in run.contexts:
                    for ell in _prime_factors(ctx.order):
                        if ell not in (2, 3):
                            ells.add(ell)
                certified, failed = certify_index_coprimality(
                    curve, gens, ells, psi.field)
                if failed:
                    last_reason = f"p={p}: index coprimality uncertified for {failed}"
                    break
                closed, cert = run.run()
                cert["index_coprimality"] = {str(k): v for k, v in certified.items()}
            except PrecisionTooLow as e:
                last_reason = f"p={p}: precision too low ({e})"
                continue
            except BadPrime as e:
                last_reason = f"p={p}: bad prime ({e})"
                break
            cert["closing"] = closed
            certificates.append(cert)
            if closed:
                values = sorted({val for _, _, val in known_points},
                                key=lambda v: v.sort_key())
                witnesses = {}
                for nvec, P, val in known_points:
                    witnesses.setdefault(val.serialize(),
                                         _witness_name(nvec, P))
                return ChabautyOutcome(values=values, witnesses=witnesses,
                                       status="Complete",
                                       reason=f"all classes closed at p={p}",
                                       certificates=certificates)
            last_reason = f"p={p}: unclosed classes remain"
            break
    return ChabautyOutcome(values=[], witnesses={}, status="Inconclusive",
                           reason=last_reason, certificates=certificates)


def _prime_factors(n: int):
    from ..arith.rationals import factorize
    return set(factorize(n)) if n > 1 else set()


def _witness_name(nvec, P):
    if nvec is None:
        return f"constructed point {P!r}"
    terms = []
    for i, n in enumerate(nvec):
        if n:
            terms.append(f"{n}*g{i + 1}" if abs(n) != 1 else
                         (f"g{i + 1}" if n == 1 else f"-g{i + 1}"))
    return " + ".join(terms).replace("+ -", "- ") if terms else "O"
