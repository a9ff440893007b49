"""Curve arithmetic, flex models, torsion, reduction and sieves."""

from fractions import Fraction as F

import pytest

from x3y9z2.arith.localfield import FqField, factor_quartic_mod_p
from x3y9z2.arith.poly import MPoly
from x3y9z2.ec import (BadPrime, EcPoint, PlaneCubicWithFlex, WeierstrassCurve,
                       curve_order_fq, flex_to_weierstrass, j_invariant,
                       non_divisibility_sieve, reduce_at_prime, torsion_over_Q)
from x3y9z2.ec.reduction import primes_above, reduce_curve, reduce_point
from x3y9z2.ec.weierstrass import _classical_add


class TestGroupLaw:
    def test_identity(self):
        E = WeierstrassCurve(F(0), F(1))
        P = E.point(F(2), F(3))
        assert P + E.zero() == P
        assert E.zero() + P == P

    def test_order_six_point(self):
        E = WeierstrassCurve(F(0), F(1))
        P = E.point(F(2), F(3))
        assert not (3 * P).is_zero()
        assert (6 * P).is_zero()

    def test_exhaustive_vs_classical_over_fq(self):
        fq = FqField(11)
        for (a, b) in [(0, 6), (2, 0), (1, 3)]:
            E = WeierstrassCurve(fq.elem(a), fq.elem(b))
            pts = [E.zero()]
            for x in range(11):
                for y in range(11):
                    P = EcPoint(E, fq.elem(x), fq.elem(y), fq.one())
                    if P.on_curve():
                        pts.append(P)
            for P in pts:
                for Q in pts:
                    R = P + Q
                    assert R.on_curve()
                    assert R == _classical_add(P, Q)

    def test_associativity_200(self, rng):
        fq = FqField(101)
        E = WeierstrassCurve(fq.elem(3), fq.elem(7))
        pts = []
        x = 0
        while len(pts) < 24:
            x += 1
            rhs = fq.elem(x**3 + 3 * x + 7)
            for y in range(101):
                if fq.elem(y * y) == rhs:
                    pts.append(E.point(fq.elem(x), fq.elem(y)))
                    break
        for _ in range(200):
            P, Q, R = (rng.choice(pts) for _ in range(3))
            assert (P + Q) + R == P + (Q + R)

    def test_mul_matches_repeated_addition(self):
        E = WeierstrassCurve(F(0), F(-2))
        P = E.point(F(3), F(5))
        acc = E.zero()
        for n in range(21):
            assert acc == n * P
            acc = acc + P

    def test_table2_closure_over_K(self, mw_data):
        g1, g2 = mw_data.points(1)
        S = g1 + (-g2)
        assert S.on_curve()


class TestFlexModel:
    def _diagonal(self):
        # u^3 = s^3 + t^3 with flex (u, s, t) = (0, 1, -1)
        form = MPoly(3, {(3, 0, 0): F(1), (0, 3, 0): F(-1), (0, 0, 3): F(-1)})
        return PlaneCubicWithFlex(form, (F(0), F(1), F(-1)))

    def test_diagonal_cubic_j_zero(self):
        model = flex_to_weierstrass(self._diagonal())
        assert j_invariant(model.curve) == 0

    def test_roundtrip_points(self):
        model = flex_to_weierstrass(self._diagonal())
        # (u, s, t) points on u^3 = s^3 + t^3
        for pt in [(F(1), F(1), F(0)), (F(1), F(0), F(1)), (F(2), F(2), F(0))]:
            P = model.push_point(pt)
            assert P.on_curve()
            u, s, t = model.pull_point(P)
            # projectively equal
            assert u * pt[1] == s * pt[0] and s * pt[2] == t * pt[1]

    def test_flex_validation(self):
        form = MPoly(3, {(3, 0, 0): F(1), (0, 3, 0): F(-1), (0, 0, 3): F(-1)})
        with pytest.raises(ValueError):
            PlaneCubicWithFlex(form, (F(1), F(1), F(1)))  # not on the curve

    def test_group_structure_collinear_sum(self):
        # On u^3 = s^3 + 8t^3 the points (1:0:1), (0:1:2) and the flex
        # origin are collinear, so the Weierstrass images must sum to O.
        form = MPoly(3, {(3, 0, 0): F(1), (0, 3, 0): F(-1), (0, 0, 3): F(-8)})
        cubic = PlaneCubicWithFlex(form, (F(0), F(-2), F(1)))
        model = flex_to_weierstrass(cubic)
        P = model.push_point((F(1), F(1), F(0)))   # (u,s,t) with s/t = inf
        Q = model.push_point((F(2), F(0), F(1)))   # (u,s,t) = (2, 0, 1)
        assert (P + Q).is_zero()


class TestTorsion:
    def test_mordell_curves(self):
        assert torsion_over_Q(WeierstrassCurve(F(0), F(1)))[0] == "Z/6"
        assert torsion_over_Q(WeierstrassCurve(F(0), F(-432)))[0] == "Z/3"
        assert torsion_over_Q(WeierstrassCurve(F(0), F(16)))[0] == "Z/3"
        assert torsion_over_Q(WeierstrassCurve(F(0), F(7)))[0] == "trivial"

    def test_two_torsion(self):
        structure, pts = torsion_over_Q(WeierstrassCurve(F(0), F(-1728)))
        assert structure == "Z/2"
        assert pts[0].affine() == (F(12), F(0))

    def test_torsion_injects_at_good_primes(self):
        from x3y9z2.ec.torsion import count_points_fp
        structure, pts = torsion_over_Q(WeierstrassCurve(F(0), F(1)))
        order = len(pts) + 1
        for p in (5, 7, 11, 13):
            assert count_points_fp(0, 1, p) % order == 0


class TestReduction:
    def test_f_mod_11_shape_frozen(self):
        assert factor_quartic_mod_p([1, -2, 0, -2, 1], 11) == [
            ([7, 1], 1), ([8, 1], 1), ([1, 5, 1], 1)]

    def test_f_mod_31_two_quadratics(self):
        shape = [len(f) - 1 for f, _ in factor_quartic_mod_p([1, -2, 0, -2, 1], 31)]
        assert shape == [2, 2]

    def test_bad_primes_refused(self, mw_data):
        E = mw_data.curve(1)
        with pytest.raises(BadPrime):
            reduce_at_prime(E, None, 2, 0)   # 2 ramifies in Z[alpha]
        with pytest.raises(BadPrime):
            reduce_at_prime(E, None, 3, 0)

    def test_reduced_g1_order_frozen(self, mw_data, K):
        E = mw_data.curve(1)
        g1 = mw_data.points(1)[0]
        prs = primes_above(K, 11)
        pr = next(p for p in prs if p.degree == 1 and p.factor == [8, 1])  # alpha -> 3
        Ebar = reduce_curve(E, pr)
        assert curve_order_fq(Ebar) == 12
        Pbar = reduce_point(Ebar, E, g1, pr)
        order = next(d for d in range(1, 13) if (d * Pbar).is_zero())
        assert order == 12

    def test_homomorphism_200(self, mw_data, K, rng):
        E = mw_data.curve(1)
        g1, g2 = mw_data.points(1)
        pr = primes_above(K, 11)[0]
        Ebar = reduce_curve(E, pr)
        r1 = reduce_point(Ebar, E, g1, pr)
        r2 = reduce_point(Ebar, E, g2, pr)
        combos = {}
        for a in range(-4, 5):
            for b in range(-4, 5):
                combos[(a, b)] = (a * g1 + b * g2) if (a or b) else E.zero()
        for _ in range(200):
            a1, b1 = rng.randint(-2, 2), rng.randint(-2, 2)
            a2, b2 = rng.randint(-2, 2), rng.randint(-2, 2)
            lhs = reduce_point(Ebar, E, combos[(a1 + a2, b1 + b2)], pr)
            rhs = reduce_point(Ebar, E, combos[(a1, b1)], pr) + \
                reduce_point(Ebar, E, combos[(a2, b2)], pr)
            assert lhs == rhs

    def test_kernel_point_reduces_to_zero(self, mw_data, K):
        E = mw_data.curve(1)
        g1 = mw_data.points(1)[0]
        pr = next(p for p in primes_above(K, 11) if p.degree == 1)
        Ebar = reduce_curve(E, pr)
        V = 12 * g1
        assert reduce_point(Ebar, E, V, pr).is_zero()


class TestSieve:
    def test_table2_generators_not_3_divisible(self, mw_data, K):
        E = mw_data.curve(1)
        pts = mw_data.points(1)
        specs = [(q, i) for q in (5, 7, 11, 13, 23, 37, 59, 61) for i in range(4)]
        result, used = non_divisibility_sieve(E, pts, 3, specs)
        assert result is True
        assert used  # the certifying prime set is recorded

    def test_constructed_counterexample(self, mw_data):
        E = mw_data.curve(1)
        g1 = mw_data.points(1)[0]
        thrice = [3 * g1]
        specs = [(q, i) for q in (5, 7, 11, 13, 23, 37) for i in range(4)]
        result, used = non_divisibility_sieve(E, thrice, 3, specs)
        assert result is not True  # 3*g1 is 3-divisible everywhere
