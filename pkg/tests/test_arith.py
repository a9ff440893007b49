"""Exact-arithmetic substrate: factorization, algebras, p-adics, roots."""

import random
from fractions import Fraction as F

import pytest

from x3y9z2.arith import (
    AlgElem, EtaleAlgebra, NfElem, NotLiftable, NumberField, PadicNum,
    ZeroDivisorError, factor_deg_le4, padic_hensel_root,
)
from x3y9z2.arith.poly import MPoly, UPoly
from x3y9z2.arith.rationals import rational_reconstruct, valuation
from x3y9z2.arith.roots import (certify_non_cube, nf_cubic_character,
                                nf_nth_root, degree_one_character_data)

F5 = UPoly([0, 8, 0, 0, 1])          # x^4 + 8x (the split quartic)
FK = UPoly([1, -2, 0, -2, 1])        # x^4 - 2x^3 - 2x + 1 (irreducible)


def test_factor_split_quartic():
    factors = factor_deg_le4(F5)
    assert [(f.coeffs, m) for f, m in factors] == [
        ((F(0), F(1)), 1),             # x
        ((F(2), F(1)), 1),             # x + 2
        ((F(4), F(-2), F(1)), 1),      # x^2 - 2x + 4
    ]


def test_factor_irreducible_quartic():
    factors = factor_deg_le4(FK)
    assert len(factors) == 1 and factors[0][1] == 1
    assert factors[0][0] == FK


def test_factor_difference_of_squares():
    factors = factor_deg_le4(UPoly([-1, 0, 1]))
    assert [(f.coeffs, m) for f, m in factors] == [
        ((F(-1), F(1)), 1), ((F(1), F(1)), 1)]


def test_factor_multiplicities_and_roundtrip(rng):
    irreducibles = [UPoly([1, 1]), UPoly([-2, 0, 1]), UPoly([3, -1]), UPoly([1, 0, 1])]
    for _ in range(60):
        lead = F(rng.randint(1, 5), rng.randint(1, 3))
        f = UPoly([lead])
        deg = 0
        while True:
            h = rng.choice(irreducibles)
            if deg + h.degree > 4:
                break
            f = f * h
            deg += h.degree
            if deg == 4 or rng.random() < 0.3:
                break
        if f.degree < 1:
            continue
        factors = factor_deg_le4(f)
        prod = UPoly([f.leading])
        for h, m in factors:
            prod = prod * h**m
        assert prod == f


def test_quartic_two_quadratic_split():
    f = UPoly([-2, 0, 1]) * UPoly([1, 0, 1])  # (x^2-2)(x^2+1)
    factors = factor_deg_le4(f)
    assert sorted((tuple(h.coeffs), m) for h, m in factors) == [
        ((F(-2), F(0), F(1)), 1), ((F(1), F(0), F(1)), 1)]


def test_rat_canonical():
    assert F(6, -4) == F(-3, 2)
    assert F(6, -4).denominator == 2


class TestEtaleAlgebra:
    def setup_method(self):
        self.A = EtaleAlgebra(F5, "th")

    def test_component_maps(self):
        th = self.A.gen()
        assert self.A.component_map(0, th) == F(0)
        assert self.A.component_map(1, th) == F(-2)

    def test_norm_identity(self):
        one = self.A.one()
        assert one.norm() == 1
        assert one.inverse() == one

    def test_generator_norm_vs_resultant_oracle(self):
        g3 = self.A([1, F(1, 6), F(1, 6), F(1, 24)])
        assert g3.norm() == 1
        assert g3.norm_resultant() == 1

    def test_norm_multiplicativity_200(self, rng):
        for _ in range(200):
            a = self.A([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)])
            b = self.A([F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)])
            assert (a * b).norm() == a.norm() * b.norm()

    def test_mul_associative_commutative(self, rng):
        for _ in range(100):
            a, b, c = (self.A([rng.randint(-3, 3) for _ in range(4)]) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a

    def test_zero_divisor_reports_component(self):
        th = self.A.gen()
        with pytest.raises(ZeroDivisorError) as exc:
            th.inverse()  # theta vanishes on component 0 (theta -> 0)
        assert 0 in exc.value.components

    def test_norm_agrees_with_resultant_random(self, rng):
        for _ in range(50):
            a = self.A([F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)])
            assert a.norm() == a.norm_resultant()


class TestNumberField:
    def test_unit_norms(self, K):
        al = K.gen()
        assert al.norm() == 1
        assert (al + 1).norm() == 6
        assert (al - 2).norm() == -3

    def test_theta_minimal_polynomials(self, K):
        al = K.gen()
        assert (al * al - 2 * al).minimal_polynomial() == UPoly([-3, 0, 6, 0, 1])
        assert (al**3 - al**2 - al - 2).minimal_polynomial() == UPoly([-3, 0, -6, 0, 1])

    def test_inverse_roundtrip(self, K, rng):
        for _ in range(50):
            a = K([F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)])
            if not a:
                continue
            assert a * a.inverse() == K.one()


class TestPadic:
    def test_seven_adic_sqrt2(self):
        root = padic_hensel_root(UPoly([-2, 0, 1]), PadicNum.from_rational(3, 7, 12))
        assert root.digits(3) == [3, 1, 2]
        assert (root * root - 2).is_zero_at_precision()

    def test_linear_exact(self):
        root = padic_hensel_root(UPoly([-5, 1]), PadicNum.from_rational(5, 13, 10))
        assert root == PadicNum.from_rational(5, 13, 10)

    def test_not_liftable_when_derivative_vanishes(self):
        with pytest.raises(NotLiftable):
            padic_hensel_root(UPoly([-1, 0, 0, 1]), PadicNum(3, 0, 1, 1))

    def test_arithmetic_matches_integers_200(self, rng):
        p, N = 5, 12
        for _ in range(200):
            a = rng.randint(-10**6, 10**6)
            b = rng.randint(-10**6, 10**6)
            pa = PadicNum.from_rational(a, p, N)
            pb = PadicNum.from_rational(b, p, N)
            assert (pa + pb).residue(8) == (a + b) % p**8
            assert (pa * pb - a * b).is_zero_at_precision() or \
                (pa * pb).residue(8) == (a * b) % p**8

    def test_division(self):
        x = PadicNum.from_rational(F(7, 3), 5, 10)
        y = PadicNum.from_rational(F(1, 3), 5, 10)
        assert x / y == PadicNum.from_rational(7, 5, 10)


def test_rational_reconstruct_roundtrip(rng):
    m = 10**12 + 39
    for _ in range(100):
        num = rng.randint(-10**4, 10**4)
        den = rng.randint(1, 10**4)
        from math import gcd
        if gcd(num, den) != 1 or gcd(den, m) != 1:
            continue
        u = num * pow(den, -1, m) % m
        assert rational_reconstruct(u, m) == F(num, den)


class TestRoots:
    def test_cube_root_roundtrip(self, K, rng):
        for _ in range(10):
            b = K([rng.randint(-2, 2) for _ in range(4)])
            if not b:
                continue
            cube = b**3
            r = nf_nth_root(cube, 3)
            assert r is not None and r**3 == cube

    def test_generator_not_cube(self, K):
        assert nf_nth_root(K.gen(), 3) is None
        assert certify_non_cube(K.gen()) is not None

    def test_characters_kill_cubes(self, K):
        al = K.gen()
        cube = (al + 1) ** 3
        for q, r in degree_one_character_data(K, 80):
            assert nf_cubic_character(cube, q, r) in (0, None)

    def test_sixth_root(self, K):
        x = (K.gen() + 2)
        r = nf_nth_root(x**6, 6)
        assert r is not None and r**6 == x**6
