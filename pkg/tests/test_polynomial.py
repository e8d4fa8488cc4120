"""Exact polynomial arithmetic: ring axioms, homogeneity, division, evaluation."""

from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from eigensphere.errors import (
    DimensionMismatch,
    DivisionByZeroPolynomial,
    IndexOutOfRange,
    ZeroPolynomial,
)
from eigensphere.polynomial import GaussianRational, Polynomial, r_squared

from conftest import random_poly


def x(i, nvars=3):
    return Polynomial.variable(nvars, i)


class TestGaussianRational:
    def test_arithmetic(self):
        a = GaussianRational(Fraction(1, 2), Fraction(3))
        b = GaussianRational(Fraction(-2), Fraction(1, 3))
        assert a + b == GaussianRational(Fraction(-3, 2), Fraction(10, 3))
        assert a * b == GaussianRational(Fraction(-2), Fraction(-35, 6))
        assert (a / b) * b == a

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1) / GaussianRational()

    def test_conjugate_and_complex(self):
        g = GaussianRational(Fraction(3, 4), Fraction(-2))
        assert g.conjugate() == GaussianRational(Fraction(3, 4), Fraction(2))
        assert complex(g) == 0.75 - 2j

    def test_coercion(self):
        assert GaussianRational.of(3) == GaussianRational(Fraction(3))
        assert GaussianRational.of(Fraction(1, 7)).re == Fraction(1, 7)


class TestConstruction:
    def test_canonical_form_drops_zeros(self):
        p = Polynomial(2, {(1, 0): 1, (0, 1): 0})
        assert p.num_terms() == 1

    def test_wrong_exponent_length(self):
        with pytest.raises(DimensionMismatch):
            Polynomial(3, {(1, 0): 1})

    def test_variable_bounds(self):
        with pytest.raises(IndexOutOfRange):
            Polynomial.variable(3, 4)
        with pytest.raises(IndexOutOfRange):
            Polynomial.variable(3, 0)

    def test_immutability(self):
        p = x(1)
        with pytest.raises(AttributeError):
            p.nvars = 5


class TestRingOperations:
    def test_ring_axioms_random(self, rng):
        for _ in range(30):
            a = random_poly(rng)
            b = random_poly(rng)
            c = random_poly(rng)
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_scalar_coercion(self):
        p = x(1)
        assert 2 * p == p + p
        assert p - 1 == p + (-1)
        assert Fraction(1, 2) * (p + p) == p

    def test_pow(self):
        p = x(1) + x(2)
        assert p**0 == Polynomial.constant(3, 1)
        assert p**3 == p * p * p
        with pytest.raises(ValueError):
            p**-1

    def test_cross_dimension_rejected(self):
        with pytest.raises(DimensionMismatch):
            x(1, 3) + x(1, 4)


class TestStructure:
    def test_degree_and_homogeneity(self):
        p = x(1) ** 2 + x(2) * x(3)
        assert p.degree() == 2
        assert p.homogeneity() == 2
        q = x(1) + x(2) ** 2
        assert q.homogeneity() is None
        with pytest.raises(ZeroPolynomial):
            Polynomial.zero(3).degree()
        with pytest.raises(ZeroPolynomial):
            Polynomial.zero(3).homogeneity()

    def test_real_imag_parts(self):
        i = GaussianRational(0, 1)
        p = (x(1) + i * x(2)) ** 2
        u, v = p.real_imag_parts()
        assert u == x(1) ** 2 - x(2) ** 2
        assert v == 2 * x(1) * x(2)
        assert u + Polynomial.constant(3, i) * v == p

    def test_real_imag_recombine_random(self, rng):
        for _ in range(20):
            p = random_poly(rng)
            u, v = p.real_imag_parts()
            assert u.is_real() and v.is_real()
            i = Polynomial.constant(3, GaussianRational(0, 1))
            assert u + i * v == p

    def test_conjugate(self):
        i = GaussianRational(0, 1)
        p = x(1) + Polynomial.constant(3, i) * x(2)
        assert p.conjugate() == x(1) - Polynomial.constant(3, i) * x(2)
        assert p.conjugate().conjugate() == p

    def test_r_squared(self):
        r2 = r_squared(4)
        assert r2 == sum((x(i, 4) ** 2 for i in range(1, 5)), Polynomial.zero(4))


class TestDivision:
    def test_exact_quotient(self):
        p = x(1) ** 2 - x(2) ** 2
        d = x(1) + x(2)
        assert p.exact_divide(d) == x(1) - x(2)

    def test_inexact_returns_none(self):
        assert (x(1) ** 2 + x(2)).exact_divide(x(1) + x(2)) is None
        assert x(1).exact_divide(x(2)) is None

    def test_zero_dividend(self):
        assert Polynomial.zero(3).exact_divide(x(1)) == Polynomial.zero(3)

    def test_zero_divisor(self):
        with pytest.raises(DivisionByZeroPolynomial):
            x(1).exact_divide(Polynomial.zero(3))

    def test_roundtrip_random(self, rng):
        for _ in range(30):
            p = random_poly(rng)
            d = random_poly(rng, max_degree=2, terms=3)
            if d.is_zero():
                continue
            assert (p * d).exact_divide(d) == p


class TestEvaluation:
    def test_point_values(self):
        p = x(1) ** 2 + 2 * x(2) - 1
        assert p.evaluate([3.0, 0.5, 0.0]) == 9 + 1 - 1

    def test_dimension_check(self):
        with pytest.raises(DimensionMismatch):
            x(1).evaluate([1.0, 2.0])

    def test_scaling_law_homogeneous(self, rng):
        from conftest import random_homogeneous

        for k in (1, 2, 3, 4):
            p = random_homogeneous(rng, 3, k)
            if p.is_zero():
                continue
            v = rng.standard_normal(3)
            t = float(rng.uniform(0.5, 2.0))
            lhs = p.evaluate(t * v)
            rhs = t**k * p.evaluate(v)
            assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)

    def test_deterministic_summation(self, rng):
        p = random_poly(rng, terms=12)
        v = rng.standard_normal(3)
        first = p.evaluate(v)
        again = p.evaluate(list(v))
        assert first == again

    def test_complex_coefficients(self):
        i = GaussianRational(0, 1)
        p = Polynomial.constant(2, i) * x(1, 2)
        assert p.evaluate([2.0, 0.0]) == 2j
