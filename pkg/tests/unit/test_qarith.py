"""
Tests for exact q-arithmetic and expansions at q = e^h
"""
import random
from fractions import Fraction
from math import comb

import pytest
from sympy import Rational

from app.services.errors import FieldArithmeticError, PoleAtOneError
from app.services.qarith import (
    FieldElement,
    TruncatedSeries,
    expand_at_q_eq_exp_h,
    q_binomial,
    q_factorial,
    q_integer,
    q_power,
)


class TestQIntegers:
    def test_small_integers(self):
        assert q_integer(0).to_text() == "0"
        assert q_integer(1).to_text() == "1"
        assert q_integer(2).to_text() == "q + q^-1"
        assert q_integer(3).to_text() == "q^2 + 1 + q^-2"

    def test_negative(self):
        assert q_integer(-2) == -q_integer(2)

    def test_matches_quotient_definition(self):
        q = q_power(1, 1)
        for n in range(1, 7):
            expected = (q ** n - q ** -n) / (q - q.inverse())
            assert q_integer(n) == expected

    def test_symmetrizer_scales_exponent(self):
        assert q_integer(2, d_i=2).to_text() == "q^2 + q^-2"

    def test_binomial(self):
        assert q_binomial(4, 2).to_text() == "q^4 + q^2 + 2 + q^-2 + q^-4"
        assert q_binomial(5, 0) == 1
        assert q_binomial(5, 5) == 1

    def test_binomial_out_of_range(self):
        with pytest.raises(FieldArithmeticError):
            q_binomial(2, 3)

    def test_factorial(self):
        assert q_factorial(0) == 1
        assert q_factorial(3) == q_integer(2) * q_integer(3)
        with pytest.raises(FieldArithmeticError):
            q_factorial(-1)

    @pytest.mark.parametrize("n", range(0, 6))
    def test_classical_values(self, n):
        assert q_integer(n).evaluate_at_q1() == n


class TestFieldElement:
    def test_bar_invariance_of_q_integers(self):
        for n in range(1, 6):
            assert q_integer(n).bar() == q_integer(n)

    def test_bar_of_monomial(self):
        assert q_power(Rational(3, 2), 4).bar() == q_power(Rational(-3, 2), 4)

    def test_field_axioms(self):
        x = FieldElement.parse("q + 2", 1)
        y = FieldElement.parse("(q)/(q^2 + 1)", 1)
        z = q_integer(3)
        assert (x + y) * z == x * z + y * z
        assert x * x.inverse() == 1
        assert (x - x).is_zero()
        assert y / y == 1

    def test_division_by_zero(self):
        with pytest.raises(FieldArithmeticError):
            q_integer(2) / FieldElement.zero(1)

    def test_fractional_exponent_text(self):
        assert q_power(Rational(3, 2), 4).to_text() == "q^(3/2)"
        assert q_power(Rational(-3, 2), 4).to_text() == "q^(-3/2)"
        assert (-q_power(Rational(-3, 2), 4)).to_text() == "-q^(-3/2)"
        assert q_power(0, 6).to_text() == "1"

    def test_exponent_must_fit_root_order(self):
        with pytest.raises(FieldArithmeticError):
            q_power(Rational(1, 3), 2)

    @pytest.mark.parametrize("text,root_order", [
        ("q^(3/2)", 4),
        ("q^2 + 1 + q^-2", 1),
        ("(q)/(q^2 + 1)", 1),
        ("-2*q^(2/3)", 6),
    ])
    def test_canonical_text_reparses(self, text, root_order):
        x = FieldElement.parse(text, root_order)
        assert x.to_text() == text
        assert FieldElement.parse(x.to_text(), root_order) == x

    def test_parse_rejects_other_symbols(self):
        with pytest.raises(FieldArithmeticError):
            FieldElement.parse("q + t", 1)

    @pytest.mark.parametrize("text", [
        "__import__('os').getcwd() and q",
        "q**2",
        "q +  1",
        "(q)/(0)",
        "1/0",
        "exp(q)",
    ])
    def test_parse_accepts_only_canonical_text(self, text):
        with pytest.raises(FieldArithmeticError):
            FieldElement.parse(text, 1)

    def test_constants_hash_like_numbers(self):
        assert 1 in {FieldElement.one(1)}
        assert Fraction(3, 2) in {FieldElement.from_rational(Rational(3, 2), 4)}
        assert q_power(Rational(1, 2), 2) in {q_power(Rational(1, 2), 2).lift(4)}

    def test_mixed_root_orders(self):
        x = q_power(Rational(1, 2), 2) * q_power(Rational(1, 3), 3)
        assert x.root_order == 6
        assert x == q_power(Rational(5, 6), 6)

    def test_lift(self):
        x = q_integer(2, root_order=1).lift(4)
        assert x.root_order == 4
        assert x.to_text() == "q + q^-1"
        with pytest.raises(FieldArithmeticError):
            q_power(Rational(1, 2), 2).lift(3)

    def test_sqrt(self):
        assert q_power(1, 4).sqrt() == q_power(Rational(1, 2), 4)
        with pytest.raises(FieldArithmeticError):
            q_integer(2).sqrt()
        with pytest.raises(FieldArithmeticError):
            q_power(1, 1).sqrt()

    def test_monomial_parts(self):
        assert FieldElement.monomial(Rational(-3, 2), 4, coeff=-1).monomial_parts() == (-1, Rational(-3, 2))

    def test_pole_at_one(self):
        x = FieldElement.parse("(1)/(q - 1)", 1)
        with pytest.raises(PoleAtOneError):
            x.evaluate_at_q1()
        with pytest.raises(PoleAtOneError):
            expand_at_q_eq_exp_h(x)

    def test_evaluate_rational_function(self):
        assert FieldElement.parse("(q)/(q^2 + 1)", 1).evaluate_at_q1() == Rational(1, 2)


class TestExpansion:
    def test_q_integer_two(self):
        assert expand_at_q_eq_exp_h(q_integer(2), 2).coefficients == (2, 0, 1)

    def test_q(self):
        assert expand_at_q_eq_exp_h(q_power(1, 1), 2).coefficients == (1, 1, Rational(1, 2))

    def test_square_root_of_q(self):
        assert expand_at_q_eq_exp_h(q_power(Rational(1, 2), 2), 2).coefficients == (1, Rational(1, 2), Rational(1, 8))

    def test_expansion_is_multiplicative(self):
        x = q_integer(3)
        y = FieldElement.parse("(q)/(q^2 + 1)", 1)
        order = 4
        assert expand_at_q_eq_exp_h(x * y, order) == expand_at_q_eq_exp_h(x, order) * expand_at_q_eq_exp_h(y, order)

    def test_order_too_small(self):
        with pytest.raises(FieldArithmeticError):
            TruncatedSeries((Rational(1), Rational(0)))

    def test_series_division(self):
        a = TruncatedSeries((1, 1, Rational(1, 2)))
        assert (a / a).coefficients == (1, 0, 0)

    def test_mismatched_orders(self):
        with pytest.raises(FieldArithmeticError):
            TruncatedSeries.constant(1, 2) + TruncatedSeries.constant(1, 3)

    def test_str(self):
        assert str(TruncatedSeries((2, 0, 1))) == "2 + h^2"


def random_laurent(rng, root_order, positive=False):
    total = FieldElement.zero(root_order)
    for _ in range(rng.randint(1, 3)):
        coeff = Rational(rng.randint(1, 5), rng.randint(1, 3))
        if not positive and rng.random() < 0.5:
            coeff = -coeff
        total = total + q_power(Rational(rng.randint(-4, 4), root_order), root_order) * coeff
    return total


def random_element(rng, root_order=2):
    """A random quotient whose denominator has positive coefficients, so no pole at q = 1"""
    return random_laurent(rng, root_order) / random_laurent(rng, root_order, positive=True)


class TestRandomizedIdentities:
    @pytest.mark.parametrize("seed", range(8))
    def test_field_axioms(self, seed):
        rng = random.Random(seed)
        x, y, z = (random_element(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        for w in (x, y, z):
            if w:
                assert w * w.inverse() == 1
                assert (w / w).to_text() == "1"

    @pytest.mark.parametrize("seed", range(8))
    def test_expansion_is_a_ring_map(self, seed):
        rng = random.Random(100 + seed)
        x, y = random_element(rng), random_element(rng)
        order = 3
        ex, ey = expand_at_q_eq_exp_h(x, order), expand_at_q_eq_exp_h(y, order)
        assert expand_at_q_eq_exp_h(x * y, order) == ex * ey
        assert expand_at_q_eq_exp_h(x + y, order) == ex + ey

    @pytest.mark.parametrize("seed", range(4))
    def test_canonical_text_reparses(self, seed):
        rng = random.Random(200 + seed)
        x = random_element(rng, root_order=4)
        assert FieldElement.parse(x.to_text(), 4) == x


class TestClassicalLimits:
    @pytest.mark.parametrize("n", range(0, 9))
    def test_binomial_at_one(self, n):
        for k in range(n + 1):
            assert q_binomial(n, k).evaluate_at_q1() == comb(n, k)

    @pytest.mark.parametrize("n", range(0, 7))
    def test_factorial_and_binomial_are_bar_invariant(self, n):
        assert q_factorial(n).bar() == q_factorial(n)
        for k in range(n + 1):
            assert q_binomial(n, k).bar() == q_binomial(n, k)

    @pytest.mark.parametrize("d_i", [1, 2])
    def test_symmetrized_binomial_at_one(self, d_i):
        assert q_binomial(5, 2, d_i=d_i, root_order=2).evaluate_at_q1() == 10
