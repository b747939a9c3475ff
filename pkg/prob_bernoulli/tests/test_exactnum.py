# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Tests for exact coefficient arithmetic.

Covers rational parsing and formatting, LambdaPoly ring behavior, strict
mode mixing, lambda-power division and the combinatorial scalars.
"""

import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from prob_bernoulli.exactnum import (
	LAMBDA,
	LambdaPoly,
	binomial,
	divide_by_lambda_power,
	falling_factorial,
	format_rational,
	format_ring_value,
	harmonic,
	kronecker,
	parse_lambda,
	parse_rational,
	parse_ring_value,
	ring_arith,
	rising_factorial,
	stirling1,
	stirling2,
	to_rational,
)
from prob_bernoulli.exceptions import ModeMismatchError, ValidationError, ZeroDivisorError

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
lambda_polys = st.lists(rationals, max_size=4).map(lambda cs: LambdaPoly(tuple(cs)))


class TestRationalText(unittest.TestCase):
	"""Canonical rational text forms."""

	def test_parse_reduces(self):
		"""Parsing reduces to lowest terms."""
		self.assertEqual(parse_rational("-6/4"), Fraction(-3, 2))
		self.assertEqual(parse_rational(" 7 "), Fraction(7))

	def test_parse_rejects_inexact_text(self):
		"""Floats, zero denominators and garbage are refused."""
		for text in ("0.5", "1/0", "abc", "", "1/-2"):
			with self.subTest(text=text):
				with self.assertRaises(ValidationError):
					parse_rational(text)

	def test_format(self):
		"""Integers drop the denominator."""
		self.assertEqual(format_rational(Fraction(3, 1)), "3")
		self.assertEqual(format_rational(Fraction(-1, 2)), "-1/2")

	def test_to_rational(self):
		"""Only exact values coerce."""
		self.assertEqual(to_rational(LambdaPoly.constant(2)), 2)
		with self.assertRaises(ValidationError):
			to_rational(0.5)
		with self.assertRaises(ModeMismatchError):
			to_rational(LAMBDA)

	def test_ring_value_text(self):
		"""Lambda polynomials serialize as ascending coefficient lists."""
		value = LambdaPoly((Fraction(1), Fraction(-1)))
		self.assertEqual(format_ring_value(value), ["1", "-1"])
		self.assertEqual(parse_ring_value(["1", "-1"]), value)
		self.assertEqual(format_ring_value(Fraction(2, 3)), "2/3")

	def test_parse_lambda(self):
		"""'symbolic' selects the indeterminate."""
		self.assertEqual(parse_lambda("symbolic"), LAMBDA)
		self.assertEqual(parse_lambda("1/3"), Fraction(1, 3))


class TestLambdaPoly(unittest.TestCase):
	"""Polynomials in lambda."""

	def test_arithmetic(self):
		"""(1 + lambda)^2 expands."""
		self.assertEqual((1 + LAMBDA) ** 2, LambdaPoly((1, 2, 1)))
		self.assertEqual(LambdaPoly.constant(2), 2)
		self.assertEqual(str(LambdaPoly((1, -1))), "1 - λ")

	def test_trailing_zeros_stripped(self):
		self.assertEqual(LambdaPoly((1, 0, 0)).degree, 0)
		self.assertTrue(LambdaPoly((0,)).is_zero())

	def test_shift_down(self):
		"""Exact division by lambda powers."""
		self.assertEqual(LambdaPoly((0, 0, 3)).shift_down(2), LambdaPoly((3,)))
		with self.assertRaises(ZeroDivisorError):
			LambdaPoly((1, 1)).shift_down(1)

	def test_division_by_symbol_refused(self):
		with self.assertRaises(ValidationError):
			LambdaPoly((1, 1)) / LAMBDA

	def test_ring_arith_is_strict(self):
		"""Mixing modes through ring_arith fails."""
		self.assertEqual(ring_arith(LambdaPoly((1, -1)), LambdaPoly((1, 1)), "mul"), LambdaPoly((1, 0, -1)))
		with self.assertRaises(ModeMismatchError):
			ring_arith(LAMBDA, Fraction(1), "add")
		with self.assertRaises(ZeroDivisorError):
			ring_arith(LAMBDA, Fraction(0), "div_by_rational")

	@settings(max_examples=50, deadline=None)
	@given(lambda_polys, lambda_polys, lambda_polys)
	def test_distributive(self, a, b, c):
		"""Multiplication distributes over addition."""
		self.assertEqual((a + b) * c, a * c + b * c)

	@settings(max_examples=50, deadline=None)
	@given(lambda_polys, lambda_polys, rationals)
	def test_evaluation_is_a_homomorphism(self, a, b, at):
		"""Evaluating a product equals the product of evaluations."""
		self.assertEqual((a * b).evaluate(at), a.evaluate(at) * b.evaluate(at))
		self.assertEqual((a - b).evaluate(at), a.evaluate(at) - b.evaluate(at))


class TestCombinatorics(unittest.TestCase):
	"""Scalar helpers."""

	def test_falling_and_rising(self):
		self.assertEqual(falling_factorial(5, 3), 60)
		self.assertEqual(falling_factorial(1, 2, LAMBDA), LambdaPoly((1, -1)))
		self.assertEqual(falling_factorial(7, 0), 1)
		self.assertEqual(rising_factorial(Fraction(5, 2), 2), Fraction(35, 4))

	def test_divide_by_lambda_power(self):
		"""Rational lambda divides; symbolic lambda shifts."""
		self.assertEqual(divide_by_lambda_power(Fraction(1), 2, Fraction(1, 3)), 9)
		self.assertEqual(divide_by_lambda_power(LambdaPoly((0, 2)), 1, LAMBDA), 2)
		with self.assertRaises(ZeroDivisorError):
			divide_by_lambda_power(Fraction(1), 1, Fraction(0))

	def test_small_values(self):
		self.assertEqual(binomial(5, 2), 10)
		self.assertEqual(binomial(3, 5), 0)
		self.assertEqual(harmonic(3), Fraction(11, 6))
		self.assertEqual(stirling2(4, 2), 7)
		self.assertEqual(stirling1(3, 1), 2)
		self.assertEqual(stirling1(3, 2), -3)
		self.assertEqual(kronecker(2, 2), 1)
		self.assertEqual(kronecker(2, 1), 0)
