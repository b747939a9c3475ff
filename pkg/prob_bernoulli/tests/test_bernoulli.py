# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""Tests for the Bernoulli-type polynomial and number families."""

import unittest
from fractions import Fraction

from sympy import bernoulli as sympy_bernoulli

from prob_bernoulli.bernoulli import (
	PolyFamily,
	SpecialFamily,
	bernoulli_numbers,
	evaluate_sequence,
	poly_sequence,
	scaled_bernoulli,
	special_sequence,
)
from prob_bernoulli.exactnum import LAMBDA, LambdaPoly
from prob_bernoulli.exceptions import DomainError, ValidationError
from prob_bernoulli.randvar import RandomVariable, fixture_variables
from prob_bernoulli.series import XPolynomial


class TestClassicalFamilies(unittest.TestCase):
	"""Bernoulli and degenerate Bernoulli polynomials."""

	def test_bernoulli_polynomial(self):
		"""B_2(x) = x^2 - x + 1/6."""
		B = poly_sequence(PolyFamily.BERN, N=2)
		self.assertEqual(B[2], XPolynomial((Fraction(1, 6), -1, 1)))
		self.assertEqual(evaluate_sequence(B, 0), [1, Fraction(-1, 2), Fraction(1, 6)])

	def test_numbers_match_sympy(self):
		"""B_1 = -1/2 here; sympy's sign convention for n = 1 varies by version."""
		numbers = bernoulli_numbers(12)
		self.assertEqual(numbers[1], Fraction(-1, 2))
		for n in (0, *range(2, 13)):
			value = sympy_bernoulli(n)
			self.assertEqual(numbers[n], Fraction(int(value.p), int(value.q)))

	def test_degenerate_bernoulli(self):
		"""beta_{1,lambda}(x) = x + (lambda - 1)/2, and lambda -> 0 recovers B_n."""
		beta = poly_sequence(PolyFamily.DEG_BERN, lam=LAMBDA, N=5)
		self.assertEqual(beta[1], XPolynomial((LambdaPoly((Fraction(-1, 2), Fraction(1, 2))), 1)))
		self.assertEqual(beta.eval_lambda(0).entries, poly_sequence(PolyFamily.BERN, N=5).entries)

	def test_higher_order(self):
		"""B_1^{(2)}(x) = x - 1."""
		B2 = poly_sequence(PolyFamily.BERN, r=2, N=2)
		self.assertEqual(B2[0], XPolynomial((1,)))
		self.assertEqual(B2[1], XPolynomial((-1, 1)))
		self.assertEqual(poly_sequence(PolyFamily.BERN, r=0, N=3)[3], XPolynomial.monomial(3))

	def test_scaled_bernoulli(self):
		self.assertEqual(scaled_bernoulli(2, 1, 1), poly_sequence(PolyFamily.BERN, N=2)[2])
		with self.assertRaises(ValidationError):
			scaled_bernoulli(-1, 1, 1)


class TestProbabilisticFamilies(unittest.TestCase):
	"""B_n^Y and beta_{n,lambda}^Y."""

	@classmethod
	def setUpClass(cls):
		cls.fixtures = fixture_variables()

	def test_constant_one_reduces(self):
		one = RandomVariable.constant_one()
		self.assertEqual(
			poly_sequence(PolyFamily.PROB_BERN, one, N=6).entries, poly_sequence(PolyFamily.BERN, N=6).entries
		)

	def test_unit_difference(self):
		"""s_n(1) - s_n(0) = delta_{n,1} in every family."""
		for Y in self.fixtures:
			for family, lam in ((PolyFamily.PROB_BERN, None), (PolyFamily.PROB_DEG_BERN, LAMBDA)):
				seq = poly_sequence(family, Y, lam, 1, 5)
				for n in range(6):
					with self.subTest(rv=Y.spec, family=family.value, n=n):
						self.assertEqual(seq[n].evaluate(1) - seq[n].evaluate(0), 1 if n == 1 else 0)

	def test_degrees(self):
		seq = poly_sequence(PolyFamily.PROB_BERN, self.fixtures[-1], N=6)
		self.assertEqual([entry.degree for entry in seq.entries], list(range(7)))

	def test_missing_parameters(self):
		with self.assertRaises(ValidationError):
			poly_sequence(PolyFamily.PROB_BERN, N=3)
		with self.assertRaises(ValidationError):
			poly_sequence(PolyFamily.DEG_BERN, N=3)
		with self.assertRaises(ValidationError):
			poly_sequence(PolyFamily.BERN, r=-1, N=3)


class TestSpecialSequences(unittest.TestCase):
	"""Number families read off single generating functions."""

	def test_second_kind(self):
		"""t/log(1 + t) = 1 + t/2 - t^2/12 + ..."""
		b = special_sequence(SpecialFamily.BERN_SECOND_KIND, N=2)
		self.assertEqual(list(b.entries), [1, Fraction(1, 2), Fraction(-1, 6)])

	def test_degenerate_second_kind_limit(self):
		b = special_sequence(SpecialFamily.DEG_BERN_SECOND_KIND, LAMBDA, N=6)
		plain = special_sequence(SpecialFamily.BERN_SECOND_KIND, N=6)
		self.assertEqual([v.evaluate(0) for v in b.entries], list(plain.entries))

	def test_frobenius_euler(self):
		"""H_1(u) = 1/(u - 1)."""
		H = special_sequence(SpecialFamily.FROBENIUS_EULER, r=1, u=3, N=3)
		self.assertEqual(H[0], 1)
		self.assertEqual(H[1], Fraction(1, 2))
		with self.assertRaises(DomainError):
			special_sequence(SpecialFamily.FROBENIUS_EULER, r=1, u=1, N=3)
		with self.assertRaises(ValidationError):
			special_sequence(SpecialFamily.FROBENIUS_EULER, r=1, N=3)

	def test_higher_order_numbers(self):
		"""B_1^{(r)} = -r/2."""
		self.assertEqual(bernoulli_numbers(2, r=3)[1], Fraction(-3, 2))
