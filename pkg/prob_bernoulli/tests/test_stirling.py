# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Tests for the Stirling families.

Classical tables are compared with sympy; probabilistic tables with the
direct moment formula, the per-distribution first-kind closed forms and the
Y = 1 and lambda = 0 reductions.
"""

import unittest
from fractions import Fraction

from sympy.functions.combinatorial.numbers import stirling

from prob_bernoulli.exactnum import LAMBDA, LambdaPoly
from prob_bernoulli.exceptions import InsufficientOrderError, ValidationError
from prob_bernoulli.randvar import RandomVariable, fixture_variables
from prob_bernoulli.stirling import (
	Family,
	build_table,
	check_orthogonality,
	falling_factorial_expansions,
	falling_factorial_polynomial,
	family_for,
	prob_s1_closed_form,
	prob_s2_direct,
)


class TestClassicalTables(unittest.TestCase):
	"""S1, S2 and their degenerate versions."""

	def test_matches_sympy(self):
		s2 = build_table(Family.S2, nmax=8)
		s1 = build_table(Family.S1, nmax=8)
		for n in range(9):
			for k in range(n + 1):
				self.assertEqual(s2.value(n, k), int(stirling(n, k)))
				self.assertEqual(s1.value(n, k), int(stirling(n, k, kind=1, signed=True)))

	def test_known_values(self):
		self.assertEqual(build_table(Family.S2, nmax=4).value(4, 2), 7)
		self.assertEqual(build_table(Family.S1, nmax=3).value(3, 1), 2)
		self.assertEqual(build_table(Family.S2DEG, lam=LAMBDA, nmax=2).value(2, 1), LambdaPoly((1, -1)))

	def test_lambda_zero_limit(self):
		table = build_table(Family.S1DEG, lam=LAMBDA, nmax=6).eval_lambda(0)
		self.assertEqual(table.entries, build_table(Family.S1, nmax=6).entries)

	def test_value_bounds(self):
		table = build_table(Family.S2, nmax=3)
		self.assertEqual(table.value(2, 3), 0)
		with self.assertRaises(InsufficientOrderError):
			table.value(4, 1)

	def test_family_lookup(self):
		self.assertIs(family_for(2, "prob"), Family.S2PROB)
		self.assertIs(family_for(1, "prob-degenerate"), Family.S1PROBDEG)
		self.assertIs(Family.S2PROBDEG.partner, Family.S1PROBDEG)
		self.assertIs(Family.S2PROBDEG.plain, Family.S2PROB)
		with self.assertRaises(ValidationError):
			family_for(3, "prob")
		with self.assertRaises(ValidationError):
			family_for(1, "weird")

	def test_missing_parameters(self):
		with self.assertRaises(ValidationError):
			build_table(Family.S2PROB, nmax=3)
		with self.assertRaises(ValidationError):
			build_table(Family.S2DEG, nmax=3)


class TestProbabilisticTables(unittest.TestCase):
	"""S2^Y, S1^Y and the degenerate versions."""

	@classmethod
	def setUpClass(cls):
		cls.fixtures = fixture_variables()
		cls.exponential = RandomVariable.exponential("3/2")

	def test_diagonal(self):
		"""S2^Y(4,4) = E[Y]^4."""
		table = build_table(Family.S2PROB, self.exponential, None, 4)
		self.assertEqual(table.value(4, 4), Fraction(16, 81))

	def test_constant_one_reduces(self):
		one = RandomVariable.constant_one()
		self.assertEqual(build_table(Family.S2PROB, one, None, 6).entries, build_table(Family.S2, nmax=6).entries)
		self.assertEqual(
			build_table(Family.S1PROBDEG, one, LAMBDA, 5).entries,
			build_table(Family.S1DEG, None, LAMBDA, 5).entries,
		)

	def test_direct_formula(self):
		for Y in self.fixtures:
			table = build_table(Family.S2PROB, Y, None, 5)
			for n in range(6):
				for k in range(n + 1):
					with self.subTest(rv=Y.spec, n=n, k=k):
						self.assertEqual(prob_s2_direct(Y, n, k), table.value(n, k))

	def test_direct_formula_degenerate(self):
		Y = self.fixtures[0]
		table = build_table(Family.S2PROBDEG, Y, LAMBDA, 4)
		for n in range(5):
			for k in range(n + 1):
				self.assertEqual(prob_s2_direct(Y, n, k, LAMBDA), table.value(n, k))

	def test_first_kind_closed_forms(self):
		"""Per-distribution first-kind formulas match the tables, plain and symbolic."""
		for Y in self.fixtures:
			for lam, family in ((None, Family.S1PROB), (LAMBDA, Family.S1PROBDEG)):
				table = build_table(family, Y, lam, 5)
				for n in range(6):
					for k in range(n + 1):
						with self.subTest(rv=Y.spec, lam=str(lam), n=n, k=k):
							self.assertEqual(prob_s1_closed_form(Y, lam, n, k), table.value(n, k))

	def test_first_kind_examples(self):
		self.assertEqual(prob_s1_closed_form(self.exponential, None, 2, 1), -3)
		bernoulli = RandomVariable.bernoulli("1/2")
		self.assertEqual(prob_s1_closed_form(bernoulli, None, 3, 1), 16)

	def test_orthogonality(self):
		for Y in self.fixtures:
			with self.subTest(rv=Y.spec):
				report = check_orthogonality(
					build_table(Family.S2PROBDEG, Y, LAMBDA, 5), build_table(Family.S1PROBDEG, Y, LAMBDA, 5), seed=3
				)
				self.assertTrue(report.passed, report.failures[:1])
				self.assertGreater(report.checked, 0)

	def test_orthogonality_needs_a_pair(self):
		with self.assertRaises(ValidationError):
			check_orthogonality(build_table(Family.S2, nmax=3), build_table(Family.S1DEG, None, LAMBDA, 3))
		with self.assertRaises(ValidationError):
			check_orthogonality(build_table(Family.S2, nmax=3), build_table(Family.S1, nmax=4))


class TestFallingFactorials(unittest.TestCase):
	"""Basis changes between powers and falling factorials."""

	def test_polynomial(self):
		self.assertEqual(falling_factorial_polynomial(3).coeffs, (0, 2, -3, 1))

	def test_expansions(self):
		for lam in (LAMBDA, Fraction(1, 3)):
			records = falling_factorial_expansions(6, lam)
			self.assertEqual(len(records), 4 * 7)
			self.assertTrue(all(record["passed"] for record in records))
