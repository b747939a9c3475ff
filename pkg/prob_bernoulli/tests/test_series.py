# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""Tests for truncated EGF series, x-polynomials and the operators built on them."""

import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from prob_bernoulli.exactnum import LAMBDA, LambdaPoly
from prob_bernoulli.exceptions import (
	DomainError,
	InsufficientOrderError,
	ModeMismatchError,
	NonUnitConstantError,
	NotDeltaSeriesError,
	ValidationError,
)
from prob_bernoulli.series import (
	TruncatedSeries,
	XPolynomial,
	apply_operator,
	comp_inverse,
	degenerate_exp_series,
	degenerate_log1p_series,
	egf_compose,
	egf_exp_log,
	egf_mul,
	egf_reciprocal,
	exp_series,
	forward_diff,
	functional,
	integrate_unit,
	is_delta,
	log1p_series,
	operator_I,
	order_of,
	series_divide_by_t,
	series_multiply_by_t,
	series_one,
	series_power,
	series_scale,
	series_t,
	umbral_compose,
)

X2 = XPolynomial.monomial(2)
X3 = XPolynomial.monomial(3)

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=8)
series_strategy = st.lists(rationals, min_size=5, max_size=5).map(lambda cs: TruncatedSeries(tuple(cs)))
unit_series = st.tuples(rationals.filter(lambda c: c != 0), st.lists(rationals, min_size=4, max_size=4)).map(
	lambda pair: TruncatedSeries((pair[0], *pair[1]))
)


class TestXPolynomial(unittest.TestCase):
	"""Polynomials in x."""

	def test_evaluate_shift_scale(self):
		self.assertEqual(X2.evaluate(3), 9)
		self.assertEqual(X2.shift(1), XPolynomial((1, 2, 1)))
		self.assertEqual(XPolynomial((0, 1, 1)).scale(-1), XPolynomial((0, -1, 1)))

	def test_zero_polynomial(self):
		"""Trailing zeros vanish; the zero polynomial has degree -1."""
		zero = XPolynomial((0, 0, 0))
		self.assertTrue(zero.is_zero())
		self.assertEqual(zero.degree, -1)

	def test_calculus(self):
		self.assertEqual(X3.derivative(2), XPolynomial((0, 6)))
		self.assertEqual(X2.antiderivative(), XPolynomial((0, 0, 0, Fraction(1, 3))))
		with self.assertRaises(ValidationError):
			X2.derivative(-1)

	def test_lambda_coefficients(self):
		"""Shifting by lambda produces lambda coefficients that evaluate back."""
		shifted = X2.shift(LAMBDA)
		self.assertEqual(shifted.coefficient(0), LambdaPoly((0, 0, 1)))
		self.assertEqual(shifted.eval_lambda(1), XPolynomial((1, 2, 1)))


class TestSeriesAlgebra(unittest.TestCase):
	"""EGF products, powers, reciprocals and compositions."""

	def test_exp_identities(self):
		self.assertEqual(egf_mul(exp_series(6), exp_series(6, -1)), series_one(6))
		self.assertEqual(series_power(exp_series(5), 3), exp_series(5, 3))
		self.assertEqual(egf_reciprocal(exp_series(5)), exp_series(5, -1))

	def test_exp_log(self):
		self.assertEqual(egf_exp_log(exp_series(6), "log"), series_t(6))
		self.assertEqual(egf_exp_log(series_t(6), "exp"), exp_series(6))
		with self.assertRaises(DomainError):
			egf_exp_log(series_t(4), "log")
		with self.assertRaises(ValidationError):
			egf_exp_log(series_t(4), "sin")

	def test_composition_and_inverse(self):
		"""log(1 + t) inverts e^t - 1."""
		self.assertEqual(comp_inverse(exp_series(8) - 1), log1p_series(8))
		self.assertEqual(egf_compose(exp_series(6) - 1, log1p_series(6)), series_t(6))
		with self.assertRaises(NotDeltaSeriesError):
			comp_inverse(exp_series(4))
		with self.assertRaises(NotDeltaSeriesError):
			egf_compose(exp_series(4), exp_series(4))

	def test_degenerate_pair(self):
		"""The degenerate logarithm inverts the degenerate exponential."""
		e = degenerate_exp_series(LAMBDA, 6) - 1
		self.assertEqual(e.coeffs[2], LambdaPoly((1, -1)))
		self.assertEqual(comp_inverse(e), degenerate_log1p_series(LAMBDA, 6))

	def test_mode_mixing_refused(self):
		with self.assertRaises(ModeMismatchError):
			egf_mul(exp_series(3), degenerate_exp_series(LAMBDA, 3))

	def test_reciprocal_needs_unit(self):
		with self.assertRaises(NonUnitConstantError):
			egf_reciprocal(series_t(3))

	def test_divide_and_multiply_by_t(self):
		"""(e^t - 1)/t has EGF coefficients 1/(n + 1)."""
		window = series_divide_by_t(exp_series(4) - 1)
		self.assertEqual(window.coeffs, tuple(Fraction(1, n + 1) for n in range(4)))
		self.assertEqual(series_multiply_by_t(window), exp_series(4) - 1)
		with self.assertRaises(DomainError):
			series_divide_by_t(exp_series(4))

	def test_scale_and_classification(self):
		self.assertEqual(series_scale(exp_series(4), 2), exp_series(4, 2))
		self.assertTrue(is_delta(series_t(3)))
		self.assertFalse(is_delta(exp_series(3)))
		self.assertEqual(order_of(series_t(3)), 1)
		self.assertIsNone(order_of(TruncatedSeries((0, 0))))

	def test_truncation_errors(self):
		with self.assertRaises(InsufficientOrderError):
			series_t(0)
		with self.assertRaises(InsufficientOrderError):
			exp_series(2).coefficient(3)
		with self.assertRaises(ValidationError):
			TruncatedSeries(())

	@settings(max_examples=40, deadline=None)
	@given(series_strategy, series_strategy)
	def test_product_commutes(self, a, b):
		self.assertEqual(egf_mul(a, b), egf_mul(b, a))

	@settings(max_examples=40, deadline=None)
	@given(unit_series)
	def test_reciprocal_inverts(self, a):
		self.assertEqual(egf_mul(a, egf_reciprocal(a)), series_one(a.order))


class TestOperators(unittest.TestCase):
	"""Series acting on polynomials."""

	def test_apply_operator(self):
		"""t differentiates, e^t shifts."""
		self.assertEqual(apply_operator(series_t(3), X3), XPolynomial((0, 0, 3)))
		self.assertEqual(apply_operator(exp_series(4), X2), X2.shift(1))
		with self.assertRaises(InsufficientOrderError):
			apply_operator(exp_series(1), X2)

	def test_functional(self):
		self.assertEqual(functional(exp_series(3), X2), 1)

	def test_differences_and_integrals(self):
		self.assertEqual(forward_diff(X2), XPolynomial((1, 2)))
		self.assertEqual(forward_diff(X3, 1, 3), XPolynomial((6,)))
		self.assertEqual(integrate_unit(X2), Fraction(1, 3))
		self.assertEqual(operator_I(XPolynomial.x(), 1, 1), XPolynomial((Fraction(1, 2), 1)))

	def test_window_integral_matches_series(self):
		"""The unit window integral is the operator (e^t - 1)/t."""
		window = series_divide_by_t(exp_series(5) - 1)
		p = XPolynomial((3, -1, 0, 2))
		self.assertEqual(operator_I(p), apply_operator(window, p))

	def test_umbral_compose(self):
		sequence = [XPolynomial((1,)), XPolynomial((5, 1))]
		self.assertEqual(umbral_compose(XPolynomial((2, 3)), sequence), XPolynomial((17, 3)))
		with self.assertRaises(InsufficientOrderError):
			umbral_compose(X2, sequence)
