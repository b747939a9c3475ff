# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Per-distribution closed forms for expanding x^n.

For the Bernoulli, binomial, Poisson, geometric, exponential and gamma
variables, t/f_Y(t) applied to x^n and the expansion coefficients of x^n in
B_k^Y (or beta_{k,lambda}^Y) have explicit formulas in terms of Bernoulli
numbers of both kinds, Frobenius-Euler numbers and Stirling numbers. They are
evaluated here independently of the series engines so that the two can be
compared.
"""

import logging
from fractions import Fraction
from typing import Any

from prob_bernoulli.bernoulli import (
	PolyFamily,
	SpecialFamily,
	bernoulli_numbers,
	poly_sequence,
	special_sequence,
)
from prob_bernoulli.exactnum import RingValue, binomial, factorial, kronecker, stirling2
from prob_bernoulli.exceptions import DomainError, ValidationError
from prob_bernoulli.randvar import Kind, RandomVariable
from prob_bernoulli.series import XPolynomial, forward_diff
from prob_bernoulli.stirling import prob_s1_closed_form

logger = logging.getLogger(__name__)

SUPPORTED_KINDS = (Kind.BERNOULLI, Kind.BINOMIAL, Kind.POISSON, Kind.GEOMETRIC, Kind.EXPONENTIAL, Kind.GAMMA)


def _validate_request(Y: RandomVariable, n: int) -> None:
	if Y.kind not in SUPPORTED_KINDS:
		raise DomainError(f"no closed-form expansion for {Y.spec}")
	if n < 0:
		raise ValidationError(f"degree must be non-negative, got {n}")


def _second_kind(lam: Any, N: int) -> tuple:
	"""b_0..b_N, or the degenerate b_{l,lambda}."""
	if lam is None:
		return special_sequence(SpecialFamily.BERN_SECOND_KIND, None, 1, None, N).entries
	return special_sequence(SpecialFamily.DEG_BERN_SECOND_KIND, lam, 1, None, N).entries


def _bernoulli_polynomial(n: int) -> XPolynomial:
	return poly_sequence(PolyFamily.BERN, None, None, 1, max(n, 12))[n]


def _frobenius_euler(r: int, u: Fraction, N: int) -> tuple:
	return special_sequence(SpecialFamily.FROBENIUS_EULER, None, r, u, N).entries


def difference_at_zero(n: int, j: int) -> Fraction:
	"""Delta^j 0^n, taken from the monomial rather than from S_2."""
	return forward_diff(XPolynomial.monomial(n), 1, j).evaluate(0)


# t/f(t) applied to x^n


def t_over_f_monomial(Y: RandomVariable, n: int, lam: Any = None) -> XPolynomial:
	"""
	Closed form of (t/f_Y(t)) x^n, or of (t/f_{Y,lambda}(t)) x^n when lambda is given.

	Raises:
		DomainError: For kinds without a closed form
	"""
	_validate_request(Y, n)
	kind = Y.kind
	b = _second_kind(lam, n)
	result = XPolynomial()

	if kind in (Kind.BERNOULLI, Kind.BINOMIAL):
		m = Y.m if kind is Kind.BINOMIAL else 1
		for r in range(n + 1):
			polynomial = _bernoulli_polynomial(n - r).scale(m)
			weight: Any = Fraction(0)
			for l in range(r + 1):
				weight = weight + binomial(n, r) * Y.p ** (1 - l) * stirling2(r, l) * b[l]
			result = result + polynomial * weight
		return result / Fraction(m) ** (n - 1)

	if kind is Kind.POISSON:
		for l in range(n + 1):
			result = result + XPolynomial.monomial(n - l, binomial(n, l) * Y.alpha ** (1 - l) * b[l])
		return result

	if kind is Kind.GEOMETRIC:
		return _geometric_t_over_f(Y.p, n, lam)

	B = bernoulli_numbers(n)
	if kind is Kind.EXPONENTIAL:
		alpha = Y.alpha
		if lam is None:
			return _bernoulli_polynomial(n).scale(-1) * ((-1) ** n / alpha)
		for r in range(n + 1):
			weight = Fraction(0)
			for l in range(r + 1):
				weight = weight + binomial(n, r) * stirling2(r, l) * (-1) ** (l + n) * (alpha * lam) ** l * B[l]
			result = result + _bernoulli_polynomial(n - r).scale(-1) * weight
		return result / alpha

	alpha, beta = Y.alpha, Y.beta
	if lam is None:
		return _bernoulli_polynomial(n).scale(-alpha) * (alpha / beta * (-1 / alpha) ** n)
	for r in range(n + 1):
		weight = Fraction(0)
		for l in range(r + 1):
			weight = weight + binomial(n, r) * (-lam * beta) ** l * stirling2(r, l) * B[l]
		result = result + _bernoulli_polynomial(n - r).scale(-alpha) * weight
	return result * (alpha / beta * (-1 / alpha) ** n)


def _geometric_weights(p: Fraction, n: int, depth: int) -> list[RingValue]:
	"""
	w_r = sum_j C(n,j) H_j^{(r)}(p/(p-1)) c_j for r = 0..depth, where c_j is the
	integral weight 1 - p(1 - delta_{n,j}).
	"""
	u = p / (p - 1)
	weights = []
	for r in range(depth + 1):
		H = _frobenius_euler(r, u, n)
		total = Fraction(0)
		for j in range(n + 1):
			total = total + binomial(n, j) * H[j] * (1 - p * (1 - kronecker(n, j)))
		weights.append(total)
	return weights


def _geometric_term(p: Fraction, l: int, b_l: Any, weights: list) -> RingValue:
	inner = sum(((-1) ** r * binomial(l, r) * weights[r] for r in range(l + 1)), Fraction(0))
	return (p / (1 - p)) ** l * b_l * inner / factorial(l)


def _geometric_t_over_f(p: Fraction, n: int, lam: Any) -> XPolynomial:
	# the l-sum stops contributing after l = n
	b = _second_kind(lam, n)
	u = p / (p - 1)
	result = XPolynomial()
	for j in range(n + 1):
		if j < n:
			tail = _bernoulli_polynomial(n - j).shift(1) - XPolynomial.monomial(n - j - 1, p * (n - j))
		else:
			tail = XPolynomial.constant(1)
		weight: Any = Fraction(0)
		for l in range(n + 1):
			inner = sum(
				((-1) ** r * binomial(l, r) * _frobenius_euler(r, u, n)[j] for r in range(l + 1)), Fraction(0)
			)
			weight = weight + (p / (1 - p)) ** l * b[l] * inner / factorial(l)
		result = result + tail * (binomial(n, j) * weight)
	return result / p


def geometric_a0_partial_sums(p: Fraction, n: int, depth: int, lam: Any = None) -> list[RingValue]:
	"""
	Partial sums of the l-series for a_0 of x^n in the geometric basis.

	Entry L is (1/p) sum_{l <= L} of the l-th term. Terms with l > n vanish,
	so entries from L = n on are all equal to the exact a_0.
	"""
	if depth < 0:
		raise ValidationError(f"depth must be non-negative, got {depth}")
	weights = _geometric_weights(p, n, depth)
	b = _second_kind(lam, depth)
	sums = []
	total: Any = Fraction(0)
	for l in range(depth + 1):
		total = total + _geometric_term(p, l, b[l], weights)
		sums.append(total / p)
	return sums


# Coefficients of x^n


def a0_closed_form(Y: RandomVariable, n: int, lam: Any = None) -> RingValue:
	"""
	a_0 of x^n in B_k^Y (lambda absent) or beta_{k,lambda}^Y.

	Example:
		a0_closed_form(RandomVariable.exponential("3/2"), 4)  # 2/3
	"""
	_validate_request(Y, n)
	kind = Y.kind
	b = _second_kind(lam, n)

	if kind is Kind.BERNOULLI:
		return sum((Y.p ** (1 - l) * stirling2(n, l) * b[l] for l in range(n + 1)), Fraction(0))

	if kind is Kind.BINOMIAL:
		m = Fraction(Y.m)
		B = bernoulli_numbers(n + 1)
		total: Any = Fraction(0)
		for r in range(n + 1):
			top = n - r + 1
			boundary = _bernoulli_polynomial(top).evaluate(m) - B[top]
			for l in range(r + 1):
				total = total + binomial(n, r) * Y.p ** (1 - l) * stirling2(r, l) * b[l] * boundary / top
		return total / m**n

	if kind is Kind.POISSON:
		return sum(
			(binomial(n, l) * Y.alpha ** (1 - l) * b[l] / (n - l + 1) for l in range(n + 1)), Fraction(0)
		)

	if kind is Kind.GEOMETRIC:
		return geometric_a0_partial_sums(Y.p, n, n, lam)[-1]

	B = bernoulli_numbers(n + 1)
	if kind is Kind.EXPONENTIAL:
		alpha = Y.alpha
		if lam is None:
			return 1 / alpha
		total = Fraction(0)
		for r in range(n + 1):
			for l in range(r + 1):
				total = total + binomial(n, r) * stirling2(r, l) * (-1) ** (r - l) * (alpha * lam) ** l * B[l]
		return total / alpha

	alpha, beta = Y.alpha, Y.beta
	sign = (-1 / alpha) ** (n + 1)
	if lam is None:
		return alpha / beta * sign * (_bernoulli_polynomial(n + 1).evaluate(-alpha) - B[n + 1]) / (n + 1)
	total = Fraction(0)
	for r in range(n + 1):
		top = n - r + 1
		boundary = _bernoulli_polynomial(top).evaluate(-alpha) - B[top]
		for l in range(r + 1):
			total = total + binomial(n, r) * (-lam * beta) ** l * stirling2(r, l) * B[l] * boundary / top
	return alpha / beta * sign * total


def ak_closed_form(Y: RandomVariable, n: int, k: int, lam: Any = None) -> RingValue:
	"""
	a_k (k >= 1) of x^n: (1/k) sum_{j=k-1}^{n-1} S_1^Y(j, k-1) Delta^{j+1} 0^n / j!,
	with the first-kind numbers taken from their per-distribution formulas.
	"""
	_validate_request(Y, n)
	if not 1 <= k <= n:
		raise ValidationError(f"k must lie in 1..{n}, got {k}")
	total: Any = Fraction(0)
	for j in range(k - 1, n):
		total = total + prob_s1_closed_form(Y, lam, j, k - 1) * difference_at_zero(n, j + 1) / factorial(j)
	return total / k


def closed_form_expansion(Y: RandomVariable, n: int, lam: Any = None) -> tuple:
	"""a_0..a_n of x^n from the closed forms."""
	coefficients = [a0_closed_form(Y, n, lam)]
	coefficients.extend(ak_closed_form(Y, n, k, lam) for k in range(1, n + 1))
	logger.debug(f"closed-form expansion of x^{n} for {Y.spec}" + (" (degenerate)" if lam is not None else ""))
	return tuple(coefficients)
