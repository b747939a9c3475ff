# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Expansion of arbitrary polynomials in Bernoulli-type bases.

Given p of degree n, every engine here returns a_0..a_n with
p(x) = sum_k a_k s_k(x), where s_k is one of the PolySequence families.

The probabilistic engines work from f(t), the compositional inverse of
log M(t): the basis is the Sheffer sequence for ((e^t - 1)/f(t))^r and f(t),
so a_k = <((e^t - 1)/f(t))^r f(t)^k | p> / k!. The classical engines are the
Y = 1 specializations written with integrals, window integrals and lambda
differences, and ``oracle_expand`` solves the triangular system directly.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from prob_bernoulli.bernoulli import PolyFamily, PolySequence, poly_sequence, scaled_bernoulli
from prob_bernoulli.exactnum import (
	RingValue,
	binomial,
	divide_by_lambda_power,
	factorial,
	stirling2,
	to_rational,
)
from prob_bernoulli.exceptions import InsufficientOrderError, ProbBernoulliError, ValidationError
from prob_bernoulli.randvar import RandomVariable, mgf_series
from prob_bernoulli.series import (
	TruncatedSeries,
	XPolynomial,
	apply_operator,
	comp_inverse,
	egf_exp_log,
	egf_reciprocal,
	forward_diff,
	integrate_unit,
	operator_I,
	series_divide_by_t,
	series_power,
	umbral_compose,
)
from prob_bernoulli.settings import get_settings
from prob_bernoulli.stirling import Family, build_table

logger = logging.getLogger(__name__)


class Method(str, Enum):
	PROB_FORM1 = "prob_form1"
	PROB_FORM2 = "prob_form2"
	PROB_FORM3 = "prob_form3"
	PROB_DEGENERATE_FORM1 = "prob_degenerate_form1"
	PROB_DEGENERATE_FORM2 = "prob_degenerate_form2"
	PROB_DEGENERATE_FORM3 = "prob_degenerate_form3"
	HIGHER_PROB = "higher_prob"
	HIGHER_PROB_DEGENERATE = "higher_prob_degenerate"
	CLASSICAL_INTEGRAL = "classical_integral"
	DEGENERATE_UMBRAL = "degenerate_umbral"
	DEGENERATE_DIFFERENCE = "degenerate_difference"
	HIGHER_DEGENERATE = "higher_degenerate"
	HIGHER_CLASSICAL = "higher_classical"
	ORACLE = "oracle"


CLASSICAL_VARIANTS = ("integral", "degenerate_umbral", "degenerate_difference", "higher_degenerate", "higher_classical")


class OperatorFormsDisagree(ProbBernoulliError):
	"""Two computations of the same operator image differ; signals an engine bug."""


@dataclass(frozen=True)
class BasisExpansion:
	"""Coefficients a_0..a_n of p in the basis described by family, Y, lambda and r."""

	family: PolyFamily
	Y: RandomVariable | None
	lam: RingValue | None
	r: int
	coefficients: tuple
	method: Method

	def __len__(self) -> int:
		return len(self.coefficients)

	def basis(self) -> PolySequence:
		return poly_sequence(self.family, self.Y, self.lam, self.r, len(self.coefficients) - 1)

	def eval_lambda(self, at: Any) -> "BasisExpansion":
		values = tuple(c.evaluate(at) if hasattr(c, "evaluate") else c for c in self.coefficients)
		return BasisExpansion(self.family, self.Y, Fraction(at), self.r, values, self.method)


def _validate_polynomial(p: Any) -> XPolynomial:
	if not isinstance(p, XPolynomial):
		raise ValidationError(f"expected an XPolynomial, got {type(p).__name__}")
	return p


def _validate_form(form: int) -> None:
	if form not in (1, 2, 3):
		raise ValidationError(f"coefficient form must be 1, 2 or 3, got {form}")


def _degree(p: XPolynomial) -> int:
	return max(p.degree, 0)


def _default_order(p: XPolynomial, r: int) -> int:
	return _degree(p) + r + get_settings().truncation_slack


def inverse_log_moment_series(Y: RandomVariable, lam: Any, N: int) -> TruncatedSeries:
	"""f(t), the compositional inverse of log E[e^{Yt}] (or log E[e_lambda^Y(t)]), to order N."""
	return comp_inverse(egf_exp_log(mgf_series(Y, lam, N), "log"))


def t_over_f(f: TruncatedSeries) -> TruncatedSeries:
	return egf_reciprocal(series_divide_by_t(f))


def delta_at_zero(p: XPolynomial, order: int, step: Any = 1) -> RingValue:
	"""Delta_step^order p evaluated at 0."""
	return forward_diff(p, step, order).evaluate(0)


def _divide_polynomial(q: XPolynomial, k: int, lam: Any) -> XPolynomial:
	return XPolynomial(tuple(divide_by_lambda_power(c, k, lam) for c in q.coeffs))


def _check_agree(values: list, label: str) -> Any:
	first = values[0]
	for other in values[1:]:
		if other != first:
			logger.error(f"{label}: {first} != {other}")
			raise OperatorFormsDisagree(f"{label} forms disagree")
	return first


# First-order probabilistic bases


def _first_order_coefficient(form: int, p: XPolynomial, s1, r: int, n: int) -> RingValue:
	"""a_{r+1} from the first-kind table s1, before the 1/(r+1) factor."""
	total: Any = Fraction(0)
	if form == 1:
		for j in range(r, n):
			total = total + s1(j, r) * delta_at_zero(p, j + 1) / factorial(j)
	elif form == 2:
		for k in range(r, n):
			dp_k = delta_at_zero(p.derivative(k), 1)
			if dp_k == 0:
				continue
			for j in range(r, k + 1):
				total = total + stirling2(k, j) * s1(j, r) * dp_k / factorial(k)
	else:
		for j in range(r, n):
			inner = sum(
				((-1) ** (j + 1 - k) * binomial(j + 1, k) * p.evaluate(k) for k in range(j + 2)), Fraction(0)
			)
			total = total + s1(j, r) * inner / factorial(j)
	return total


def _expand_first_order(p: XPolynomial, Y: RandomVariable, lam: Any, form: int) -> tuple:
	_validate_form(form)
	n = _degree(p)
	f = inverse_log_moment_series(Y, lam, _default_order(p, 1))
	coefficients = [integrate_unit(apply_operator(t_over_f(f), p))]

	family = Family.S1PROB if lam is None else Family.S1PROBDEG
	s1 = build_table(family, Y, lam, n).value
	for r in range(n):
		coefficients.append(_first_order_coefficient(form, p, s1, r, n) / (r + 1))
	return tuple(coefficients)


def expand_prob(p: XPolynomial, Y: RandomVariable, form: int = 1) -> BasisExpansion:
	"""
	Expand p in the probabilistic Bernoulli polynomials B_k^Y.

	a_0 = integral over [0, 1] of (t/f(t)) p, and a_{r+1} by one of three
	equivalent sums over S_1^Y: forward differences at 0 (form 1), differences
	of derivatives weighted by S_2 (form 2), or point values p(0..n) (form 3).

	Args:
		p: Polynomial to expand
		Y: Random variable with E[Y] != 0
		form: 1, 2 or 3

	Returns:
		Expansion with deg p + 1 coefficients; a constant c gives [c E[Y]]

	Raises:
		ValidationError: For a bad form or a non-polynomial input

	Example:
		expand_prob(XPolynomial((0, 0, 1)), RandomVariable.constant_one()).coefficients  # (1/3, 1, 1)
	"""
	p = _validate_polynomial(p)
	coefficients = _expand_first_order(p, Y, None, form)
	method = (Method.PROB_FORM1, Method.PROB_FORM2, Method.PROB_FORM3)[form - 1]
	return BasisExpansion(PolyFamily.PROB_BERN, Y, None, 1, coefficients, method)


def expand_prob_degenerate(p: XPolynomial, Y: RandomVariable, lam: Any, form: int = 1) -> BasisExpansion:
	"""Degenerate analogue of ``expand_prob``, in the basis beta_{k,lambda}^Y."""
	p = _validate_polynomial(p)
	if lam is None:
		raise ValidationError("the degenerate expansion needs lambda")
	coefficients = _expand_first_order(p, Y, lam, form)
	method = (Method.PROB_DEGENERATE_FORM1, Method.PROB_DEGENERATE_FORM2, Method.PROB_DEGENERATE_FORM3)[form - 1]
	return BasisExpansion(PolyFamily.PROB_DEG_BERN, Y, lam, 1, coefficients, method)


# Higher-order probabilistic bases


def _window_series(a: int, order: int) -> TruncatedSeries:
	"""((e^t - 1)/t)^a with EGF coefficients a! l! S_2(l + a, a) / (l + a)!."""
	return TruncatedSeries(
		tuple(
			Fraction(factorial(a) * factorial(l) * stirling2(l + a, a), factorial(l + a)) for l in range(order + 1)
		)
	)


def g_power_forms(p: XPolynomial, tf: TruncatedSeries, a: int) -> tuple[XPolynomial, XPolynomial]:
	"""
	g(t)^a p with g(t) = (e^t - 1)/f(t), computed two ways.

	The first applies (t/f(t))^a and then a iterated unit-window integrals;
	the second multiplies (t/f(t))^a by the S_2-weighted window series.
	"""
	scaled = apply_operator(series_power(tf, a), p)
	integrated = operator_I(scaled, 1, a)
	weighted = apply_operator(_window_series(a, tf.order).lift(tf.mode), scaled)
	return integrated, weighted


def f_power(p: XPolynomial, f_over_t: TruncatedSeries, m: int) -> XPolynomial:
	"""f(t)^m p = (f(t)/t)^m p^{(m)}."""
	return apply_operator(series_power(f_over_t, m), p.derivative(m))


def expand_higher(p: XPolynomial, Y: RandomVariable, lam: Any = None, r: int = 1) -> BasisExpansion:
	"""
	Expand p in the order-r probabilistic (degenerate) Bernoulli polynomials.

	For k < r, a_k = Delta^k(g^{r-k} p)(0) / k!; for k >= r,
	a_k = Delta^r(f^{k-r} p)(0) / k!. When r > deg p only the first branch
	occurs. Lambda selects the degenerate basis.

	Raises:
		ValidationError: If r is negative
		OperatorFormsDisagree: If the two g(t)^a computations differ
	"""
	p = _validate_polynomial(p)
	if r < 0:
		raise ValidationError(f"order r must be non-negative, got {r}")
	n = _degree(p)
	f = inverse_log_moment_series(Y, lam, _default_order(p, r))
	tf = t_over_f(f)
	ft = series_divide_by_t(f)

	coefficients = []
	for k in range(n + 1):
		if k < r:
			q = _check_agree(list(g_power_forms(p, tf, r - k)), f"g(t)^{r - k} p")
			coefficients.append(delta_at_zero(q, k) / factorial(k))
		else:
			coefficients.append(delta_at_zero(f_power(p, ft, k - r), r) / factorial(k))

	family = PolyFamily.PROB_BERN if lam is None else PolyFamily.PROB_DEG_BERN
	method = Method.HIGHER_PROB if lam is None else Method.HIGHER_PROB_DEGENERATE
	logger.debug(f"expanded degree {n} polynomial in order {r} {family.value} basis for {Y.spec}")
	return BasisExpansion(family, Y, lam, r, tuple(coefficients), method)


# Classical (Y = 1) specializations


def _scaled_bernoulli_basis(n: int, a: int, lam: Any) -> list[XPolynomial]:
	return [scaled_bernoulli(i, a, lam) for i in range(n + 1)]


def _degenerate_a0(p: XPolynomial, lam: Any) -> RingValue:
	return integrate_unit(umbral_compose(p, _scaled_bernoulli_basis(_degree(p), 1, lam)))


def _classical_integral(p: XPolynomial) -> tuple:
	return tuple(integrate_unit(p.derivative(k)) / factorial(k) for k in range(_degree(p) + 1))


def _degenerate_umbral(p: XPolynomial, lam: Any) -> tuple:
	n = _degree(p)
	s1 = build_table(Family.S1DEG, None, lam, n).value
	coefficients = [_degenerate_a0(p, lam)]
	for r in range(n):
		coefficients.append(_first_order_coefficient(1, p, s1, r, n) / (r + 1))
	return tuple(coefficients)


def _degenerate_difference(p: XPolynomial, lam: Any) -> tuple:
	n = _degree(p)
	dp = forward_diff(p)
	coefficients = [_degenerate_a0(p, lam)]
	for r in range(n):
		scale = factorial(r + 1)
		by_difference = divide_by_lambda_power(delta_at_zero(dp, r, lam), r, lam) / scale
		by_points = sum(
			((-1) ** (r - j) * binomial(r, j) * dp.evaluate(j * lam) for j in range(r + 1)), Fraction(0)
		)
		by_points = divide_by_lambda_power(by_points, r, lam) / scale
		by_derivatives = Fraction(0)
		for l in range(r, n + 1):
			by_derivatives = by_derivatives + stirling2(l, r) * lam ** (l - r) * delta_at_zero(
				p.derivative(l), 1
			) / factorial(l)
		by_derivatives = by_derivatives / (r + 1)
		coefficients.append(_check_agree([by_difference, by_points, by_derivatives], f"a_{r + 1}"))
	return tuple(coefficients)


def degenerate_f_power_forms(p: XPolynomial, lam: Any, m: int) -> list[XPolynomial]:
	"""
	((e^{lambda t} - 1)/lambda)^m p by lambda-window integrals, lambda
	differences and the S_2 series.
	"""
	by_windows = _divide_polynomial(operator_I(p.derivative(m), lam, m), m, lam)
	by_differences = _divide_polynomial(forward_diff(p, lam, m), m, lam)
	by_series = XPolynomial()
	for l in range(m, _degree(p) + 1):
		by_series = by_series + p.derivative(l) * (
			factorial(m) * stirling2(l, m) * lam ** (l - m) / factorial(l)
		)
	return [by_windows, by_differences, by_series]


def _higher_degenerate(p: XPolynomial, lam: Any, r: int) -> tuple:
	n = _degree(p)
	coefficients = []
	for k in range(n + 1):
		if k < r:
			a = r - k
			q = operator_I(umbral_compose(p, _scaled_bernoulli_basis(n, a, lam)), 1, a)
			coefficients.append(delta_at_zero(q, k) / factorial(k))
		else:
			q = _check_agree(degenerate_f_power_forms(p, lam, k - r), f"f(t)^{k - r} p")
			coefficients.append(delta_at_zero(q, r) / factorial(k))
	return tuple(coefficients)


def _higher_classical(p: XPolynomial, r: int) -> tuple:
	n = _degree(p)
	coefficients = []
	for k in range(n + 1):
		total: Any = Fraction(0)
		if k < r:
			window = operator_I(p, 1, r - k)
			for j in range(k + 1):
				total = total + (-1) ** (k - j) * binomial(k, j) * window.evaluate(j)
		else:
			derivative = p.derivative(k - r)
			for j in range(r + 1):
				total = total + (-1) ** (r - j) * binomial(r, j) * derivative.evaluate(j)
		coefficients.append(total / factorial(k))
	return tuple(coefficients)


def expand_classical(p: XPolynomial, variant: str, lam: Any = None, r: int | None = None) -> BasisExpansion:
	"""
	Expansions in the classical and degenerate Bernoulli bases (Y = 1).

	Variants:
		integral: a_k = (1/k!) integral of p^{(k)} over [0, 1]
		degenerate_umbral: a_0 through umbral composition with lambda^i B_i(x/lambda),
			a_{r+1} through S_{1,lambda}
		degenerate_difference: a_{r+1} = Delta_lambda^r Delta p(0) / ((r+1)! lambda^r),
			cross-checked against its point-value and S_2 forms
		higher_degenerate: order-r degenerate basis via lambda-window integrals,
			lambda differences and the S_2 series, all cross-checked
		higher_classical: order-r classical basis via unit-window integrals and
			point values of derivatives

	Raises:
		ValidationError: For an unknown variant or a missing lambda or r
	"""
	p = _validate_polynomial(p)
	if variant not in CLASSICAL_VARIANTS:
		raise ValidationError(f"unknown classical variant '{variant}' (known: {', '.join(CLASSICAL_VARIANTS)})")
	needs_lambda = variant.startswith("degenerate") or variant == "higher_degenerate"
	if needs_lambda and lam is None:
		raise ValidationError(f"variant '{variant}' needs lambda")
	if needs_lambda and not hasattr(lam, "shift_down") and to_rational(lam) == 0:
		raise ValidationError(f"variant '{variant}' needs a nonzero lambda")
	if variant.startswith("higher") and (r is None or r < 0):
		raise ValidationError(f"variant '{variant}' needs an order r >= 0")

	if variant == "integral":
		return BasisExpansion(PolyFamily.BERN, None, None, 1, _classical_integral(p), Method.CLASSICAL_INTEGRAL)
	if variant == "degenerate_umbral":
		return BasisExpansion(
			PolyFamily.DEG_BERN, None, lam, 1, _degenerate_umbral(p, lam), Method.DEGENERATE_UMBRAL
		)
	if variant == "degenerate_difference":
		return BasisExpansion(
			PolyFamily.DEG_BERN, None, lam, 1, _degenerate_difference(p, lam), Method.DEGENERATE_DIFFERENCE
		)
	if variant == "higher_degenerate":
		return BasisExpansion(
			PolyFamily.DEG_BERN, None, lam, r, _higher_degenerate(p, lam, r), Method.HIGHER_DEGENERATE
		)
	return BasisExpansion(PolyFamily.BERN, None, None, r, _higher_classical(p, r), Method.HIGHER_CLASSICAL)


# Oracle


def oracle_expand(p: XPolynomial, basis: PolySequence) -> BasisExpansion:
	"""
	Expand p by back-substitution against a triangular basis.

	Raises:
		InsufficientOrderError: If the basis stops below deg p
		ValidationError: If a basis member has a non-invertible leading coefficient
	"""
	p = _validate_polynomial(p)
	n = _degree(p)
	if len(basis) <= n:
		raise InsufficientOrderError(n, len(basis) - 1, "oracle basis")

	residual = p
	coefficients: list[Any] = [Fraction(0)] * (n + 1)
	for k in range(n, -1, -1):
		member = basis[k]
		if member.degree != k:
			raise ValidationError(f"basis member {k} has degree {member.degree}")
		lead = to_rational(member.coefficient(k))
		if lead == 0:
			raise ValidationError(f"basis member {k} has a zero leading coefficient")
		a_k = residual.coefficient(k) / lead
		coefficients[k] = a_k
		if a_k != 0:
			residual = residual - member * a_k
	return BasisExpansion(basis.family, basis.Y, basis.lam, basis.r, tuple(coefficients), Method.ORACLE)


def reconstruct(expansion: BasisExpansion, basis: PolySequence | None = None) -> XPolynomial:
	"""sum_k a_k basis_k."""
	basis = basis if basis is not None else expansion.basis()
	result = XPolynomial()
	for k, a_k in enumerate(expansion.coefficients):
		result = result + basis[k] * a_k
	return result
