# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Bernoulli-type polynomial and number families.

Polynomial families are the coefficient polynomials of the bivariate EGF
(t / (M(t) - 1))^r * exp(x log M(t)), with M the moment generating function
of Y (or its degenerate analogue E[e_lambda^Y(t)]). Classical and degenerate
Bernoulli polynomials are the Y = 1 members of the same construction.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from prob_bernoulli.exactnum import RingValue, binomial, factorial, to_rational
from prob_bernoulli.exceptions import DomainError, ValidationError
from prob_bernoulli.randvar import RandomVariable, mgf_series
from prob_bernoulli.series import (
	TruncatedSeries,
	XPolynomial,
	degenerate_exp_series,
	degenerate_log1p_series,
	egf_exp_log,
	egf_mul,
	egf_reciprocal,
	exp_series,
	lift_to_polynomials,
	log1p_series,
	mode_for_lambda,
	series_divide_by_t,
	series_one,
	series_power,
)
from prob_bernoulli.utils.table_cache import cached_table

logger = logging.getLogger(__name__)


class PolyFamily(str, Enum):
	BERN = "Bern"
	DEG_BERN = "DegBern"
	PROB_BERN = "ProbBern"
	PROB_DEG_BERN = "ProbDegBern"

	@property
	def degenerate(self) -> bool:
		return self in (PolyFamily.DEG_BERN, PolyFamily.PROB_DEG_BERN)

	@property
	def probabilistic(self) -> bool:
		return self in (PolyFamily.PROB_BERN, PolyFamily.PROB_DEG_BERN)

	@property
	def plain(self) -> "PolyFamily":
		return {PolyFamily.DEG_BERN: PolyFamily.BERN, PolyFamily.PROB_DEG_BERN: PolyFamily.PROB_BERN}.get(
			self, self
		)


class SpecialFamily(str, Enum):
	BERN_NUM = "BernNum"
	DEG_BERN_NUM = "DegBernNum"
	BERN_SECOND_KIND = "BernSecondKind"
	DEG_BERN_SECOND_KIND = "DegBernSecondKind"
	FROBENIUS_EULER = "FrobeniusEuler"
	DEG_FROBENIUS_EULER = "DegFrobeniusEuler"

	@property
	def degenerate(self) -> bool:
		return self.value.startswith("Deg")


@dataclass(frozen=True)
class PolySequence:
	"""entries[n] is the degree-n member of the family."""

	family: PolyFamily
	Y: RandomVariable | None
	lam: RingValue | None
	r: int
	entries: tuple[XPolynomial, ...] = field(repr=False)

	def __getitem__(self, n: int) -> XPolynomial:
		return self.entries[n]

	def __len__(self) -> int:
		return len(self.entries)

	@property
	def random_variable(self) -> RandomVariable:
		"""Y, or the constant 1 for the classical families."""
		return self.Y if self.Y is not None else RandomVariable.constant_one()

	def eval_lambda(self, at: Any) -> "PolySequence":
		return PolySequence(
			self.family, self.Y, Fraction(at), self.r, tuple(e.eval_lambda(at) for e in self.entries)
		)


@dataclass(frozen=True)
class SpecialSequence:
	family: SpecialFamily
	lam: RingValue | None
	r: int
	u: Fraction | None
	entries: tuple[Any, ...] = field(repr=False)

	def __getitem__(self, n: int) -> RingValue:
		return self.entries[n]

	def __len__(self) -> int:
		return len(self.entries)


def _validate_poly_request(family: PolyFamily, Y: RandomVariable | None, lam: Any, r: int, N: int) -> None:
	if not isinstance(family, PolyFamily):
		raise ValidationError(f"unknown polynomial family {family!r}")
	if r < 0:
		raise ValidationError(f"order r must be non-negative, got {r}")
	if N < 0:
		raise ValidationError(f"N must be non-negative, got {N}")
	if family.probabilistic and Y is None:
		raise ValidationError(f"{family.value} needs a random variable")
	if family.degenerate and lam is None:
		raise ValidationError(f"{family.value} needs lambda")


def moment_series(Y: RandomVariable, lam: Any, N: int) -> TruncatedSeries:
	"""M(t) = E[e^{Yt}] or E[e_lambda^Y(t)] to order N."""
	return mgf_series(Y, lam, N)


def bivariate_exponential(log_m: TruncatedSeries) -> TruncatedSeries:
	"""
	exp(x L(t)) as a series in t with x-polynomial coefficients.

	Coefficient n is sum_j (L^j)_n / j! x^j; L has zero constant term, so
	L^j contributes nothing below t^j and the finite sum is exact.
	"""
	N = log_m.order
	columns = [XPolynomial() for _ in range(N + 1)]
	power = series_one(N, log_m.mode)
	for j in range(N + 1):
		if j:
			power = egf_mul(power, log_m)
		for n in range(j, N + 1):
			c = power.coeffs[n]
			if c != 0:
				columns[n] = columns[n] + XPolynomial.monomial(j, c / factorial(j))
	return TruncatedSeries(tuple(columns), log_m.mode)


@cached_table("bernoulli-poly")
def poly_sequence(
	family: PolyFamily, Y: RandomVariable | None = None, lam: Any = None, r: int = 1, N: int = 8
) -> PolySequence:
	"""
	Polynomial family of order r, degrees 0..N.

	Args:
		family: Bern, DegBern, ProbBern or ProbDegBern
		Y: Random variable for the probabilistic families
		lam: Lambda for the degenerate families
		r: Order; 1 gives the ordinary families
		N: Highest degree

	Returns:
		Sequence with deg entries[n] = n

	Raises:
		ValidationError: If a required parameter is missing
		InsufficientOrderError: Never for valid inputs; internal orders are N + 1

	Example:
		poly_sequence(PolyFamily.BERN, N=2)[2]  # x^2 - x + 1/6
	"""
	_validate_poly_request(family, Y, lam, r, N)
	rv = Y if family.probabilistic else RandomVariable.constant_one()
	lam = lam if family.degenerate else None

	M = moment_series(rv, lam, N + 1)
	G = egf_reciprocal(series_divide_by_t(M - 1))
	log_m = egf_exp_log(M, "log").truncate(N)
	generating = egf_mul(lift_to_polynomials(series_power(G, r)), bivariate_exponential(log_m))

	logger.info(f"built {family.value} order {r} to degree {N}" + (f" for {rv.spec}" if Y else ""))
	return PolySequence(family, Y if family.probabilistic else None, lam, r, generating.coeffs)


def _validate_special_request(family: SpecialFamily, lam: Any, r: int, u: Any) -> Fraction | None:
	if not isinstance(family, SpecialFamily):
		raise ValidationError(f"unknown special family {family!r}")
	if r < 0:
		raise ValidationError(f"order r must be non-negative, got {r}")
	if family.degenerate and lam is None:
		raise ValidationError(f"{family.value} needs lambda")
	if family in (SpecialFamily.FROBENIUS_EULER, SpecialFamily.DEG_FROBENIUS_EULER):
		if u is None:
			raise ValidationError(f"{family.value} needs u")
		u = to_rational(u)
		if u == 1:
			raise DomainError("Frobenius-Euler numbers are undefined for u = 1")
		return u
	return None


@cached_table("bernoulli-special")
def special_sequence(
	family: SpecialFamily, lam: Any = None, r: int = 1, u: Any = None, N: int = 8
) -> SpecialSequence:
	"""
	Number families read off a single generating function.

	BernNum: (t/(e^t - 1))^r; DegBernNum: (t/(e_lambda(t) - 1))^r;
	BernSecondKind: (t/log(1 + t))^r; DegBernSecondKind: (t/log_lambda(1 + t))^r;
	FrobeniusEuler: ((1 - u)/(e^t - u))^r; DegFrobeniusEuler: ((1 - u)/(e_lambda(t) - u))^r.

	Raises:
		DomainError: If u = 1 for a Frobenius-Euler family
		ValidationError: If lambda or u is missing where needed
	"""
	u = _validate_special_request(family, lam, r, u)
	order = N + 1
	if family is SpecialFamily.BERN_NUM:
		base = egf_reciprocal(series_divide_by_t(exp_series(order) - 1))
	elif family is SpecialFamily.DEG_BERN_NUM:
		base = egf_reciprocal(series_divide_by_t(degenerate_exp_series(lam, order) - 1))
	elif family is SpecialFamily.BERN_SECOND_KIND:
		base = egf_reciprocal(series_divide_by_t(log1p_series(order)))
	elif family is SpecialFamily.DEG_BERN_SECOND_KIND:
		base = egf_reciprocal(series_divide_by_t(degenerate_log1p_series(lam, order)))
	elif family is SpecialFamily.FROBENIUS_EULER:
		base = egf_reciprocal(exp_series(N) - u) * (1 - u)
	else:
		base = egf_reciprocal(degenerate_exp_series(lam, N) - u) * (1 - u)

	entries = series_power(base, r).truncate(N).coeffs
	if family.degenerate:
		lam_out = lam
	else:
		lam_out = None
	return SpecialSequence(family, lam_out, r, u, entries)


def bernoulli_numbers(N: int, r: int = 1) -> list[Fraction]:
	"""B_0..B_N (order r), with B_1 = -1/2."""
	return list(special_sequence(SpecialFamily.BERN_NUM, None, r, None, N).entries)


def scaled_bernoulli(n: int, a: int, lam: Any) -> XPolynomial:
	"""
	lambda^n B_n^{(a)}(x / lambda) = sum_k C(n,k) B_{n-k}^{(a)} lambda^{n-k} x^k.

	This is (lambda t / (e^{lambda t} - 1))^a applied to x^n.
	"""
	if n < 0 or a < 0:
		raise ValidationError(f"scaled_bernoulli needs n, a >= 0, got n={n}, a={a}")
	numbers = bernoulli_numbers(n, a)
	result = XPolynomial()
	for k in range(n + 1):
		result = result + XPolynomial.monomial(k, binomial(n, k) * numbers[n - k] * lam ** (n - k))
	return result


def evaluate_sequence(seq: PolySequence, at: Any) -> list[RingValue]:
	"""Every member of a polynomial sequence evaluated at one point."""
	return [entry.evaluate(at) for entry in seq.entries]
