# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Exact moment providers for the random variable Y.

Moment generating functions are treated as formal power series in t; their
convergence is never used. Every kind supplies closed-form raw moments, and
kinds with an independent generating-function construction are cross-checked
against it when the variable is built.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any

from prob_bernoulli.exactnum import (
	Mode,
	RingValue,
	factorial,
	falling_factorial,
	format_rational,
	kronecker,
	parse_rational,
	rising_factorial,
	stirling1,
	stirling2,
	to_rational,
)
from prob_bernoulli.exceptions import DomainError, InsufficientOrderError, ValidationError
from prob_bernoulli.series import (
	TruncatedSeries,
	egf_exp_log,
	egf_mul,
	egf_reciprocal,
	exp_series,
	mode_for_lambda,
	series_power,
)
from prob_bernoulli.settings import get_settings

logger = logging.getLogger(__name__)

CROSS_CHECK_ORDER = 6


class Kind(str, Enum):
	CONSTANT_ONE = "constant1"
	BERNOULLI = "bernoulli"
	BINOMIAL = "binomial"
	POISSON = "poisson"
	GEOMETRIC = "geometric"
	EXPONENTIAL = "exponential"
	GAMMA = "gamma"
	CUSTOM = "custom"


_ALLOWED_KEYS: dict[Kind, tuple[str, ...]] = {
	Kind.CONSTANT_ONE: (),
	Kind.BERNOULLI: ("p",),
	Kind.BINOMIAL: ("m", "p"),
	Kind.POISSON: ("alpha",),
	Kind.GEOMETRIC: ("p",),
	Kind.EXPONENTIAL: ("alpha",),
	Kind.GAMMA: ("alpha", "beta"),
	Kind.CUSTOM: (),
}


@dataclass(frozen=True)
class RandomVariable:
	"""
	A parameterized moment provider.

	Build instances through the named constructors (``bernoulli``, ``gamma``,
	...) or ``parse_random_variable``. Parameter domains and E[Y] != 0 are
	enforced at construction.
	"""

	kind: Kind
	p: Fraction | None = None
	m: int | None = None
	alpha: Fraction | None = None
	beta: Fraction | None = None
	moments: tuple[Fraction, ...] = field(default=())

	def __post_init__(self):
		_validate_parameters(self)
		if raw_moments(self, 1)[1] == 0:
			raise DomainError(f"{self.spec} has E[Y] = 0")
		_cross_check_moments(self)

	@classmethod
	def constant_one(cls) -> "RandomVariable":
		return cls(Kind.CONSTANT_ONE)

	@classmethod
	def bernoulli(cls, p: Any) -> "RandomVariable":
		return cls(Kind.BERNOULLI, p=to_rational(p))

	@classmethod
	def binomial(cls, m: int, p: Any) -> "RandomVariable":
		return cls(Kind.BINOMIAL, m=m, p=to_rational(p))

	@classmethod
	def poisson(cls, alpha: Any) -> "RandomVariable":
		return cls(Kind.POISSON, alpha=to_rational(alpha))

	@classmethod
	def geometric(cls, p: Any) -> "RandomVariable":
		return cls(Kind.GEOMETRIC, p=to_rational(p))

	@classmethod
	def exponential(cls, alpha: Any) -> "RandomVariable":
		return cls(Kind.EXPONENTIAL, alpha=to_rational(alpha))

	@classmethod
	def gamma(cls, alpha: Any, beta: Any) -> "RandomVariable":
		return cls(Kind.GAMMA, alpha=to_rational(alpha), beta=to_rational(beta))

	@classmethod
	def custom(cls, moments: Any) -> "RandomVariable":
		return cls(Kind.CUSTOM, moments=tuple(to_rational(v) for v in moments))

	@property
	def spec(self) -> str:
		"""Canonical text spec, re-parseable by ``parse_random_variable``."""
		if self.kind is Kind.CONSTANT_ONE:
			return "constant1"
		if self.kind is Kind.CUSTOM:
			return "custom:" + ",".join(format_rational(v) for v in self.moments)
		parts = []
		for key in _ALLOWED_KEYS[self.kind]:
			value = getattr(self, key)
			parts.append(f"{key}={value if key == 'm' else format_rational(value)}")
		return f"{self.kind.value}:{','.join(parts)}"

	def __str__(self):
		return self.spec


def _validate_parameters(rv: RandomVariable) -> None:
	"""
	Check parameter domains for the variable's kind.

	Raises:
		ValidationError: If a parameter is missing or outside its domain
	"""
	kind = rv.kind
	if not isinstance(kind, Kind):
		raise ValidationError(f"unknown random variable kind {kind!r}")

	for key in ("p", "m", "alpha", "beta"):
		if getattr(rv, key) is not None and key not in _ALLOWED_KEYS[kind]:
			raise ValidationError(f"{kind.value} does not take parameter '{key}'")
		if getattr(rv, key) is None and key in _ALLOWED_KEYS[kind]:
			raise ValidationError(f"{kind.value} requires parameter '{key}'")

	if kind in (Kind.BERNOULLI, Kind.BINOMIAL) and not (0 < rv.p <= 1):
		raise ValidationError(f"{kind.value} needs 0 < p <= 1, got {format_rational(rv.p)}")
	if kind is Kind.GEOMETRIC and not (0 < rv.p < 1):
		raise ValidationError(f"geometric needs 0 < p < 1, got {format_rational(rv.p)}")
	if kind is Kind.BINOMIAL and (not isinstance(rv.m, int) or isinstance(rv.m, bool) or rv.m < 1):
		raise ValidationError(f"binomial needs an integer m >= 1, got {rv.m!r}")
	if rv.alpha is not None and rv.alpha <= 0:
		raise ValidationError(f"{kind.value} needs alpha > 0, got {format_rational(rv.alpha)}")
	if rv.beta is not None and rv.beta <= 0:
		raise ValidationError(f"{kind.value} needs beta > 0, got {format_rational(rv.beta)}")

	if kind is Kind.CUSTOM:
		if len(rv.moments) < 2:
			raise ValidationError("custom moments need at least E[Y^0] and E[Y]")
		if rv.moments[0] != 1:
			raise ValidationError(f"custom moments need E[Y^0] = 1, got {format_rational(rv.moments[0])}")
	elif rv.moments:
		raise ValidationError(f"{kind.value} does not take a moment list")


@lru_cache(maxsize=256)
def _raw_moment(rv: RandomVariable, n: int) -> Fraction:
	kind = rv.kind
	if n == 0:
		return Fraction(1)
	if kind is Kind.CONSTANT_ONE:
		return Fraction(1)
	if kind is Kind.BERNOULLI:
		return rv.p
	if kind is Kind.BINOMIAL:
		return sum(
			(stirling2(n, k) * falling_factorial(rv.m, k) * rv.p**k for k in range(n + 1)), Fraction(0)
		)
	if kind is Kind.POISSON:
		return sum((stirling2(n, k) * rv.alpha**k for k in range(n + 1)), Fraction(0))
	if kind is Kind.GEOMETRIC:
		q = 1 - rv.p
		return sum(
			(stirling2(n, k) * factorial(k) * q ** (k - 1) / rv.p**k for k in range(1, n + 1)), Fraction(0)
		)
	if kind is Kind.EXPONENTIAL:
		return Fraction(factorial(n)) / rv.alpha**n
	if kind is Kind.GAMMA:
		return rising_factorial(rv.alpha, n) / rv.beta**n
	if n >= len(rv.moments):
		raise InsufficientOrderError(n, len(rv.moments) - 1, f"custom moments of {rv.spec}")
	return rv.moments[n]


def raw_moments(Y: RandomVariable, N: int) -> list[Fraction]:
	"""
	Raw moments E[Y^0], ..., E[Y^N].

	Args:
		Y: The random variable
		N: Highest moment order

	Returns:
		Exact moments as a list of length N + 1

	Raises:
		InsufficientOrderError: If a custom moment list is shorter than N + 1

	Example:
		raw_moments(RandomVariable.exponential("3/2"), 2)  # [1, 2/3, 8/9]
	"""
	if N < 0:
		raise ValidationError(f"moment order must be non-negative, got {N}")
	return [_raw_moment(Y, n) for n in range(N + 1)]


def mean(Y: RandomVariable) -> Fraction:
	return _raw_moment(Y, 1)


def degenerate_moments(Y: RandomVariable, lam: Any, N: int) -> list[RingValue]:
	"""E[(Y)_{n,lambda}] = sum_k S1(n,k) lambda^{n-k} E[Y^k] for n = 0..N."""
	moments = raw_moments(Y, N)
	return [_lambda_expand(moments, lam, n) for n in range(N + 1)]


def _lambda_expand(moments: list[Fraction], lam: Any, n: int) -> RingValue:
	total: Any = 0 * lam
	for k in range(n + 1):
		coefficient = stirling1(n, k)
		if coefficient == 0:
			continue
		total = total + coefficient * lam ** (n - k) * moments[k]
	return total


def mgf_series(Y: RandomVariable, lam: Any = None, N: int = 8) -> TruncatedSeries:
	"""
	E[e^{Yt}] (lam absent) or E[e_lambda^Y(t)] (lam given) as an EGF of order N.

	The degenerate series is in LambdaMode for the symbolic lambda and in
	RationalMode for a fixed rational lambda.
	"""
	if lam is None:
		return TruncatedSeries(tuple(raw_moments(Y, N)), Mode.RATIONAL)
	return TruncatedSeries(tuple(degenerate_moments(Y, lam, N)), mode_for_lambda(lam))


def e_series(Y: RandomVariable, lam: Any = None, N: int = 8) -> TruncatedSeries:
	"""e_Y(t) = E[e^{Yt}] - 1, or its degenerate analogue; always a delta series."""
	return mgf_series(Y, lam, N) - 1


def sum_power_moments(Y: RandomVariable, j: int, n: int) -> Fraction:
	"""
	E[S_j^n] for the sum S_j of j independent copies of Y, with S_0 = 0.

	Read off the n-th EGF coefficient of the j-th power of the MGF.
	"""
	if j < 0 or n < 0:
		raise ValidationError(f"sum_power_moments needs j, n >= 0, got j={j}, n={n}")
	if j == 0:
		return kronecker(n, 0)
	return series_power(mgf_series(Y, None, n), j).coefficient(n)


def degenerate_sum_power_moments(Y: RandomVariable, lam: Any, j: int, n: int) -> RingValue:
	"""E[(S_j)_{n,lambda}] = sum_k S1(n,k) lambda^{n-k} E[S_j^k]."""
	moments = [sum_power_moments(Y, j, k) for k in range(n + 1)]
	return _lambda_expand(moments, lam, n)


def _cross_check_moments(rv: RandomVariable) -> None:
	"""
	Compare closed-form moments with an independent generating-function construction.

	Raises:
		DomainError: If the two constructions disagree
	"""
	N = CROSS_CHECK_ORDER
	expected = _generating_function(rv, N)
	if expected is None:
		return
	actual = mgf_series(rv, None, N)
	if actual != expected:
		logger.error(f"moment cross-check failed for {rv.spec}: {actual.coeffs} != {expected.coeffs}")
		raise DomainError(f"closed-form moments of {rv.spec} disagree with the generating function")
	logger.debug(f"moment cross-check passed for {rv.spec} to order {N}")


def _generating_function(rv: RandomVariable, N: int) -> TruncatedSeries | None:
	kind = rv.kind
	if kind is Kind.BERNOULLI:
		return exp_series(N) * rv.p + (1 - rv.p)
	if kind is Kind.BINOMIAL:
		return series_power(exp_series(N) * rv.p + (1 - rv.p), rv.m)
	if kind is Kind.POISSON:
		return egf_exp_log((exp_series(N) - 1) * rv.alpha, "exp")
	if kind is Kind.GEOMETRIC:
		return geometric_mgf_series(rv.p, N)
	if kind is Kind.EXPONENTIAL:
		# 1/(1 - t/alpha)
		return egf_reciprocal(TruncatedSeries((1, -1 / rv.alpha) + (0,) * (N - 1)))
	if kind is Kind.GAMMA:
		# (1 - t/beta)^{-alpha} = exp(-alpha log(1 - t/beta))
		log_term = egf_exp_log(TruncatedSeries((1, -1 / rv.beta) + (0,) * (N - 1)), "log")
		return egf_exp_log(log_term * (-rv.alpha), "exp")
	return None


def geometric_mgf_series(p: Fraction, N: int) -> TruncatedSeries:
	"""p e^t / (1 - (1-p) e^t) built from series algebra."""
	numerator = exp_series(N) * p
	denominator = 1 - exp_series(N) * (1 - p)
	return egf_mul(numerator, egf_reciprocal(denominator))


def parse_random_variable(text: str) -> RandomVariable:
	"""
	Parse a random variable spec of the form ``kind[:key=value,...]``.

	Values are exact rationals (``a`` or ``a/b``); ``m`` must be an integer.
	``custom`` takes a comma-separated moment list instead of keys.

	Raises:
		ValidationError: For unknown kinds, unknown or duplicate keys and bad values

	Example:
		parse_random_variable("gamma:alpha=5/2,beta=3")
	"""
	if not isinstance(text, str) or not text.strip():
		raise ValidationError("random variable spec is empty")

	head, _, tail = text.strip().partition(":")
	try:
		kind = Kind(head.strip().lower())
	except ValueError:
		known = ", ".join(k.value for k in Kind)
		raise ValidationError(f"unknown random variable kind '{head}' (known: {known})")

	if kind is Kind.CUSTOM:
		if not tail.strip():
			raise ValidationError("custom spec needs a moment list, e.g. custom:1,1/2,1/3")
		return RandomVariable.custom([parse_rational(v) for v in tail.split(",")])

	params: dict[str, Any] = {}
	if tail.strip():
		for item in tail.split(","):
			key, sep, value = item.partition("=")
			key = key.strip()
			if not sep:
				raise ValidationError(f"malformed parameter '{item}' in '{text}', expected key=value")
			if key not in _ALLOWED_KEYS[kind]:
				raise ValidationError(f"{kind.value} does not take parameter '{key}'")
			if key in params:
				raise ValidationError(f"duplicate parameter '{key}' in '{text}'")
			if key == "m":
				m = parse_rational(value)
				if m.denominator != 1:
					raise ValidationError(f"binomial m must be an integer, got '{value.strip()}'")
				params[key] = int(m)
			else:
				params[key] = parse_rational(value)

	return RandomVariable(kind, **params)


def fixture_variables(specs: list[str] | None = None) -> list[RandomVariable]:
	"""The six canonical fixture random variables (or the given specs)."""
	if specs is None:
		specs = get_settings().fixture_specs
	return [parse_random_variable(spec) for spec in specs]
