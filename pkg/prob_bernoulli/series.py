# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Truncated exponential generating functions and polynomial operators.

A ``TruncatedSeries`` stores the EGF prefix c_0..c_N of
f(t) = sum c_n t^n / n!. Every operation returns a series whose order is the
minimum of its inputs' orders, and anything that needs more terms than are
available raises ``InsufficientOrderError`` instead of padding with zeros.

Series coefficients are usually scalars (``Fraction`` or ``LambdaPoly``). The
bivariate generating functions of the Bernoulli families reuse the same
algebra with ``XPolynomial`` coefficients, which is why the series routines
only rely on ring operators and exact division by rationals.

``XPolynomial`` is a polynomial in x; series act on it as differential
operators (t^k x^n = (n)_k x^{n-k}) and as linear functionals.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from prob_bernoulli.exactnum import (
	LambdaPoly,
	Mode,
	RingValue,
	binomial,
	embed,
	factorial,
	falling_factorial,
	mode_of,
	to_rational,
)
from prob_bernoulli.exceptions import (
	DomainError,
	InsufficientOrderError,
	ModeMismatchError,
	NonUnitConstantError,
	NotDeltaSeriesError,
	ValidationError,
	ZeroDivisorError,
)

logger = logging.getLogger(__name__)


def _is_scalar(value: Any) -> bool:
	return isinstance(value, (Fraction, int, LambdaPoly)) and not isinstance(value, bool)


@dataclass(frozen=True, eq=False)
class XPolynomial:
	"""
	Polynomial in x with exact ring coefficients, ascending powers.

	Trailing zero coefficients are stripped, so the zero polynomial has an
	empty coefficient tuple and degree -1.
	"""

	coeffs: tuple = ()

	def __post_init__(self):
		coeffs = [c if isinstance(c, LambdaPoly) else to_rational(c) for c in self.coeffs]
		while coeffs and coeffs[-1] == 0:
			coeffs.pop()
		object.__setattr__(self, "coeffs", tuple(coeffs))

	@classmethod
	def constant(cls, value: Any) -> "XPolynomial":
		return cls((value,))

	@classmethod
	def monomial(cls, n: int, coefficient: Any = 1) -> "XPolynomial":
		"""coefficient * x**n"""
		return cls((0,) * n + (coefficient,))

	@classmethod
	def x(cls) -> "XPolynomial":
		return cls.monomial(1)

	@property
	def degree(self) -> int:
		return len(self.coeffs) - 1

	@property
	def mode(self) -> Mode:
		return Mode.LAMBDA if any(isinstance(c, LambdaPoly) for c in self.coeffs) else Mode.RATIONAL

	def coefficient(self, k: int) -> RingValue:
		if 0 <= k < len(self.coeffs):
			return self.coeffs[k]
		return Fraction(0)

	def is_zero(self) -> bool:
		return not self.coeffs

	def evaluate(self, at: Any) -> RingValue:
		"""Horner evaluation at a ring value."""
		result: Any = Fraction(0)
		for c in reversed(self.coeffs):
			result = result * at + c
		return result

	def derivative(self, k: int = 1) -> "XPolynomial":
		"""k-th derivative d^k/dx^k."""
		if k < 0:
			raise ValidationError(f"derivative order must be non-negative, got {k}")
		return XPolynomial(
			tuple(falling_factorial(n, k) * c for n, c in enumerate(self.coeffs) if n >= k)
		)

	def antiderivative(self) -> "XPolynomial":
		"""Antiderivative vanishing at x = 0."""
		return XPolynomial((0, *(c / (n + 1) for n, c in enumerate(self.coeffs))))

	def shift(self, a: Any) -> "XPolynomial":
		"""p(x + a)."""
		if a == 0:
			return self
		size = len(self.coeffs)
		out: list[Any] = [0] * size
		for n, c in enumerate(self.coeffs):
			if c == 0:
				continue
			power: Any = 1
			for k in range(n, -1, -1):
				out[k] = out[k] + binomial(n, k) * c * power
				power = power * a
		return XPolynomial(tuple(out))

	def scale(self, a: Any) -> "XPolynomial":
		"""p(a x)."""
		out = []
		power: Any = Fraction(1)
		for c in self.coeffs:
			out.append(c * power)
			power = power * a
		return XPolynomial(tuple(out))

	def eval_lambda(self, at: Any) -> "XPolynomial":
		"""Evaluate every lambda-dependent coefficient at a rational lambda."""
		return XPolynomial(tuple(c.evaluate(at) if isinstance(c, LambdaPoly) else c for c in self.coeffs))

	def embed(self, mode: Mode) -> "XPolynomial":
		return XPolynomial(tuple(embed(c, mode) for c in self.coeffs))

	@staticmethod
	def _coerce(other: Any) -> Union["XPolynomial", None]:
		if isinstance(other, XPolynomial):
			return other
		if _is_scalar(other):
			return XPolynomial((other,))
		return None

	def __add__(self, other):
		other = self._coerce(other)
		if other is None:
			return NotImplemented
		size = max(len(self.coeffs), len(other.coeffs))
		return XPolynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

	__radd__ = __add__

	def __neg__(self):
		return XPolynomial(tuple(-c for c in self.coeffs))

	def __sub__(self, other):
		other = self._coerce(other)
		if other is None:
			return NotImplemented
		return self + (-other)

	def __rsub__(self, other):
		other = self._coerce(other)
		if other is None:
			return NotImplemented
		return other + (-self)

	def __mul__(self, other):
		if _is_scalar(other):
			return XPolynomial(tuple(c * other for c in self.coeffs))
		if not isinstance(other, XPolynomial):
			return NotImplemented
		if self.is_zero() or other.is_zero():
			return XPolynomial()
		product: list[Any] = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
		for i, a in enumerate(self.coeffs):
			if a == 0:
				continue
			for j, b in enumerate(other.coeffs):
				product[i + j] = product[i + j] + a * b
		return XPolynomial(tuple(product))

	__rmul__ = __mul__

	def __truediv__(self, other):
		if not _is_scalar(other):
			return NotImplemented
		if other == 0:
			raise ZeroDivisorError(f"division of {self} by zero")
		if isinstance(other, LambdaPoly):
			other = to_rational(other)
		return XPolynomial(tuple(c / other for c in self.coeffs))

	def __pow__(self, exponent: int):
		if not isinstance(exponent, int) or exponent < 0:
			return NotImplemented
		result = XPolynomial((1,))
		for _ in range(exponent):
			result = result * self
		return result

	def __eq__(self, other):
		other = self._coerce(other)
		if other is None:
			return NotImplemented
		if len(self.coeffs) != len(other.coeffs):
			return False
		return all(a == b for a, b in zip(self.coeffs, other.coeffs, strict=True))

	def __hash__(self):
		if self.degree <= 0:
			return hash(self.coefficient(0))
		return hash(self.coeffs)

	def __repr__(self):
		return f"XPolynomial({[str(c) for c in self.coeffs]})"


def _normalize_coefficient(value: Any, mode: Mode) -> Any:
	if isinstance(value, XPolynomial):
		return value
	return embed(value, mode)


def _infer_mode(values: Iterable[Any]) -> Mode:
	for v in values:
		if isinstance(v, LambdaPoly):
			return Mode.LAMBDA
		if isinstance(v, XPolynomial) and v.mode is Mode.LAMBDA:
			return Mode.LAMBDA
	return Mode.RATIONAL


@dataclass(frozen=True)
class TruncatedSeries:
	"""
	EGF prefix c_0..c_N of f(t) = sum_n c_n t^n / n!.

	All coefficients share the series mode; rationals passed to a LambdaMode
	series are embedded as constants.
	"""

	coeffs: tuple
	mode: Mode = Mode.RATIONAL

	def __post_init__(self):
		if len(self.coeffs) == 0:
			raise ValidationError("a truncated series needs at least the constant coefficient")
		object.__setattr__(
			self, "coeffs", tuple(_normalize_coefficient(c, self.mode) for c in self.coeffs)
		)

	@classmethod
	def of(cls, values: Sequence[Any], mode: Mode | None = None) -> "TruncatedSeries":
		"""Build a series, inferring the mode from the coefficients when not given."""
		values = tuple(values)
		return cls(values, mode if mode is not None else _infer_mode(values))

	@property
	def order(self) -> int:
		return len(self.coeffs) - 1

	def coefficient(self, n: int) -> Any:
		"""EGF coefficient c_n; raises when n exceeds the truncation order."""
		if n > self.order:
			raise InsufficientOrderError(n, self.order)
		return self.coeffs[n]

	def truncate(self, order: int) -> "TruncatedSeries":
		if order > self.order:
			raise InsufficientOrderError(order, self.order, "truncate")
		return TruncatedSeries(self.coeffs[: order + 1], self.mode)

	def lift(self, mode: Mode) -> "TruncatedSeries":
		"""Re-embed every coefficient in another mode."""
		if mode is self.mode:
			return self
		return TruncatedSeries(self.coeffs, mode)

	def eval_lambda(self, at: Any) -> "TruncatedSeries":
		"""Evaluate a LambdaMode series at a rational lambda."""
		values = []
		for c in self.coeffs:
			if isinstance(c, XPolynomial):
				values.append(c.eval_lambda(at))
			else:
				values.append(c.evaluate(at) if isinstance(c, LambdaPoly) else c)
		return TruncatedSeries(tuple(values), Mode.RATIONAL)

	def __add__(self, other):
		if not isinstance(other, TruncatedSeries):
			if _is_scalar(other):
				return TruncatedSeries((self.coeffs[0] + other, *self.coeffs[1:]), self.mode)
			return NotImplemented
		_check_modes(self, other, "add")
		n = min(self.order, other.order)
		return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), self.mode)

	__radd__ = __add__

	def __neg__(self):
		return TruncatedSeries(tuple(-c for c in self.coeffs), self.mode)

	def __rsub__(self, other):
		if not _is_scalar(other):
			return NotImplemented
		return (-self) + other

	def __sub__(self, other):
		if _is_scalar(other):
			return self + (-other)
		if not isinstance(other, TruncatedSeries):
			return NotImplemented
		return self + (-other)

	def __mul__(self, other):
		if isinstance(other, TruncatedSeries):
			return egf_mul(self, other)
		if _is_scalar(other):
			return TruncatedSeries(tuple(c * other for c in self.coeffs), self.mode)
		return NotImplemented

	def __rmul__(self, other):
		if _is_scalar(other):
			return self * other
		return NotImplemented

	def __truediv__(self, other):
		if not _is_scalar(other):
			return NotImplemented
		if other == 0:
			raise ZeroDivisorError("series divided by zero")
		return TruncatedSeries(tuple(c / to_rational(other) for c in self.coeffs), self.mode)


def _check_modes(a: TruncatedSeries, b: TruncatedSeries, op: str) -> None:
	if a.mode is not b.mode:
		raise ModeMismatchError(f"cannot {op} a {a.mode.value} series and a {b.mode.value} series")


def _rational_unit(value: Any) -> Fraction | None:
	"""The value as a nonzero rational, or None when it is not a rational unit."""
	if isinstance(value, XPolynomial):
		if value.degree > 0:
			return None
		value = value.coefficient(0)
	if isinstance(value, LambdaPoly):
		if not value.is_constant():
			return None
		value = value.constant_term
	value = Fraction(value)
	return value if value != 0 else None


def mode_for_lambda(lam: Any) -> Mode:
	"""LambdaMode for the symbolic lambda, RationalMode for a fixed rational."""
	return mode_of(lam)


# Constructors


def series_constant(value: Any, order: int, mode: Mode = Mode.RATIONAL) -> TruncatedSeries:
	return TruncatedSeries((value,) + (0,) * order, mode)


def series_one(order: int, mode: Mode = Mode.RATIONAL) -> TruncatedSeries:
	return series_constant(1, order, mode)


def series_t(order: int, mode: Mode = Mode.RATIONAL) -> TruncatedSeries:
	"""The delta series t."""
	if order < 1:
		raise InsufficientOrderError(1, order, "series_t")
	return TruncatedSeries((0, 1) + (0,) * (order - 1), mode)


def exp_series(order: int, a: Any = 1, mode: Mode | None = None) -> TruncatedSeries:
	"""e^{a t}: coefficients a^n."""
	mode = mode or mode_of(a)
	values = []
	power: Any = Fraction(1)
	for _ in range(order + 1):
		values.append(power)
		power = power * a
	return TruncatedSeries(tuple(values), mode)


def log1p_series(order: int, mode: Mode = Mode.RATIONAL) -> TruncatedSeries:
	"""log(1 + t): coefficients (-1)^{n-1} (n-1)! for n >= 1."""
	values: list[Any] = [0]
	values.extend((-1) ** (n - 1) * factorial(n - 1) for n in range(1, order + 1))
	return TruncatedSeries(tuple(values), mode)


def degenerate_exp_series(lam: Any, order: int, x: Any = 1) -> TruncatedSeries:
	"""Degenerate exponential e_lambda^x(t) = (1 + lambda t)^{x/lambda}: coefficients (x)_{n,lambda}."""
	mode = mode_for_lambda(lam)
	return TruncatedSeries(tuple(falling_factorial(x, n, lam) for n in range(order + 1)), mode)


def degenerate_log1p_series(lam: Any, order: int) -> TruncatedSeries:
	"""Degenerate logarithm log_lambda(1 + t) = ((1 + t)^lambda - 1)/lambda: coefficients (lambda - 1)_{n-1}."""
	mode = mode_for_lambda(lam)
	values: list[Any] = [0]
	values.extend(falling_factorial(lam - 1, n - 1) for n in range(1, order + 1))
	return TruncatedSeries(tuple(values), mode)


def lift_to_polynomials(f: TruncatedSeries) -> TruncatedSeries:
	"""View a scalar series as a series with constant x-polynomial coefficients."""
	return TruncatedSeries(tuple(XPolynomial.constant(c) for c in f.coeffs), f.mode)


# Algebra


def egf_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
	"""
	EGF product (binomial convolution).

	Args:
		a: Left factor
		b: Right factor, same mode

	Returns:
		Series of order min(a.order, b.order) with c_n = sum_k C(n,k) a_k b_{n-k}

	Raises:
		ModeMismatchError: If the factors live in different modes
	"""
	_check_modes(a, b, "multiply")
	order = min(a.order, b.order)
	out = []
	for n in range(order + 1):
		total: Any = 0
		for k in range(n + 1):
			left = a.coeffs[k]
			if left == 0:
				continue
			right = b.coeffs[n - k]
			if right == 0:
				continue
			total = total + binomial(n, k) * left * right
		out.append(total)
	return TruncatedSeries(tuple(out), a.mode)


def series_power(f: TruncatedSeries, k: int) -> TruncatedSeries:
	"""f^k with f^0 = 1."""
	if k < 0:
		raise ValidationError(f"series power must be non-negative, got {k}")
	result = series_one(f.order, f.mode)
	if any(isinstance(c, XPolynomial) for c in f.coeffs):
		result = lift_to_polynomials(result)
	base = f
	while k:
		if k & 1:
			result = egf_mul(result, base)
		k >>= 1
		if k:
			base = egf_mul(base, base)
	return result


def egf_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
	"""
	Multiplicative inverse of a series with a rational unit constant term.

	Raises:
		NonUnitConstantError: If c_0 is zero or not rational
	"""
	unit = _rational_unit(a.coeffs[0])
	if unit is None:
		raise NonUnitConstantError(f"constant term {a.coeffs[0]} is not an invertible rational")

	out: list[Any] = [Fraction(1) / unit]
	for n in range(1, a.order + 1):
		total: Any = 0
		for k in range(1, n + 1):
			if a.coeffs[k] == 0:
				continue
			total = total + binomial(n, k) * a.coeffs[k] * out[n - k]
		out.append(-total / unit)
	return TruncatedSeries(tuple(out), a.mode)


def _compose_coeffs(outer: Sequence[Any], inner: TruncatedSeries, order: int) -> TruncatedSeries:
	"""sum_k outer_k inner^k / k! for an inner series with zero constant term."""
	result = series_constant(outer[0], order, inner.mode)
	power = series_one(order, inner.mode)
	inner = inner.truncate(order)
	for k in range(1, order + 1):
		power = egf_mul(power, inner)
		if outer[k] == 0:
			continue
		result = result + power * outer[k] / factorial(k)
	return result


def egf_exp_log(a: TruncatedSeries, which: str) -> TruncatedSeries:
	"""
	exp(a) for c_0 = 0, or log(a) for c_0 = 1.

	The logarithm is log(1 + u) with u = a - 1, summed as alternating powers of u.

	Raises:
		DomainError: If the constant-term precondition is violated
		ValidationError: For an unknown ``which``
	"""
	order = a.order
	if which == "exp":
		if a.coeffs[0] != 0:
			raise DomainError(f"exp needs a zero constant term, got {a.coeffs[0]}")
		return _compose_coeffs([1] * (order + 1), a, order)
	if which == "log":
		if a.coeffs[0] != 1:
			raise DomainError(f"log needs constant term 1, got {a.coeffs[0]}")
		u = a - 1
		outer = [0] + [(-1) ** (k - 1) * factorial(k - 1) for k in range(1, order + 1)]
		return _compose_coeffs(outer, u, order)
	raise ValidationError(f"unknown series function '{which}', expected 'exp' or 'log'")


def is_delta(f: TruncatedSeries) -> bool:
	"""Zero constant term and a nonzero rational linear coefficient."""
	return f.order >= 1 and f.coeffs[0] == 0 and _rational_unit(f.coeffs[1]) is not None


def order_of(f: TruncatedSeries) -> int | None:
	"""Index of the first nonzero coefficient, or None if the known prefix vanishes."""
	for n, c in enumerate(f.coeffs):
		if c != 0:
			return n
	return None


def egf_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
	"""
	outer(inner(t)), exact to order min(outer.order, inner.order).

	Raises:
		NotDeltaSeriesError: If inner is not a delta series
		ModeMismatchError: If the series live in different modes
	"""
	if not is_delta(inner):
		raise NotDeltaSeriesError("the inner series of a composition must be a delta series")
	_check_modes(outer, inner, "compose")
	order = min(outer.order, inner.order)
	return _compose_coeffs(outer.coeffs, inner, order)


def comp_inverse(f: TruncatedSeries) -> TruncatedSeries:
	"""
	Compositional inverse of a delta series.

	Coefficients are extracted one at a time: with g_1 = 1/f_1 fixed, the
	coefficient of t^n/n! in f(g) is f_1 g_n plus terms in g_1..g_{n-1}, so
	g_n is read off the composition computed with g_n = 0.

	Raises:
		NotDeltaSeriesError: If f is not a delta series

	Example:
		comp_inverse(exp_series(8) - 1)  # log(1 + t)
	"""
	if f.order < 1 or f.coeffs[0] != 0:
		raise NotDeltaSeriesError("compositional inverse needs a zero constant term")
	unit = _rational_unit(f.coeffs[1])
	if unit is None:
		raise NotDeltaSeriesError(f"linear coefficient {f.coeffs[1]} is not a rational unit")

	g: list[Any] = [0, Fraction(1) / unit]
	for n in range(2, f.order + 1):
		trial = TruncatedSeries((*g, 0), f.mode)
		composed = _compose_coeffs(f.coeffs, trial, n)
		g.append(-composed.coeffs[n] / unit)
	return TruncatedSeries(tuple(g), f.mode)


def series_divide_by_t(f: TruncatedSeries) -> TruncatedSeries:
	"""
	f(t)/t for f with zero constant term; the order drops by one.

	Raises:
		DomainError: If the constant term is nonzero
		InsufficientOrderError: If f has order 0
	"""
	if f.coeffs[0] != 0:
		raise DomainError("series with a nonzero constant term is not divisible by t")
	if f.order < 1:
		raise InsufficientOrderError(1, f.order, "divide by t")
	return TruncatedSeries(tuple(f.coeffs[n + 1] / (n + 1) for n in range(f.order)), f.mode)


def series_multiply_by_t(f: TruncatedSeries) -> TruncatedSeries:
	"""t f(t); the order grows by one."""
	return TruncatedSeries((0, *(n * f.coeffs[n - 1] for n in range(1, f.order + 2))), f.mode)


def series_scale(f: TruncatedSeries, c: Any) -> TruncatedSeries:
	"""f(c t)."""
	out = []
	power: Any = Fraction(1)
	for coeff in f.coeffs:
		out.append(coeff * power)
		power = power * c
	return TruncatedSeries(tuple(out), f.mode)


# Operators and functionals on polynomials


def apply_operator(f: TruncatedSeries, p: XPolynomial) -> XPolynomial:
	"""
	Apply a series as a differential operator: f(t) x^n = sum_k C(n,k) c_k x^{n-k}.

	Raises:
		InsufficientOrderError: If the series order is below deg p
	"""
	if p.degree > f.order:
		raise InsufficientOrderError(p.degree, f.order, "apply_operator")
	out: list[Any] = [0] * max(len(p.coeffs), 1)
	for n, pc in enumerate(p.coeffs):
		if pc == 0:
			continue
		for k in range(n + 1):
			if f.coeffs[k] == 0:
				continue
			out[n - k] = out[n - k] + binomial(n, k) * f.coeffs[k] * pc
	return XPolynomial(tuple(out))


def functional(f: TruncatedSeries, p: XPolynomial) -> RingValue:
	"""
	The pairing <f(t) | p(x)>, i.e. f(t) p(x) evaluated at x = 0.

	Only the diagonal terms survive evaluation at 0, so this is sum_n c_n p_n.
	"""
	if p.degree > f.order:
		raise InsufficientOrderError(p.degree, f.order, "functional")
	total: Any = Fraction(0)
	for n, pc in enumerate(p.coeffs):
		total = total + f.coeffs[n] * pc
	return total


def forward_diff(p: XPolynomial, step: Any = 1, order: int = 1) -> XPolynomial:
	"""Delta_step^order p(x) = sum_i C(order,i) (-1)^{order-i} p(x + i step)."""
	if order < 0:
		raise ValidationError(f"difference order must be non-negative, got {order}")
	result = XPolynomial()
	for i in range(order + 1):
		sign = -1 if (order - i) % 2 else 1
		result = result + p.shift(i * step) * (sign * binomial(order, i))
	return result


def integrate_unit(p: XPolynomial) -> RingValue:
	"""Exact integral of p over [0, 1]."""
	total: Any = Fraction(0)
	for k, c in enumerate(p.coeffs):
		total = total + c / (k + 1)
	return total


def operator_I(p: XPolynomial, step: Any = 1, power: int = 1) -> XPolynomial:
	"""
	Iterated window integral q(x) -> integral of q over [x, x + step].

	This is the operator ((e^{step t} - 1)/t)^power acting on p.
	"""
	if power < 0:
		raise ValidationError(f"operator power must be non-negative, got {power}")
	result = p
	for _ in range(power):
		primitive = result.antiderivative()
		result = primitive.shift(step) - primitive
	return result


def umbral_compose(q: XPolynomial, sequence: Sequence[XPolynomial]) -> XPolynomial:
	"""
	Replace each x^k in q by sequence[k].

	Raises:
		InsufficientOrderError: If the sequence has no entry for some degree of q
	"""
	if len(sequence) <= q.degree:
		raise InsufficientOrderError(q.degree, len(sequence) - 1, "umbral_compose")
	result = XPolynomial()
	for k, c in enumerate(q.coeffs):
		if c == 0:
			continue
		result = result + sequence[k] * c
	return result
