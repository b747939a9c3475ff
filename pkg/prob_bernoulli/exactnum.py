# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Exact coefficient arithmetic.

Two coefficient modes exist. RationalMode values are plain ``Fraction``
instances; LambdaMode values are ``LambdaPoly`` instances, dense polynomials
in the indeterminate lambda over the rationals. Rationals embed losslessly
into LambdaMode, so the Python operators accept mixed operands; the public
``ring_arith`` entry point is strict and refuses to combine modes.

The module also hosts the small combinatorial scalars (factorials, binomials,
classical Stirling numbers, harmonic numbers) used throughout the package.
"""

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

from prob_bernoulli.exceptions import ModeMismatchError, ValidationError, ZeroDivisorError

logger = logging.getLogger(__name__)

Rational = Fraction

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class Mode(str, Enum):
	"""Coefficient mode of a computation."""

	RATIONAL = "rational"
	LAMBDA = "lambda"


def parse_rational(text: str) -> Fraction:
	"""
	Parse the canonical text form of a rational.

	Accepts ``"a"`` or ``"a/b"`` with integer ``a`` and positive integer ``b``.

	Args:
		text: Text to parse

	Returns:
		The rational in lowest terms

	Raises:
		ValidationError: If the text is not an exact rational or the denominator is zero

	Example:
		parse_rational("-6/4")  # Fraction(-3, 2)
	"""
	if not isinstance(text, str):
		raise ValidationError(f"expected rational text, got {type(text).__name__}")

	match = _RATIONAL_PATTERN.match(text)
	if not match:
		raise ValidationError(f"'{text}' is not an exact rational (expected 'a' or 'a/b')")

	numerator = int(match.group(1))
	denominator = int(match.group(2)) if match.group(2) is not None else 1
	if denominator == 0:
		raise ValidationError(f"'{text}' has a zero denominator")
	return Fraction(numerator, denominator)


def format_rational(value: Fraction | int) -> str:
	"""Render a rational as ``num/den`` in lowest terms, or ``num`` when the denominator is 1."""
	value = Fraction(value)
	if value.denominator == 1:
		return str(value.numerator)
	return f"{value.numerator}/{value.denominator}"


def to_rational(value: Any) -> Fraction:
	"""
	Coerce an exact scalar to ``Fraction``.

	Integers, fractions, canonical rational strings and constant LambdaPoly
	values are accepted. Floats are rejected: nothing in this package is allowed
	to pass through binary floating point.

	Raises:
		ValidationError: For floats and other inexact or unsupported values
		ModeMismatchError: For a LambdaPoly that actually depends on lambda
	"""
	if isinstance(value, Fraction):
		return value
	if isinstance(value, bool):
		raise ValidationError("booleans are not rationals")
	if isinstance(value, int):
		return Fraction(value)
	if isinstance(value, str):
		return parse_rational(value)
	if isinstance(value, LambdaPoly):
		if value.degree > 0:
			raise ModeMismatchError(f"{value} depends on lambda and is not a rational")
		return value.constant_term
	raise ValidationError(f"{value!r} ({type(value).__name__}) is not an exact rational")


@dataclass(frozen=True, eq=False)
class LambdaPoly:
	"""
	Dense polynomial in lambda with rational coefficients.

	``coeffs[i]`` is the coefficient of lambda**i. Trailing zeros are stripped
	on construction, so the zero polynomial is the empty tuple and equality is
	structural.
	"""

	coeffs: tuple[Fraction, ...] = ()

	def __post_init__(self):
		coeffs = [to_rational(c) for c in self.coeffs]
		while coeffs and coeffs[-1] == 0:
			coeffs.pop()
		object.__setattr__(self, "coeffs", tuple(coeffs))

	@classmethod
	def constant(cls, value: Any) -> "LambdaPoly":
		return cls((to_rational(value),))

	@classmethod
	def symbol(cls) -> "LambdaPoly":
		"""The indeterminate lambda itself."""
		return cls((Fraction(0), Fraction(1)))

	@property
	def degree(self) -> int:
		"""Degree in lambda; -1 for the zero polynomial."""
		return len(self.coeffs) - 1

	@property
	def constant_term(self) -> Fraction:
		return self.coeffs[0] if self.coeffs else Fraction(0)

	def is_zero(self) -> bool:
		return not self.coeffs

	def is_constant(self) -> bool:
		return self.degree <= 0

	def evaluate(self, at: Any) -> Fraction:
		"""Horner evaluation at a rational point."""
		at = to_rational(at)
		result = Fraction(0)
		for c in reversed(self.coeffs):
			result = result * at + c
		return result

	def shift_down(self, k: int) -> "LambdaPoly":
		"""
		Divide by lambda**k exactly.

		Raises:
			ZeroDivisorError: If lambda**k does not divide the polynomial
		"""
		if k < 0:
			raise ValidationError(f"lambda power must be non-negative, got {k}")
		low = self.coeffs[:k]
		if any(c != 0 for c in low):
			raise ZeroDivisorError(f"lambda^{k} does not divide {self}")
		return LambdaPoly(self.coeffs[k:])

	@staticmethod
	def _coerce(other: Any) -> Union["LambdaPoly", None]:
		if isinstance(other, LambdaPoly):
			return other
		if isinstance(other, (Fraction, int)) and not isinstance(other, bool):
			return LambdaPoly((Fraction(other),))
		return None

	def __add__(self, other):
		other = self._coerce(other)
		if other is None:
			return NotImplemented
		size = max(len(self.coeffs), len(other.coeffs))
		left = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
		right = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
		return LambdaPoly(tuple(a + b for a, b in zip(left, right, strict=True)))

	__radd__ = __add__

	def __neg__(self):
		return LambdaPoly(tuple(-c for c in self.coeffs))

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
		other = self._coerce(other)
		if other is None:
			return NotImplemented
		if self.is_zero() or other.is_zero():
			return LambdaPoly()
		product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
		for i, a in enumerate(self.coeffs):
			if a == 0:
				continue
			for j, b in enumerate(other.coeffs):
				product[i + j] += a * b
		return LambdaPoly(tuple(product))

	__rmul__ = __mul__

	def __truediv__(self, other):
		if isinstance(other, LambdaPoly):
			if not other.is_constant():
				raise ValidationError(f"division by the non-constant lambda polynomial {other} is not supported")
			other = other.constant_term
		elif isinstance(other, (Fraction, int)) and not isinstance(other, bool):
			other = Fraction(other)
		else:
			return NotImplemented
		if other == 0:
			raise ZeroDivisorError(f"division of {self} by zero")
		return LambdaPoly(tuple(c / other for c in self.coeffs))

	def __pow__(self, exponent: int):
		if not isinstance(exponent, int) or exponent < 0:
			return NotImplemented
		result = LambdaPoly((Fraction(1),))
		base = self
		while exponent:
			if exponent & 1:
				result = result * base
			base = base * base
			exponent >>= 1
		return result

	def __eq__(self, other):
		if isinstance(other, LambdaPoly):
			return self.coeffs == other.coeffs
		if isinstance(other, (Fraction, int)) and not isinstance(other, bool):
			return self.is_constant() and self.constant_term == other
		return NotImplemented

	def __hash__(self):
		if self.is_constant():
			return hash(self.constant_term)
		return hash(self.coeffs)

	def __repr__(self):
		return f"LambdaPoly({[format_rational(c) for c in self.coeffs]})"

	def __str__(self):
		if self.is_zero():
			return "0"
		terms = []
		for i, c in enumerate(self.coeffs):
			if c == 0:
				continue
			if i == 0:
				terms.append(format_rational(c))
				continue
			power = "λ" if i == 1 else f"λ^{i}"
			if c == 1:
				terms.append(power)
			elif c == -1:
				terms.append(f"-{power}")
			else:
				terms.append(f"{format_rational(c)}{power}")
		return " + ".join(terms).replace("+ -", "- ")


RingValue = Fraction | LambdaPoly

LAMBDA = LambdaPoly.symbol()


def mode_of(value: Any) -> Mode:
	"""
	Report the coefficient mode of a scalar.

	Raises:
		ValidationError: If the value is neither rational nor a LambdaPoly
	"""
	if isinstance(value, LambdaPoly):
		return Mode.LAMBDA
	if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
		return Mode.RATIONAL
	raise ValidationError(f"{value!r} is not a ring value")


def embed(value: Any, mode: Mode) -> RingValue:
	"""
	Embed a scalar into the requested mode.

	Rationals embed into LambdaMode as constants. A LambdaPoly can only be
	brought back to RationalMode when it is constant.
	"""
	if mode is Mode.LAMBDA:
		if isinstance(value, LambdaPoly):
			return value
		return LambdaPoly.constant(value)
	return to_rational(value)


def zero(mode: Mode = Mode.RATIONAL) -> RingValue:
	return embed(0, mode)


def one(mode: Mode = Mode.RATIONAL) -> RingValue:
	return embed(1, mode)


def is_zero(value: Any) -> bool:
	return value == 0


def _require_rational_divisor(divisor: Any) -> Fraction:
	if isinstance(divisor, LambdaPoly):
		if not divisor.is_constant():
			raise ValidationError(f"divisor {divisor} is not a rational unit")
		divisor = divisor.constant_term
	divisor = to_rational(divisor)
	if divisor == 0:
		raise ZeroDivisorError("division by zero")
	return divisor


def ring_arith(a: RingValue, b: RingValue, op: str) -> RingValue:
	"""
	Combine two ring values with strict mode checking.

	Args:
		a: Left operand
		b: Right operand; for ``div_by_rational`` a nonzero rational
		op: One of ``add``, ``sub``, ``mul``, ``div_by_rational``

	Returns:
		The exact result in canonical form, in the common mode

	Raises:
		ModeMismatchError: If the operands live in different modes
		ZeroDivisorError: If dividing by zero
		ValidationError: For an unknown operation

	Example:
		ring_arith(LambdaPoly(["1", "-1"]), LambdaPoly(["1", "1"]), "mul")  # 1 - λ^2
	"""
	if op == "div_by_rational":
		return a / _require_rational_divisor(b)

	left, right = mode_of(a), mode_of(b)
	if left is not right:
		raise ModeMismatchError(f"cannot {op} a {left.value} value and a {right.value} value")

	if op == "add":
		return a + b
	if op == "sub":
		return a - b
	if op == "mul":
		return a * b
	raise ValidationError(f"unknown ring operation '{op}'")


def falling_factorial(x: Any, n: int, step: Any = 1) -> RingValue:
	"""
	Generalized falling factorial x(x - step)(x - 2 step)...(x - (n-1) step).

	``step=1`` gives the ordinary falling factorial and a lambda step gives the
	degenerate falling factorial. The empty product is 1.
	"""
	if n < 0:
		raise ValidationError(f"falling factorial length must be non-negative, got {n}")
	lambda_mode = isinstance(x, LambdaPoly) or isinstance(step, LambdaPoly)
	result: RingValue = one(Mode.LAMBDA if lambda_mode else Mode.RATIONAL)
	for i in range(n):
		result = result * (x - i * step)
	return result


def rising_factorial(x: Any, n: int) -> RingValue:
	"""Rising factorial x(x+1)...(x+n-1)."""
	return falling_factorial(x, n, -1)


def eval_lambda(value: Any, at: Any) -> Fraction:
	"""
	Evaluate a LambdaMode value at a rational lambda.

	Raises:
		ModeMismatchError: If the value is in RationalMode
	"""
	if not isinstance(value, LambdaPoly):
		raise ModeMismatchError("eval_lambda needs a lambda-mode value")
	return value.evaluate(at)


def divide_by_lambda_power(value: RingValue, k: int, lam: RingValue) -> RingValue:
	"""
	Divide exactly by lam**k.

	With the symbolic lambda this strips k factors of the indeterminate and
	fails when they are not there; with a rational lambda it is an ordinary
	division.

	Raises:
		ZeroDivisorError: If lam is zero, or lambda**k does not divide the value
	"""
	if isinstance(lam, LambdaPoly):
		if lam != LAMBDA:
			raise ValidationError(f"{lam} is not the lambda indeterminate")
		return embed(value, Mode.LAMBDA).shift_down(k)
	lam = to_rational(lam)
	if lam == 0 and k > 0:
		raise ZeroDivisorError("division by a power of lambda = 0")
	return value / lam**k


def factorial(n: int) -> int:
	return math.factorial(n)


def binomial(n: int, k: int) -> int:
	"""Binomial coefficient, zero outside 0 <= k <= n."""
	if k < 0 or n < 0 or k > n:
		return 0
	return math.comb(n, k)


def kronecker(a: int, b: int) -> Fraction:
	return Fraction(1 if a == b else 0)


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
	"""H_0 = 0 and H_n = 1 + 1/2 + ... + 1/n."""
	if n < 0:
		raise ValidationError(f"harmonic index must be non-negative, got {n}")
	return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
	"""Classical Stirling number of the second kind by the triangular recurrence."""
	if n == k:
		return 1
	if k <= 0 or k > n:
		return 0
	return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
	"""Signed classical Stirling number of the first kind: (x)_n = sum_k S1(n,k) x^k."""
	if n == k:
		return 1
	if k <= 0 or k > n:
		return 0
	return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


def format_ring_value(value: RingValue) -> str | list[str]:
	"""Canonical serialization: a rational string, or an ascending list of rational strings."""
	if isinstance(value, LambdaPoly):
		return [format_rational(c) for c in value.coeffs]
	return format_rational(value)


def parse_ring_value(data: str | list[str]) -> RingValue:
	"""Inverse of ``format_ring_value``."""
	if isinstance(data, (list, tuple)):
		return LambdaPoly(tuple(parse_rational(c) for c in data))
	return parse_rational(data)


def parse_lambda(text: str) -> RingValue:
	"""
	Parse a lambda specification.

	``"symbolic"`` selects LambdaMode with the indeterminate; anything else must
	be a rational and selects RationalMode at that fixed value.
	"""
	if text is None:
		raise ValidationError("lambda specification is missing")
	if text.strip().lower() == "symbolic":
		return LAMBDA
	return parse_rational(text)
