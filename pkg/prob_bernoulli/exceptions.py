# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Exception hierarchy for the exact engines.

Every error raised on purpose by this package derives from
ProbBernoulliError. The CLI maps ValidationError to a usage error
(exit 2) and every other ProbBernoulliError to an engine error (exit 1).
"""


class ProbBernoulliError(Exception):
	"""Base class for all engine errors."""


class ValidationError(ProbBernoulliError):
	"""Invalid user input: malformed spec strings, unknown ids, bad parameters."""


class ModeMismatchError(ValidationError):
	"""Values from RationalMode and LambdaMode were combined in one computation."""


class ZeroDivisorError(ProbBernoulliError, ZeroDivisionError):
	"""Division by zero, or by a power of lambda that does not divide the value."""


class NotDeltaSeriesError(ProbBernoulliError):
	"""A series needed to be a delta series (c_0 = 0, c_1 a nonzero rational)."""


class NonUnitConstantError(ProbBernoulliError):
	"""A series needed an invertible rational constant term."""


class DomainError(ProbBernoulliError):
	"""A mathematical precondition failed (E[Y] = 0, u = 1, unsupported kind)."""


class InsufficientOrderError(ProbBernoulliError):
	"""A truncated series is too short for the requested computation."""

	def __init__(self, needed: int, available: int, context: str = ""):
		self.needed = needed
		self.available = available
		message = f"series order {available} is insufficient, {needed} required"
		if context:
			message = f"{context}: {message}"
		super().__init__(message)
