# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Engine configuration.

A single settings object carries the fixture random variables, the fixed
lambda used by fixed-lambda checks, the seeded polynomial generator ranges,
the geometric diagnostic depth and the default truncation slack.
"""

from functools import lru_cache

from pydantic import BaseModel, Field, field_validator

from prob_bernoulli.exactnum import parse_rational
from prob_bernoulli.exceptions import ValidationError as ProbValidationError


class EngineSettings(BaseModel):
	"""Defaults shared by the engines, the suites and the CLI."""

	fixture_specs: list[str] = Field(
		default_factory=lambda: [
			"bernoulli:p=2/3",
			"binomial:m=4,p=2/5",
			"poisson:alpha=3/2",
			"geometric:p=1/3",
			"exponential:alpha=3/2",
			"gamma:alpha=5/2,beta=3",
		]
	)
	fixed_lambda: str = "1/3"
	coefficient_min: int = -9
	coefficient_max: int = 9
	polynomials_per_fixture: int = Field(default=25, ge=1)
	max_random_degree: int = Field(default=8, ge=0)
	geometric_depth: int = Field(default=60, ge=1)
	diagnostic_tolerance: float = Field(default=1e-8, gt=0)
	truncation_slack: int = Field(default=2, ge=0)

	@field_validator("fixed_lambda")
	@classmethod
	def _validate_fixed_lambda(cls, value: str) -> str:
		try:
			parsed = parse_rational(value)
		except ProbValidationError as e:
			raise ValueError(str(e))
		if parsed == 0:
			raise ValueError("fixed lambda must be nonzero")
		return value

	@field_validator("coefficient_max")
	@classmethod
	def _validate_range(cls, value: int, info) -> int:
		low = info.data.get("coefficient_min")
		if low is not None and value < low:
			raise ValueError("coefficient_max must not be below coefficient_min")
		return value


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
	"""Default settings instance."""
	return EngineSettings()
