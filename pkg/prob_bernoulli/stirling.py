# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Stirling numbers of both kinds: classical, degenerate, probabilistic and
probabilistic degenerate.

Every family is read off the EGF of (base series)^k / k!. First-kind
probabilistic families use the compositional inverse of the second-kind base
series; the per-distribution closed forms in ``prob_s1_closed_form`` are kept
as independent cross-checks only.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from prob_bernoulli.exactnum import (
	RingValue,
	binomial,
	factorial,
	falling_factorial,
	kronecker,
	mode_of,
	stirling1,
	stirling2,
)
from prob_bernoulli.exceptions import DomainError, InsufficientOrderError, ValidationError
from prob_bernoulli.randvar import (
	Kind,
	RandomVariable,
	degenerate_sum_power_moments,
	e_series,
	mean,
	sum_power_moments,
)
from prob_bernoulli.series import (
	TruncatedSeries,
	XPolynomial,
	comp_inverse,
	degenerate_exp_series,
	degenerate_log1p_series,
	egf_mul,
	exp_series,
	log1p_series,
	series_one,
)
from prob_bernoulli.utils.table_cache import cached_table

logger = logging.getLogger(__name__)


class Family(str, Enum):
	S1 = "S1"
	S2 = "S2"
	S1DEG = "S1deg"
	S2DEG = "S2deg"
	S1PROB = "S1prob"
	S2PROB = "S2prob"
	S1PROBDEG = "S1probdeg"
	S2PROBDEG = "S2probdeg"

	@property
	def kind(self) -> int:
		return 1 if self.value.startswith("S1") else 2

	@property
	def degenerate(self) -> bool:
		return self.value.endswith("deg")

	@property
	def probabilistic(self) -> bool:
		return "prob" in self.value

	@property
	def partner(self) -> "Family":
		"""The other-kind family with the same Y and lambda dependence."""
		return Family(("S2" if self.kind == 1 else "S1") + self.value[2:])

	@property
	def plain(self) -> "Family":
		"""The non-degenerate counterpart (the lambda -> 0 limit)."""
		return Family(self.value.removesuffix("deg")) if self.degenerate else self


_VARIANTS = {
	"classical": "",
	"degenerate": "deg",
	"prob": "prob",
	"prob-degenerate": "probdeg",
}


def family_for(kind: int, variant: str) -> Family:
	"""
	Map a (kind, variant) pair to a family.

	Raises:
		ValidationError: For an unknown kind or variant
	"""
	if kind not in (1, 2):
		raise ValidationError(f"Stirling kind must be 1 or 2, got {kind}")
	if variant not in _VARIANTS:
		raise ValidationError(f"unknown Stirling variant '{variant}' (known: {', '.join(_VARIANTS)})")
	return Family(f"S{kind}{_VARIANTS[variant]}")


@dataclass(frozen=True)
class StirlingTable:
	"""Triangular table entries[n][k], 0 <= k <= n <= nmax."""

	family: Family
	Y: RandomVariable | None
	lam: RingValue | None
	nmax: int
	entries: tuple[tuple[Any, ...], ...] = field(repr=False)

	def value(self, n: int, k: int) -> RingValue:
		"""Entry (n, k); zero when k < 0 or k > n."""
		if n > self.nmax:
			raise InsufficientOrderError(n, self.nmax, f"{self.family.value} table")
		if k < 0 or k > n or n < 0:
			return Fraction(0)
		return self.entries[n][k]

	def rows(self):
		"""Yield (n, k, value) in row-major order."""
		for n, row in enumerate(self.entries):
			for k, value in enumerate(row):
				yield n, k, value

	def eval_lambda(self, at: Any) -> "StirlingTable":
		"""Evaluate a symbolic-lambda table at a rational lambda."""
		entries = tuple(tuple(v.evaluate(at) if hasattr(v, "evaluate") else v for v in row) for row in self.entries)
		return StirlingTable(self.family, self.Y, Fraction(at), self.nmax, entries)


def _validate_inputs(family: Family, Y: RandomVariable | None, lam: Any, nmax: int) -> None:
	"""
	Check that a family gets exactly the parameters it depends on.

	Raises:
		ValidationError: If Y or lambda is missing, or nmax is negative
		DomainError: If E[Y] = 0
	"""
	if not isinstance(family, Family):
		raise ValidationError(f"unknown Stirling family {family!r}")
	if nmax < 0:
		raise ValidationError(f"nmax must be non-negative, got {nmax}")
	if family.probabilistic:
		if Y is None:
			raise ValidationError(f"{family.value} needs a random variable")
		if mean(Y) == 0:
			raise DomainError(f"{Y.spec} has E[Y] = 0")
	if family.degenerate and lam is None:
		raise ValidationError(f"{family.value} needs lambda")
	if lam is not None:
		mode_of(lam)


def base_series(family: Family, Y: RandomVariable | None, lam: Any, N: int) -> TruncatedSeries:
	"""The series whose k-th power over k! generates column k of the family."""
	if family is Family.S2:
		return exp_series(N) - 1
	if family is Family.S1:
		return log1p_series(N)
	if family is Family.S2DEG:
		return degenerate_exp_series(lam, N) - 1
	if family is Family.S1DEG:
		return degenerate_log1p_series(lam, N)
	if family is Family.S2PROB:
		return e_series(Y, None, N)
	if family is Family.S1PROB:
		return comp_inverse(e_series(Y, None, N))
	if family is Family.S2PROBDEG:
		return e_series(Y, lam, N)
	return comp_inverse(e_series(Y, lam, N))


@cached_table("stirling")
def build_table(
	family: Family, Y: RandomVariable | None = None, lam: Any = None, nmax: int = 8
) -> StirlingTable:
	"""
	Build a Stirling table row-complete up to nmax.

	Args:
		family: Which of the eight families
		Y: Random variable, required for probabilistic families
		lam: Lambda (symbolic or rational), required for degenerate families
		nmax: Largest row index

	Returns:
		Immutable table, cached per (family, Y, lambda, nmax)

	Raises:
		ValidationError: If a required parameter is missing
		DomainError: If E[Y] = 0

	Example:
		build_table(Family.S2, nmax=4).value(4, 2)  # 7
	"""
	_validate_inputs(family, Y, lam, nmax)
	if not family.probabilistic:
		Y = None
	if not family.degenerate:
		lam = None

	base = base_series(family, Y, lam, max(nmax, 1))
	columns = [series_one(base.order, base.mode)]
	for _ in range(nmax):
		columns.append(egf_mul(columns[-1], base))

	entries = tuple(
		tuple(columns[k].coeffs[n] / factorial(k) for k in range(n + 1)) for n in range(nmax + 1)
	)
	logger.info(f"built {family.value} table to nmax={nmax}" + (f" for {Y.spec}" if Y else ""))
	return StirlingTable(family, Y, lam, nmax, entries)


def prob_s2_direct(Y: RandomVariable, n: int, k: int, lam: Any = None) -> RingValue:
	"""
	Second-kind probabilistic Stirling number from moments of i.i.d. sums.

	(1/k!) sum_j C(k,j) (-1)^{k-j} E[S_j^n], or E[(S_j)_{n,lambda}] when lambda
	is given.
	"""
	if n < 0 or k < 0:
		raise ValidationError(f"prob_s2_direct needs n, k >= 0, got n={n}, k={k}")
	if k > n:
		return Fraction(0)
	total: Any = 0
	for j in range(k + 1):
		sign = -1 if (k - j) % 2 else 1
		moment = sum_power_moments(Y, j, n) if lam is None else degenerate_sum_power_moments(Y, lam, j, n)
		total = total + sign * binomial(k, j) * moment
	return total / factorial(k)


def _first_kind(lam: Any, nmax: int):
	"""S1 or the degenerate S1 accessor used by the closed forms."""
	if lam is None:
		return stirling1
	table = build_table(Family.S1DEG, None, lam, nmax)
	return table.value


def prob_s1_closed_form(Y: RandomVariable, lam: Any, n: int, k: int) -> RingValue:
	"""
	First-kind probabilistic (degenerate) Stirling number from the per-distribution formula.

	Args:
		Y: Bernoulli, binomial, Poisson, geometric, exponential or gamma variable
		lam: None for S1^Y, a lambda value for the degenerate S1^Y_lambda
		n: Row index
		k: Column index

	Raises:
		DomainError: For kinds without a closed form

	Example:
		prob_s1_closed_form(RandomVariable.bernoulli("1/2"), None, 3, 1)  # 16
	"""
	if k < 0 or k > n:
		return Fraction(0)
	s1 = _first_kind(lam, n)
	kind = Y.kind

	if kind is Kind.BERNOULLI:
		return s1(n, k) / Y.p**n

	if kind is Kind.BINOMIAL:
		total: Any = 0
		for l in range(k, n + 1):
			for i in range(l, n + 1):
				total = total + s1(l, k) * stirling2(i, l) * stirling1(n, i) / (Y.p**l * Fraction(Y.m) ** i)
		return total

	if kind is Kind.POISSON:
		return sum((s1(l, k) * stirling1(n, l) / Y.alpha**l for l in range(k, n + 1)), Fraction(0))

	if kind is Kind.GEOMETRIC:
		total = 0
		for j in range(k, n + 1):
			weight = binomial(n, j) * falling_factorial(n - 1, n - j) * Y.p**j * (Y.p - 1) ** (n - j)
			total = total + weight * s1(j, k)
		return total

	if kind is Kind.EXPONENTIAL:
		if lam is None:
			sign = -1 if (n - k) % 2 else 1
			return sign * binomial(n, k) * falling_factorial(n - 1, n - k) * Y.alpha**k
		total = 0
		for j in range(k, n + 1):
			sign = -1 if (n - j) % 2 else 1
			weight = sign * binomial(n, j) * falling_factorial(n - 1, n - j) * Y.alpha**j * stirling2(j, k)
			total = total + weight * lam ** (j - k)
		return total

	if kind is Kind.GAMMA:
		alpha, beta = Y.alpha, Y.beta
		if lam is None:
			inner = sum(
				(
					(-1) ** l * binomial(k, l) * falling_factorial(l + (n - 1) * alpha, n, alpha)
					for l in range(k + 1)
				),
				Fraction(0),
			)
			return beta**k * (-1 / alpha) ** n * inner / factorial(k)
		total = 0
		for l in range(k, n + 1):
			for r in range(l + 1):
				sign = -1 if (n - r) % 2 else 1
				weight = (
					sign
					* stirling2(l, k)
					* binomial(l, r)
					* beta**l
					* falling_factorial(r + (n - 1) * alpha, n, alpha)
					/ (factorial(l) * alpha**n)
				)
				total = total + weight * lam ** (l - k)
		return total

	raise DomainError(f"no closed form for the first-kind numbers of {Y.spec}")


@dataclass
class OrthogonalityReport:
	"""Outcome of the orthogonality and inverse-relation checks for one family pair."""

	second_kind: Family
	first_kind: Family
	nmax: int
	checked: int = 0
	failures: list[dict] = field(default_factory=list)

	@property
	def passed(self) -> bool:
		return not self.failures

	def record(self, relation: str, indices: tuple, lhs: Any, rhs: Any) -> None:
		self.checked += 1
		if lhs != rhs:
			self.failures.append({"relation": relation, "indices": indices, "lhs": lhs, "rhs": rhs})


def check_orthogonality(table2: StirlingTable, table1: StirlingTable, seed: int = 0) -> OrthogonalityReport:
	"""
	Verify the orthogonality relations and both inverse relations for a family pair.

	Args:
		table2: Second-kind table
		table1: Matching first-kind table (same Y, lambda and nmax)
		seed: Seed for the random sequences fed to the inverse relations

	Returns:
		Report listing every failing relation with both exact sides

	Raises:
		ValidationError: If the tables are not a matching pair
	"""
	if table2.family.kind != 2 or table1.family is not table2.family.partner:
		raise ValidationError(f"{table2.family.value} and {table1.family.value} are not an orthogonal pair")
	if table2.Y != table1.Y or table2.lam != table1.lam or table2.nmax != table1.nmax:
		raise ValidationError("orthogonality needs tables with the same Y, lambda and nmax")

	nmax = table2.nmax
	report = OrthogonalityReport(table2.family, table1.family, nmax)
	s2, s1 = table2.value, table1.value

	for n in range(nmax + 1):
		for l in range(n + 1):
			forward = sum((s2(n, k) * s1(k, l) for k in range(l, n + 1)), Fraction(0))
			backward = sum((s1(n, k) * s2(k, l) for k in range(l, n + 1)), Fraction(0))
			report.record("S2*S1", (n, l), forward, kronecker(n, l))
			report.record("S1*S2", (n, l), backward, kronecker(n, l))

	rng = random.Random(seed)
	b = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(nmax + 1)]

	# a_n = sum_k S2(n,k) b_k  <=>  b_n = sum_k S1(n,k) a_k
	a = [sum((s2(n, k) * b[k] for k in range(n + 1)), Fraction(0)) for n in range(nmax + 1)]
	for n in range(nmax + 1):
		recovered = sum((s1(n, k) * a[k] for k in range(n + 1)), Fraction(0))
		report.record("inverse-lower", (n,), recovered, b[n])

	# a_n = sum_{k>=n} S2(k,n) b_k  <=>  b_n = sum_{k>=n} S1(k,n) a_k
	a = [sum((s2(k, n) * b[k] for k in range(n, nmax + 1)), Fraction(0)) for n in range(nmax + 1)]
	for n in range(nmax + 1):
		recovered = sum((s1(k, n) * a[k] for k in range(n, nmax + 1)), Fraction(0))
		report.record("inverse-upper", (n,), recovered, b[n])

	if report.failures:
		logger.warning(f"{len(report.failures)} orthogonality failures for {table2.family.value}")
	return report


def falling_factorial_polynomial(n: int, step: Any = 1) -> XPolynomial:
	"""(x)_{n,step} as a polynomial in x."""
	result = XPolynomial((1,))
	for i in range(n):
		result = result * XPolynomial((-i * step, 1))
	return result


def falling_factorial_expansions(nmax: int, lam: Any) -> list[dict]:
	"""
	Check the four basis-change identities between powers and falling factorials.

	x^n = sum S2(n,k) (x)_k, (x)_n = sum S1(n,k) x^k,
	(x)_{n,lambda} = sum S2deg(n,k) (x)_k and (x)_n = sum S1deg(n,k) (x)_{k,lambda},
	each as an exact polynomial identity for n <= nmax.

	Returns:
		One record per (identity, n) with lhs, rhs and a ``passed`` flag
	"""
	s2 = build_table(Family.S2, None, None, nmax)
	s1 = build_table(Family.S1, None, None, nmax)
	s2deg = build_table(Family.S2DEG, None, lam, nmax)
	s1deg = build_table(Family.S1DEG, None, lam, nmax)

	plain = [falling_factorial_polynomial(k) for k in range(nmax + 1)]
	degenerate = [falling_factorial_polynomial(k, lam) for k in range(nmax + 1)]

	records = []
	for n in range(nmax + 1):
		checks = [
			("power-in-falling", XPolynomial.monomial(n), _combine(s2, n, plain)),
			("falling-in-power", plain[n], _combine(s1, n, [XPolynomial.monomial(k) for k in range(n + 1)])),
			("degenerate-in-falling", degenerate[n], _combine(s2deg, n, plain)),
			("falling-in-degenerate", plain[n], _combine(s1deg, n, degenerate)),
		]
		for name, lhs, rhs in checks:
			records.append({"identity": name, "n": n, "lhs": lhs, "rhs": rhs, "passed": lhs == rhs})
	return records


def _combine(table: StirlingTable, n: int, basis: list[XPolynomial]) -> XPolynomial:
	result = XPolynomial()
	for k in range(n + 1):
		result = result + basis[k] * table.value(n, k)
	return result
