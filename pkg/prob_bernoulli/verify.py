# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Identity verification suites.

Each suite enumerates a fixed grid of cases (fixture random variables,
symbolic and fixed lambda, n <= nmax, small orders r) and compares both sides
of an identity exactly. The only non-exact check is the geometric a_0
diagnostic, which is reported but never fails a run unless ``--strict`` is
given. Suites are registered by dotted path in ``prob_bernoulli.hooks``.

Example:
	report = run_suite("integral-identities", nmax=12, seed=0)
	report.passed  # True
"""

import importlib
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from prob_bernoulli import hooks
from prob_bernoulli.bernoulli import (
	PolyFamily,
	SpecialFamily,
	bernoulli_numbers,
	poly_sequence,
	special_sequence,
)
from prob_bernoulli.closed_forms import (
	closed_form_expansion,
	difference_at_zero,
	geometric_a0_partial_sums,
	t_over_f_monomial,
)
from prob_bernoulli.exactnum import (
	LAMBDA,
	binomial,
	divide_by_lambda_power,
	factorial,
	harmonic,
	kronecker,
	parse_rational,
	stirling2,
)
from prob_bernoulli.exceptions import ProbBernoulliError, ValidationError
from prob_bernoulli.randvar import Kind, RandomVariable, fixture_variables, mean, mgf_series
from prob_bernoulli.represent import (
	delta_at_zero,
	expand_classical,
	expand_higher,
	expand_prob,
	expand_prob_degenerate,
	g_power_forms,
	inverse_log_moment_series,
	oracle_expand,
	reconstruct,
	t_over_f,
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
	exp_series,
	forward_diff,
	integrate_unit,
	log1p_series,
	series_divide_by_t,
	series_one,
	series_t,
)
from prob_bernoulli.settings import get_settings
from prob_bernoulli.stirling import (
	Family,
	build_table,
	check_orthogonality,
	falling_factorial_expansions,
	falling_factorial_polynomial,
	prob_s1_closed_form,
	prob_s2_direct,
)
from prob_bernoulli.utils.case_logger import (
	FAIL,
	PASS,
	SKIPPED,
	failed_cases,
	log_identity_case,
	summarize_cases,
)
from prob_bernoulli.utils.table_cache import reset_table_cache

logger = logging.getLogger(__name__)

ALL_SUITES = "all"


@dataclass
class CaseResult:
	"""One evaluated identity case; a failure carries both exact sides."""

	suite: str
	case: str
	status: str
	params: dict = field(default_factory=dict)
	lhs: Any = None
	rhs: Any = None
	reason: str | None = None
	diagnostic: bool = False


@dataclass
class IdentityReport:
	suite: str
	nmax: int
	seed: int
	cases: list[CaseResult] = field(default_factory=list)

	@property
	def summary(self) -> dict[str, Any]:
		return summarize_cases(self.cases)

	@property
	def passed(self) -> bool:
		"""No exact case failed; diagnostics do not count."""
		return not failed_cases(self.cases)

	@property
	def passed_strict(self) -> bool:
		return not failed_cases(self.cases, include_diagnostics=True)


class CaseRecorder:
	"""Collects case results for one suite and logs each as it is recorded."""

	def __init__(self, suite: str, nmax: int, seed: int):
		self.report = IdentityReport(suite, nmax, seed)

	@property
	def suite(self) -> str:
		return self.report.suite

	def check(
		self,
		case: str,
		ok: bool,
		lhs: Any = None,
		rhs: Any = None,
		reason: str | None = None,
		diagnostic: bool = False,
		**params: Any,
	) -> bool:
		status = PASS if ok else FAIL
		result = CaseResult(
			self.suite,
			case,
			status,
			params,
			None if ok else lhs,
			None if ok else rhs,
			reason,
			diagnostic,
		)
		self.report.cases.append(result)
		log_identity_case(self.suite, case, status, lhs, rhs, reason, diagnostic)
		return ok

	def compare(self, case: str, lhs: Any, rhs: Any, **params: Any) -> bool:
		return self.check(case, lhs == rhs, lhs, rhs, **params)

	def skip(self, case: str, reason: str, **params: Any) -> None:
		self.report.cases.append(CaseResult(self.suite, case, SKIPPED, params, reason=reason))
		log_identity_case(self.suite, case, SKIPPED, reason=reason)

	def attempt(self, case: str, func, *args: Any, **params: Any) -> Any:
		"""Run one block of cases; an engine error becomes a failed case instead of aborting the suite."""
		try:
			return func(*args)
		except ProbBernoulliError as e:
			logger.error(f"[{self.suite}] {case}: {type(e).__name__}: {e!s}")
			self.check(case, False, reason=f"{type(e).__name__}: {e!s}", **params)
			return None


# Shared fixtures


def _fixtures() -> list[RandomVariable]:
	return fixture_variables()


def _fixed_lambda() -> Fraction:
	return parse_rational(get_settings().fixed_lambda)


def _random_polynomial(rng: random.Random, max_degree: int) -> XPolynomial:
	settings = get_settings()
	low, high = settings.coefficient_min, settings.coefficient_max
	degree = rng.randint(0, max_degree)
	coefficients = [rng.randint(low, high) for _ in range(degree)]
	leading = 0
	while leading == 0:
		leading = rng.randint(low, high)
	return XPolynomial((*coefficients, leading))


def _rng(seed: int, suite: str) -> random.Random:
	return random.Random(f"{seed}:{suite}")


def _lambda_label(lam: Any) -> str:
	if lam is None:
		return "plain"
	return "symbolic" if lam is LAMBDA else f"lambda={lam}"


# Stirling suites


def _stirling_pairs(nmax: int):
	one = RandomVariable.constant_one()
	yield "classical", build_table(Family.S2, None, None, nmax), build_table(Family.S1, None, None, nmax)
	yield (
		"degenerate",
		build_table(Family.S2DEG, None, LAMBDA, nmax),
		build_table(Family.S1DEG, None, LAMBDA, nmax),
	)
	for Y in [one, *_fixtures()]:
		yield (
			f"prob {Y.spec}",
			build_table(Family.S2PROB, Y, None, nmax),
			build_table(Family.S1PROB, Y, None, nmax),
		)
		yield (
			f"prob-degenerate {Y.spec}",
			build_table(Family.S2PROBDEG, Y, LAMBDA, nmax),
			build_table(Family.S1PROBDEG, Y, LAMBDA, nmax),
		)


def _record_relations(recorder: CaseRecorder, label: str, report, relations: tuple[str, ...]) -> None:
	failures = [f for f in report.failures if f["relation"] in relations]
	first = failures[0] if failures else {}
	recorder.check(
		f"{label} {'/'.join(relations)}",
		not failures,
		first.get("lhs"),
		first.get("rhs"),
		reason=f"{len(failures)} failing entries, first at {first.get('indices')}" if failures else None,
		nmax=report.nmax,
	)


def suite_orthogonality(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	for label, table2, table1 in _stirling_pairs(nmax):
		report = check_orthogonality(table2, table1, seed)
		_record_relations(recorder, label, report, ("S2*S1", "S1*S2"))

	one = RandomVariable.constant_one()
	for prob, plain, lam in (
		(Family.S2PROB, Family.S2, None),
		(Family.S1PROB, Family.S1, None),
		(Family.S2PROBDEG, Family.S2DEG, LAMBDA),
		(Family.S1PROBDEG, Family.S1DEG, LAMBDA),
	):
		recorder.compare(
			f"{prob.value} with Y=1 reduces to {plain.value}",
			build_table(prob, one, lam, nmax).entries,
			build_table(plain, None, lam, nmax).entries,
		)

	direct_nmax = min(nmax, 8)
	for Y in _fixtures():
		table = build_table(Family.S2PROB, Y, None, direct_nmax)
		for k in range(direct_nmax + 1):
			recorder.compare(f"S2prob({k},{k}) = E[Y]^{k} for {Y.spec}", table.value(k, k), mean(Y) ** k)
		for n in range(direct_nmax + 1):
			for k in range(n + 1):
				recorder.compare(
					f"prob_s2_direct({n},{k}) for {Y.spec}", prob_s2_direct(Y, n, k), table.value(n, k)
				)

		lam = _fixed_lambda()
		degenerate_nmax = min(nmax, 6)
		table = build_table(Family.S2PROBDEG, Y, lam, degenerate_nmax)
		for n in range(degenerate_nmax + 1):
			for k in range(n + 1):
				recorder.compare(
					f"prob_s2_direct({n},{k}) at lambda={lam} for {Y.spec}",
					prob_s2_direct(Y, n, k, lam),
					table.value(n, k),
				)


def suite_inverse_relations(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	for label, table2, table1 in _stirling_pairs(nmax):
		report = check_orthogonality(table2, table1, seed)
		_record_relations(recorder, label, report, ("inverse-lower",))
		_record_relations(recorder, label, report, ("inverse-upper",))


def suite_s2_from_differences(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	table = build_table(Family.S2, None, None, nmax)
	for n in range(nmax + 1):
		for j in range(n + 1):
			value = difference_at_zero(n, j) / factorial(j)
			recorder.compare(f"Delta^{j} 0^{n} / {j}!", value, stirling2(n, j))
			recorder.compare(f"table S2({n},{j})", table.value(n, j), stirling2(n, j))


def suite_falling_factorial_expansions(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	for lam in (LAMBDA, _fixed_lambda()):
		for record in falling_factorial_expansions(nmax, lam):
			recorder.check(
				f"{record['identity']} n={record['n']} ({_lambda_label(lam)})",
				record["passed"],
				record["lhs"],
				record["rhs"],
			)


def suite_log_mgf_expansion(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	order = max(nmax, 1)
	for Y in [RandomVariable.constant_one(), *_fixtures()]:
		for lam, family in ((None, Family.S2PROB), (LAMBDA, Family.S2PROBDEG)):
			table = build_table(family, Y, lam, order)
			expected: list[Any] = [0]
			for n in range(1, order + 1):
				expected.append(
					sum(
						((-1) ** (j - 1) * factorial(j - 1) * table.value(n, j) for j in range(1, n + 1)),
						Fraction(0),
					)
				)
			log_m = egf_exp_log(mgf_series(Y, lam, order), "log")
			recorder.compare(
				f"log M as S2 sums for {Y.spec} ({_lambda_label(lam)})",
				log_m,
				TruncatedSeries(tuple(expected), log_m.mode),
			)
			recorder.compare(f"linear term of log M for {Y.spec} ({_lambda_label(lam)})", log_m.coeffs[1], mean(Y))


# Bernoulli-side suites


def _prob_families(lam: Any) -> tuple[PolyFamily, Family]:
	if lam is None:
		return PolyFamily.PROB_BERN, Family.S2PROB
	return PolyFamily.PROB_DEG_BERN, Family.S2PROBDEG


def suite_difference_identities(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	N = min(nmax, 8)
	for Y in [RandomVariable.constant_one(), *_fixtures()]:
		for lam in (None, LAMBDA):
			recorder.attempt(f"differences for {Y.spec}", _difference_cases, recorder, Y, lam, N)


def _difference_cases(recorder: CaseRecorder, Y: RandomVariable, lam: Any, N: int) -> None:
	poly_family, stirling_family = _prob_families(lam)
	seq = poly_sequence(poly_family, Y, lam, 1, N)
	s2 = build_table(stirling_family, Y, lam, N)
	label = f"{Y.spec} ({_lambda_label(lam)})"
	for n in range(N + 1):
		recorder.compare(
			f"s_{n}(1) - s_{n}(0) = delta for {label}",
			seq[n].evaluate(1) - seq[n].evaluate(0),
			kronecker(n, 1),
		)
		if n == 0:
			continue
		rhs = XPolynomial()
		for k in range(n):
			rhs = rhs + falling_factorial_polynomial(k) * (n * s2.value(n - 1, k))
		recorder.compare(f"Delta s_{n} via S2 for {label}", forward_diff(seq[n]), rhs)

	higher_N = min(N, 6)
	for r in (2, 3):
		upper = poly_sequence(poly_family, Y, lam, r, higher_N)
		lower = poly_sequence(poly_family, Y, lam, r - 1, higher_N)
		for n in range(1, higher_N + 1):
			recorder.compare(
				f"Delta s_{n}^({r}) = {n} s_{n - 1}^({r - 1}) for {label}",
				forward_diff(upper[n]),
				lower[n - 1] * n,
			)


def suite_lowering(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	N = min(nmax, 8)
	for Y in [RandomVariable.constant_one(), *_fixtures()]:
		for lam in (None, LAMBDA):
			recorder.attempt(f"lowering for {Y.spec}", _lowering_cases, recorder, Y, lam, N)


def _lowering_cases(recorder: CaseRecorder, Y: RandomVariable, lam: Any, N: int) -> None:
	poly_family, _ = _prob_families(lam)
	f = inverse_log_moment_series(Y, lam, N + 1)
	seq = poly_sequence(poly_family, Y, lam, 1, N)
	label = f"{Y.spec} ({_lambda_label(lam)})"
	for n in range(1, N + 1):
		recorder.compare(f"f(t) s_{n} = {n} s_{n - 1} for {label}", apply_operator(f, seq[n]), seq[n - 1] * n)

	# g(t) = (e^t - 1)/f(t) lowers the order
	window = series_divide_by_t(exp_series(N + 1) - 1).lift(f.mode)
	g = egf_mul(window, t_over_f(f))
	higher_N = min(N, 6)
	for r in (1, 2, 3):
		upper = poly_sequence(poly_family, Y, lam, r, higher_N)
		lower = poly_sequence(poly_family, Y, lam, r - 1, higher_N)
		for n in range(higher_N + 1):
			recorder.compare(
				f"g(t) s_{n}^({r}) = s_{n}^({r - 1}) for {label}", apply_operator(g, upper[n]), lower[n]
			)


def suite_inverse_pairs(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	order = max(nmax, 12)
	t = series_t(order)
	recorder.compare("log(1 + (e^t - 1)) = t", egf_compose(log1p_series(order), exp_series(order) - 1), t)
	recorder.compare("e^{log(1 + t)} - 1 = t", egf_compose(exp_series(order) - 1, log1p_series(order)), t)
	for lam in (LAMBDA, _fixed_lambda()):
		label = _lambda_label(lam)
		e_minus_one = degenerate_exp_series(lam, order) - 1
		log_lam = degenerate_log1p_series(lam, order)
		t_lam = series_t(order, e_minus_one.mode)
		recorder.compare(f"log_lambda(e_lambda(t)) = t ({label})", egf_compose(log_lam, e_minus_one), t_lam)
		recorder.compare(f"e_lambda(log_lambda(t)) = t ({label})", egf_compose(e_minus_one, log_lam), t_lam)
		recorder.compare(f"comp_inverse(e_lambda(t) - 1) ({label})", comp_inverse(e_minus_one), log_lam)


def _bernoulli_polynomials(N: int):
	return poly_sequence(PolyFamily.BERN, None, None, 1, N)


def suite_reflection(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	B = _bernoulli_polynomials(nmax + 1)
	for n in range(nmax + 1):
		sign = (-1) ** (n + 1)
		recorder.compare(
			f"B_{n + 1}(-x) reflection",
			B[n + 1].scale(-1),
			(B[n + 1] + XPolynomial.monomial(n, n + 1)) * sign,
		)


def suite_integral_identities(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	B = _bernoulli_polynomials(nmax)
	for n in range(nmax + 1):
		recorder.compare(f"integral of B_{n}(x) over [0,1]", integrate_unit(B[n]), kronecker(n, 0))
		recorder.compare(f"integral of B_{n}(-x) over [0,1]", integrate_unit(B[n].scale(-1)), Fraction((-1) ** n))


def suite_integral_generating_functions(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	N = max(nmax, 1)
	B = _bernoulli_polynomials(N)
	bernoulli_gf = TruncatedSeries(tuple(bernoulli_numbers(N)))

	plain = TruncatedSeries(tuple(integrate_unit(B[n]) for n in range(N + 1)))
	window = series_divide_by_t(exp_series(N + 1) - 1)
	recorder.compare("sum of integrals of B_n(x) t^n/n! = 1", plain, series_one(N))
	recorder.compare("t/(e^t - 1) * (e^t - 1)/t = 1", egf_mul(bernoulli_gf, window), series_one(N))

	reflected = TruncatedSeries(tuple(integrate_unit(B[n].scale(-1)) for n in range(N + 1)))
	reflected_window = series_divide_by_t(1 - exp_series(N + 1, -1))
	recorder.compare("sum of integrals of B_n(-x) t^n/n! = e^{-t}", reflected, exp_series(N, -1))
	recorder.compare(
		"t/(e^t - 1) * (1 - e^{-t})/t = e^{-t}", egf_mul(bernoulli_gf, reflected_window), exp_series(N, -1)
	)


def _miki_polynomial(B, n: int) -> XPolynomial:
	p = XPolynomial()
	for k in range(1, n):
		p = p + B[k] * B[n - k] / (k * (n - k))
	return p


def suite_miki_fpz(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	B = _bernoulli_polynomials(max(nmax, 2))
	numbers = bernoulli_numbers(max(nmax, 2))
	half = Fraction(1, 2)
	for k in range(max(nmax, 2) + 1):
		recorder.compare(f"B_{k}(1/2) = (2^(1-k) - 1) B_{k}", B[k].evaluate(half), (Fraction(2) ** (1 - k) - 1) * numbers[k])

	for n in range(2, nmax + 1):
		p = _miki_polynomial(B, n)
		expected = [Fraction(2, n) * binomial(n, k) * numbers[n - k] / (n - k) for k in range(n - 1)]
		expected += [Fraction(0), Fraction(2, n) * harmonic(n - 1)]
		expansion = expand_classical(p, "integral")
		recorder.compare(f"convolution coefficients n={n}", list(expansion.coefficients), expected)

		rhs = XPolynomial()
		for k, a_k in enumerate(expected):
			rhs = rhs + B[k] * a_k
		recorder.compare(f"convolution identity n={n}", p, rhs)
		recorder.compare(
			f"Miki variant (x=0) n={n}",
			p.evaluate(0),
			sum((a_k * numbers[k] for k, a_k in enumerate(expected)), Fraction(0)),
		)
		recorder.compare(
			f"FPZ (x=1/2) n={n}",
			p.evaluate(half),
			sum(
				(a_k * (Fraction(2) ** (1 - k) - 1) * numbers[k] for k, a_k in enumerate(expected)),
				Fraction(0),
			),
		)


def _degenerate_miki_coefficients(n: int, lam: Any) -> list[Any]:
	B = bernoulli_numbers(n)
	H = harmonic(n - 1)
	a0 = sum((Fraction(binomial(n, l), n - l) * B[n - l] * lam**l * B[l] for l in range(n - 1)), Fraction(0))
	coefficients = [Fraction(2, n) * (a0 + H * lam**n * B[n])]
	for k in range(1, n + 1):
		inner: Any = Fraction(0)
		for l in range(1, n - 1):
			inner = inner + Fraction(l * binomial(n, l), n - l) * B[n - l] * delta_at_zero(
				XPolynomial.monomial(l - 1), k - 1, lam
			)
		inner = inner + n * H * delta_at_zero(XPolynomial.monomial(n - 1), k - 1, lam)
		coefficients.append(Fraction(2, n) * divide_by_lambda_power(inner, k - 1, lam) / factorial(k))
	return coefficients


def suite_degenerate_miki(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	top = max(nmax, 2)
	B = _bernoulli_polynomials(top)
	for n in range(2, nmax + 1):
		p = _miki_polynomial(B, n)
		expected = _degenerate_miki_coefficients(n, LAMBDA)
		by_difference = expand_classical(p, "degenerate_difference", LAMBDA)
		recorder.compare(f"degenerate convolution coefficients n={n}", list(by_difference.coefficients), expected)
		by_umbral = expand_classical(p, "degenerate_umbral", LAMBDA)
		recorder.compare(
			f"umbral and difference forms agree n={n}", by_umbral.coefficients, by_difference.coefficients
		)
		recorder.compare(f"degenerate convolution identity n={n}", reconstruct(by_difference), p)


# Closed forms


def closed_form_crosscheck(Y: RandomVariable, n: int, recorder: CaseRecorder | None = None) -> IdentityReport:
	"""
	Compare the per-distribution closed forms for x^n with the engines.

	Coefficients in both bases (plain and symbolic lambda) must agree exactly,
	as must (t/f(t)) x^n. For the geometric variable the a_0 series is also
	replayed to the configured depth as a diagnostic.
	"""
	if n < 1:
		raise ValidationError(f"closed-form cross-check needs n >= 1, got {n}")
	recorder = recorder or CaseRecorder(f"closed-form {Y.spec}", n, 0)
	x_n = XPolynomial.monomial(n)

	for lam in (None, LAMBDA):
		label = f"x^{n} for {Y.spec} ({_lambda_label(lam)})"
		engine = expand_prob(x_n, Y) if lam is None else expand_prob_degenerate(x_n, Y, lam)
		closed = closed_form_expansion(Y, n, lam)
		if Y.kind is Kind.GEOMETRIC:
			recorder.compare(f"a_k, k >= 1 of {label}", list(closed[1:]), list(engine.coefficients[1:]))
			recorder.compare(f"a_0 truncated at l = n of {label}", closed[0], engine.coefficients[0])
		else:
			recorder.compare(f"coefficients of {label}", list(closed), list(engine.coefficients))

		f = inverse_log_moment_series(Y, lam, n + 2)
		recorder.compare(f"t/f(t) applied to {label}", t_over_f_monomial(Y, n, lam), apply_operator(t_over_f(f), x_n))

		family = Family.S1PROB if lam is None else Family.S1PROBDEG
		table = build_table(family, Y, lam, n)
		recorder.compare(
			f"first-kind row {n} of {label}",
			[prob_s1_closed_form(Y, lam, n, k) for k in range(n + 1)],
			list(table.entries[n]),
		)

	if Y.kind is Kind.GEOMETRIC:
		for lam in (None, _fixed_lambda()):
			_geometric_diagnostic(recorder, Y, n, lam)
	return recorder.report


def _geometric_diagnostic(recorder: CaseRecorder, Y: RandomVariable, n: int, lam: Any) -> None:
	settings = get_settings()
	depth = settings.geometric_depth
	x_n = XPolynomial.monomial(n)
	exact = (expand_prob(x_n, Y) if lam is None else expand_prob_degenerate(x_n, Y, lam)).coefficients[0]
	partial = geometric_a0_partial_sums(Y.p, n, depth, lam)
	gaps = [abs(float(s - exact)) for s in partial]
	tail = gaps[n:]
	shrinking = all(later <= earlier for earlier, later in zip(tail, tail[1:], strict=False))
	ok = shrinking and gaps[-1] < settings.diagnostic_tolerance
	recorder.check(
		f"geometric a_0 partial sums for x^{n} ({_lambda_label(lam)})",
		ok,
		lhs=[gaps[i] for i in range(0, depth + 1, 10)] + [gaps[-1]],
		rhs=exact,
		reason=None if ok else "partial sums did not settle within tolerance",
		diagnostic=True,
		depth=depth,
	)


def suite_distribution_closed_forms(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	for Y in _fixtures():
		for n in range(1, min(nmax, 8) + 1):
			recorder.attempt(f"closed forms x^{n} for {Y.spec}", closed_form_crosscheck, Y, n, recorder)


# Limits


def suite_limits(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	N = min(nmax, 10)
	one = RandomVariable.constant_one()
	for degenerate, plain, Y in (
		(Family.S2DEG, Family.S2, None),
		(Family.S1DEG, Family.S1, None),
		*((Family.S2PROBDEG, Family.S2PROB, Y) for Y in _fixtures()),
		*((Family.S1PROBDEG, Family.S1PROB, Y) for Y in _fixtures()),
	):
		label = f"{degenerate.value}" + (f" for {Y.spec}" if Y else "")
		recorder.compare(
			f"{label} at lambda=0",
			build_table(degenerate, Y, LAMBDA, N).eval_lambda(0).entries,
			build_table(plain, Y, None, N).entries,
		)

	for Y in [None, *_fixtures()]:
		degenerate, plain = (
			(PolyFamily.DEG_BERN, PolyFamily.BERN) if Y is None else (PolyFamily.PROB_DEG_BERN, PolyFamily.PROB_BERN)
		)
		for r in (1, 2, 3):
			label = f"{degenerate.value} order {r}" + (f" for {Y.spec}" if Y else "")
			recorder.compare(
				f"{label} at lambda=0",
				poly_sequence(degenerate, Y, LAMBDA, r, N).eval_lambda(0).entries,
				poly_sequence(plain, Y, None, r, N).entries,
			)

	for degenerate, plain in (
		(SpecialFamily.DEG_BERN_NUM, SpecialFamily.BERN_NUM),
		(SpecialFamily.DEG_BERN_SECOND_KIND, SpecialFamily.BERN_SECOND_KIND),
	):
		recorder.compare(
			f"{degenerate.value} at lambda=0",
			[v.evaluate(0) for v in special_sequence(degenerate, LAMBDA, 1, None, N).entries],
			list(special_sequence(plain, None, 1, None, N).entries),
		)
	for u in (Fraction(-1, 2), Fraction(3)):
		for r in (1, 2, 3):
			recorder.compare(
				f"DegFrobeniusEuler order {r} u={u} at lambda=0",
				[v.evaluate(0) for v in special_sequence(SpecialFamily.DEG_FROBENIUS_EULER, LAMBDA, r, u, N).entries],
				list(special_sequence(SpecialFamily.FROBENIUS_EULER, None, r, u, N).entries),
			)

	rng = _rng(seed, "limits")
	for Y in [one, *_fixtures()]:
		for _ in range(2):
			p = _random_polynomial(rng, min(N, 6))
			recorder.compare(
				f"degenerate expansion of {p} for {Y.spec} at lambda=0",
				expand_prob_degenerate(p, Y, LAMBDA).eval_lambda(0).coefficients,
				expand_prob(p, Y).coefficients,
			)

	for r in (2, 3):
		p = _random_polynomial(rng, min(N, 6))
		recorder.compare(
			f"higher degenerate classical expansion order {r} at lambda=0",
			expand_classical(p, "higher_degenerate", LAMBDA, r).eval_lambda(0).coefficients,
			expand_classical(p, "higher_classical", None, r).coefficients,
		)


# Oracle comparisons


def suite_theorem_oracle(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	settings = get_settings()
	cap = min(nmax, settings.max_random_degree)
	rng = _rng(seed, "theorem-oracle")
	for Y in [RandomVariable.constant_one(), *_fixtures()]:
		plain_basis = poly_sequence(PolyFamily.PROB_BERN, Y, None, 1, cap)
		degenerate_basis = poly_sequence(PolyFamily.PROB_DEG_BERN, Y, LAMBDA, 1, cap)
		for index in range(settings.polynomials_per_fixture):
			p = _random_polynomial(rng, cap)
			recorder.attempt(
				f"polynomial {index} for {Y.spec}",
				_theorem_oracle_cases,
				recorder,
				Y,
				p,
				plain_basis,
				degenerate_basis,
			)


def _theorem_oracle_cases(recorder: CaseRecorder, Y, p, plain_basis, degenerate_basis) -> None:
	label = f"{p} for {Y.spec}"
	oracle = oracle_expand(p, plain_basis)
	recorder.compare(f"oracle reconstruction of {label}", reconstruct(oracle, plain_basis), p)
	for form in (1, 2, 3):
		recorder.compare(
			f"form {form} vs oracle for {label}", expand_prob(p, Y, form).coefficients, oracle.coefficients
		)

	degenerate_oracle = oracle_expand(p, degenerate_basis)
	degenerate = expand_prob_degenerate(p, Y, LAMBDA)
	recorder.compare(f"degenerate vs oracle for {label}", degenerate.coefficients, degenerate_oracle.coefficients)
	recorder.compare(f"degenerate reconstruction of {label}", reconstruct(degenerate, degenerate_basis), p)

	if Y.kind is Kind.CONSTANT_ONE:
		recorder.compare(
			f"integral form vs oracle for {label}",
			expand_classical(p, "integral").coefficients,
			oracle.coefficients,
		)
		for variant in ("degenerate_umbral", "degenerate_difference"):
			recorder.compare(
				f"{variant} vs degenerate engine for {label}",
				expand_classical(p, variant, LAMBDA).coefficients,
				degenerate.coefficients,
			)


def suite_higher_order_oracle(recorder: CaseRecorder, nmax: int, seed: int) -> None:
	settings = get_settings()
	cap = max(min(nmax, settings.max_random_degree), 1)
	rng = _rng(seed, "higher-order-oracle")
	count = max(2, settings.polynomials_per_fixture // 5)
	one = RandomVariable.constant_one()

	for Y in [one, *_fixtures()]:
		for r in (2, 3):
			basis = poly_sequence(PolyFamily.PROB_BERN, Y, None, r, cap)
			degenerate_basis = poly_sequence(PolyFamily.PROB_DEG_BERN, Y, LAMBDA, r, cap)
			# first polynomial below the order, so both branches are exercised
			polynomials = [_random_polynomial(rng, min(r - 1, cap))]
			polynomials += [_random_polynomial(rng, cap) for _ in range(count - 1)]
			for p in polynomials:
				recorder.attempt(
					f"order {r} expansion for {Y.spec}",
					_higher_order_cases,
					recorder,
					Y,
					p,
					r,
					basis,
					degenerate_basis,
				)

		p = _random_polynomial(rng, cap)
		recorder.compare(
			f"order 1 expansion of {p} equals first-order engine for {Y.spec}",
			expand_higher(p, Y, None, 1).coefficients,
			expand_prob(p, Y).coefficients,
		)
		recorder.compare(
			f"degenerate order 1 expansion of {p} equals first-order engine for {Y.spec}",
			expand_higher(p, Y, LAMBDA, 1).coefficients,
			expand_prob_degenerate(p, Y, LAMBDA).coefficients,
		)

	for r in (2, 6):
		x4 = XPolynomial.monomial(4)
		recorder.compare(
			f"classical order {r} expansion of x^4",
			expand_higher(x4, one, None, r).coefficients,
			expand_classical(x4, "higher_classical", None, r).coefficients,
		)
	for r in (2, 3):
		p = _random_polynomial(rng, cap)
		recorder.compare(
			f"degenerate classical order {r} expansion of {p}",
			expand_higher(p, one, LAMBDA, r).coefficients,
			expand_classical(p, "higher_degenerate", LAMBDA, r).coefficients,
		)

	Y = _fixtures()[-1]
	f = inverse_log_moment_series(Y, None, cap + 5)
	for a in (1, 2, 3):
		p = _random_polynomial(rng, min(cap, 6))
		integrated, weighted = g_power_forms(p, t_over_f(f), a)
		recorder.compare(f"g(t)^{a} p by window integrals and by S2 series for {Y.spec}", integrated, weighted)


def _higher_order_cases(recorder: CaseRecorder, Y, p, r, basis, degenerate_basis) -> None:
	label = f"{p} order {r} for {Y.spec}"
	oracle = oracle_expand(p, basis)
	recorder.compare(f"higher engine vs oracle for {label}", expand_higher(p, Y, None, r).coefficients, oracle.coefficients)
	degenerate = expand_higher(p, Y, LAMBDA, r)
	recorder.compare(
		f"degenerate higher engine vs oracle for {label}",
		degenerate.coefficients,
		oracle_expand(p, degenerate_basis).coefficients,
	)


# Entry points


def registered_suites() -> list[str]:
	return list(hooks.verify_suites)


def canonical_suite(name: str) -> str:
	"""Registry id for a suite id or one of its aliases; unknown names come back unchanged."""
	return hooks.verify_suite_aliases.get(name, name)


def is_known_suite(name: str) -> bool:
	return canonical_suite(name) in hooks.verify_suites


def _resolve(dotted_path: str):
	module_name, _, attr = dotted_path.rpartition(".")
	return getattr(importlib.import_module(module_name), attr)


def run_suite(name: str, nmax: int, seed: int = 0) -> IdentityReport:
	"""
	Run one registered identity suite.

	Args:
		name: Suite id from ``hooks.verify_suites`` or an alias from ``hooks.verify_suite_aliases``
		nmax: Largest index n enumerated (suites may cap it)
		seed: Seed for the suites that draw random polynomials or sequences

	Returns:
		Report with one entry per case, in enumeration order

	Raises:
		ValidationError: For an unknown suite id or a negative nmax
	"""
	name = canonical_suite(name)
	if name not in hooks.verify_suites:
		raise ValidationError(f"unknown suite '{name}' (known: {', '.join(registered_suites())}, {ALL_SUITES})")
	if nmax < 0:
		raise ValidationError(f"nmax must be non-negative, got {nmax}")

	cap = hooks.suite_nmax_caps.get(name)
	effective = min(nmax, cap) if cap is not None else nmax
	if effective != nmax:
		logger.info(f"suite {name} capped at nmax={effective}")

	recorder = CaseRecorder(name, effective, seed)
	suite = _resolve(hooks.verify_suites[name])
	try:
		suite(recorder, effective, seed)
	except ProbBernoulliError as e:
		logger.error(f"suite {name} aborted: {e!s}")
		recorder.check("suite aborted", False, reason=f"{type(e).__name__}: {e!s}")

	summary = recorder.report.summary
	logger.info(
		f"suite {name}: {summary['passed']}/{summary['total']} passed, "
		f"{summary['failed']} failed, {summary['diagnostic_failures']} diagnostic"
	)
	return recorder.report


def run_all(nmax: int, seed: int = 0) -> list[IdentityReport]:
	"""Run every registered suite in registry order, dropping cached tables between suites."""
	reports = []
	for name in registered_suites():
		try:
			reports.append(run_suite(name, nmax, seed))
		except Exception as e:
			logger.exception(f"suite {name} raised unexpectedly: {e!s}")
			recorder = CaseRecorder(name, nmax, seed)
			recorder.check("suite raised", False, reason=f"{type(e).__name__}: {e!s}")
			reports.append(recorder.report)
		finally:
			reset_table_cache()
	return reports
