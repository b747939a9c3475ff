# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Batch command line.

Subcommands emit exact tables and expansions as JSON (or CSV for tables) and
run identity suites with a machine-readable exit status:

	prob-bernoulli stirling --kind 2 --variant prob --rv exponential:alpha=3/2 --nmax 4
	prob-bernoulli bernoulli --family DegBern --lambda symbolic --nmax 3
	prob-bernoulli expand --poly 0,0,1 --basis B --rv constant1
	prob-bernoulli verify --suite all --nmax 8 --seed 7

Exit codes: 0 success, 1 engine or verification failure, 2 usage error.
Logs go to stderr so stdout stays parseable.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from prob_bernoulli import __version__, hooks
from prob_bernoulli.bernoulli import PolyFamily, SpecialFamily, poly_sequence, special_sequence
from prob_bernoulli.exactnum import (
	LambdaPoly,
	embed,
	format_rational,
	format_ring_value,
	mode_of,
	parse_lambda,
	parse_rational,
)
from prob_bernoulli.exceptions import ProbBernoulliError, ValidationError
from prob_bernoulli.randvar import RandomVariable, parse_random_variable
from prob_bernoulli.represent import (
	expand_higher,
	expand_prob,
	expand_prob_degenerate,
	oracle_expand,
)
from prob_bernoulli.series import TruncatedSeries, XPolynomial
from prob_bernoulli.stirling import build_table, family_for
from prob_bernoulli.verify import ALL_SUITES, IdentityReport, is_known_suite, run_all, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

STIRLING_VARIANTS = ("classical", "degenerate", "prob", "prob-degenerate")
TABLE_COMMANDS = ("stirling", "bernoulli")


class CommandConfig(BaseModel):
	"""Validated invocation; built from argparse output before any engine call."""

	subcommand: Literal["stirling", "bernoulli", "expand", "verify"]
	output_format: Literal["json", "csv"] = "json"
	out: str | None = None
	strict: bool = False
	seed: int = 0
	log_level: str = "WARNING"
	nmax: int = Field(default=8, ge=0)
	rv: str | None = None
	lam: str | None = None
	kind: int | None = None
	variant: str | None = None
	family: str | None = None
	order: int = Field(default=1, ge=0)
	u: str | None = None
	poly: str | None = None
	basis: Literal["B", "beta"] = "B"
	form: int = Field(default=1, ge=1, le=3)
	method: Literal["engine", "oracle"] = "engine"
	suite: str | None = None

	@model_validator(mode="after")
	def _validate_command(self) -> "CommandConfig":
		try:
			self._check_specs()
		except ValidationError as e:
			raise ValueError(str(e))
		return self

	def _check_specs(self) -> None:
		if self.output_format == "csv" and self.subcommand not in TABLE_COMMANDS:
			raise ValidationError("CSV output is only available for the stirling and bernoulli tables")
		if not isinstance(logging.getLevelName(self.log_level.upper()), int):
			raise ValidationError(f"unknown log level '{self.log_level}'")
		if self.rv is not None:
			self.random_variable()
		if self.lam is not None:
			self.lambda_value()

		if self.subcommand == "stirling":
			if self.kind not in (1, 2):
				raise ValidationError("stirling needs --kind 1 or 2")
			if self.variant not in STIRLING_VARIANTS:
				raise ValidationError(f"stirling needs --variant, one of {', '.join(STIRLING_VARIANTS)}")
			if self.variant.startswith("prob") and self.rv is None:
				raise ValidationError(f"variant '{self.variant}' needs --rv")
			if self.variant.endswith("degenerate") and self.lam is None:
				raise ValidationError(f"variant '{self.variant}' needs --lambda")
		elif self.subcommand == "bernoulli":
			family = self.sequence_family()
			if family.degenerate and self.lam is None:
				raise ValidationError(f"{family.value} needs --lambda")
			if isinstance(family, PolyFamily) and family.probabilistic and self.rv is None:
				raise ValidationError(f"{family.value} needs --rv")
			if family in (SpecialFamily.FROBENIUS_EULER, SpecialFamily.DEG_FROBENIUS_EULER):
				if self.u is None:
					raise ValidationError(f"{family.value} needs --u")
				parse_rational(self.u)
		elif self.subcommand == "expand":
			self.polynomial()
			if self.basis == "beta" and self.lam is None:
				raise ValidationError("basis beta needs --lambda")
			if self.basis == "B" and self.lam is not None:
				raise ValidationError("basis B takes no --lambda; use --basis beta")
			if self.order != 1 and self.form != 1:
				raise ValidationError("--form applies to order 1 expansions only")
		elif self.suite is None:
			raise ValidationError("verify needs --suite")
		elif self.suite != ALL_SUITES and not is_known_suite(self.suite):
			raise ValidationError(f"unknown suite '{self.suite}'")

	def random_variable(self) -> RandomVariable:
		return parse_random_variable(self.rv or "constant1")

	def lambda_value(self) -> Any:
		return parse_lambda(self.lam) if self.lam is not None else None

	def sequence_family(self) -> PolyFamily | SpecialFamily:
		for enum in (PolyFamily, SpecialFamily):
			try:
				return enum(self.family)
			except ValueError:
				continue
		known = [f.value for f in PolyFamily] + [f.value for f in SpecialFamily]
		raise ValidationError(f"unknown family '{self.family}' (known: {', '.join(known)})")

	def polynomial(self) -> XPolynomial:
		if not self.poly or not self.poly.strip():
			raise ValidationError("expand needs a nonempty --poly coefficient list")
		return XPolynomial(tuple(parse_rational(c) for c in self.poly.split(",")))


# Serialization


def render(value: Any) -> Any:
	"""Exact JSON form: rationals as strings, lambda polynomials as coefficient lists."""
	if value is None or isinstance(value, (bool, str)):
		return value
	if isinstance(value, (Fraction, LambdaPoly)):
		return format_ring_value(value)
	if isinstance(value, int):
		return str(value)
	if isinstance(value, float):
		return f"{value:.6e}"
	if isinstance(value, XPolynomial):
		return [render(c) for c in value.coeffs]
	if isinstance(value, TruncatedSeries):
		return [render(c) for c in value.coeffs]
	if isinstance(value, dict):
		return {str(k): render(v) for k, v in value.items()}
	if isinstance(value, (list, tuple)):
		return [render(v) for v in value]
	return str(value)


def _csv_cell(value: Any) -> str:
	rendered = render(value)
	return rendered if isinstance(rendered, str) else json.dumps(rendered)


def _lambda_text(lam: Any) -> str | None:
	if lam is None:
		return None
	return "symbolic" if isinstance(lam, LambdaPoly) else format_rational(lam)


def _dump(payload: Any, rows: list[dict] | None, config: CommandConfig) -> str:
	if config.output_format == "json":
		return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
	buffer = io.StringIO()
	writer = csv.DictWriter(buffer, fieldnames=list(rows[0]) if rows else ["n"], lineterminator="\n")
	writer.writeheader()
	for row in rows or []:
		writer.writerow({k: _csv_cell(v) for k, v in row.items()})
	return buffer.getvalue()


def write_output(text: str, out: str | None) -> None:
	"""Write to stdout, or atomically to a file through a temp file and rename."""
	if out is None:
		sys.stdout.write(text)
		return
	directory = os.path.dirname(os.path.abspath(out))
	handle, temp_path = tempfile.mkstemp(dir=directory, prefix=".prob-bernoulli-", suffix=".tmp")
	try:
		with os.fdopen(handle, "w", encoding="utf-8") as f:
			f.write(text)
		os.replace(temp_path, out)
	except OSError:
		if os.path.exists(temp_path):
			os.unlink(temp_path)
		raise
	logger.info(f"wrote {out}")


# Commands


def cmd_stirling(config: CommandConfig) -> tuple[str, int]:
	family = family_for(config.kind, config.variant)
	Y = config.random_variable() if family.probabilistic else None
	lam = config.lambda_value() if family.degenerate else None
	table = build_table(family, Y, lam, config.nmax)

	rows = [{"n": n, "k": k, "value": value} for n, k, value in table.rows()]
	payload = {
		"family": family.value,
		"rv": Y.spec if Y else None,
		"lambda": _lambda_text(lam),
		"nmax": config.nmax,
		"rows": [{"n": n, "k": k, "value": render(value)} for n, k, value in table.rows()],
	}
	return _dump(payload, rows, config), EXIT_OK


def cmd_bernoulli(config: CommandConfig) -> tuple[str, int]:
	family = config.sequence_family()
	lam = config.lambda_value() if family.degenerate else None

	if isinstance(family, PolyFamily):
		Y = config.random_variable() if family.probabilistic else None
		seq = poly_sequence(family, Y, lam, config.order, config.nmax)
		rows = [{"n": n, "coeffs": entry} for n, entry in enumerate(seq.entries)]
		entries = [{"n": n, "coeffs": render(entry)} for n, entry in enumerate(seq.entries)]
		rv_spec = Y.spec if Y else None
	else:
		u = parse_rational(config.u) if config.u is not None else None
		seq = special_sequence(family, lam, config.order, u, config.nmax)
		rows = [{"n": n, "value": value} for n, value in enumerate(seq.entries)]
		entries = [{"n": n, "value": render(value)} for n, value in enumerate(seq.entries)]
		rv_spec = None

	payload = {
		"family": family.value,
		"rv": rv_spec,
		"lambda": _lambda_text(lam),
		"order": config.order,
		"u": config.u,
		"entries": entries,
	}
	return _dump(payload, rows, config), EXIT_OK


def cmd_expand(config: CommandConfig) -> tuple[str, int]:
	p = config.polynomial()
	Y = config.random_variable()
	lam = config.lambda_value()

	if config.method == "oracle":
		family = PolyFamily.PROB_BERN if lam is None else PolyFamily.PROB_DEG_BERN
		basis = poly_sequence(family, Y, lam, config.order, max(p.degree, 0))
		expansion = oracle_expand(p, basis)
	elif config.order != 1:
		expansion = expand_higher(p, Y, lam, config.order)
	elif lam is None:
		expansion = expand_prob(p, Y, config.form)
	else:
		expansion = expand_prob_degenerate(p, Y, lam, config.form)

	coefficients = expansion.coefficients
	if lam is not None:
		coefficients = tuple(embed(c, mode_of(lam)) for c in coefficients)
	payload = {
		"basis": expansion.family.value,
		"rv": Y.spec,
		"lambda": _lambda_text(lam),
		"order": expansion.r,
		"method": expansion.method.value,
		"coefficients": render(coefficients),
	}
	return _dump(payload, None, config), EXIT_OK


def _report_payload(report: IdentityReport) -> dict:
	return {
		"suite": report.suite,
		"nmax": report.nmax,
		"seed": report.seed,
		"passed": report.passed,
		"summary": render(report.summary),
		"cases": [
			{
				"case": case.case,
				"status": case.status,
				"diagnostic": case.diagnostic,
				"params": render(case.params),
				"lhs": render(case.lhs),
				"rhs": render(case.rhs),
				"reason": case.reason,
			}
			for case in report.cases
		],
	}


def cmd_verify(config: CommandConfig) -> tuple[str, int]:
	if config.suite == ALL_SUITES:
		reports = run_all(config.nmax, config.seed)
	else:
		reports = [run_suite(config.suite, config.nmax, config.seed)]

	if config.strict:
		passed = all(report.passed_strict for report in reports)
	else:
		passed = all(report.passed for report in reports)

	payload = {
		"suite": config.suite,
		"nmax": config.nmax,
		"seed": config.seed,
		"strict": config.strict,
		"passed": passed,
		"reports": [_report_payload(report) for report in reports],
	}
	return _dump(payload, None, config), EXIT_OK if passed else EXIT_FAILURE


COMMANDS = {
	"stirling": cmd_stirling,
	"bernoulli": cmd_bernoulli,
	"expand": cmd_expand,
	"verify": cmd_verify,
}


# Argument parsing


def build_parser() -> argparse.ArgumentParser:
	common = argparse.ArgumentParser(add_help=False)
	common.add_argument("--format", dest="output_format", default="json", help="json (default) or csv")
	common.add_argument("--out", default=None, help="write to this path atomically instead of stdout")
	common.add_argument("--strict", action="store_true", help="treat failed diagnostics as failures")
	common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
	common.add_argument("--log-level", default="WARNING", help="stderr log level (default WARNING)")

	parser = argparse.ArgumentParser(
		prog="prob-bernoulli",
		description=hooks.app_description,
	)
	parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
	subparsers = parser.add_subparsers(dest="subcommand", required=True)

	stirling = subparsers.add_parser("stirling", parents=[common], help="Stirling number tables")
	stirling.add_argument("--kind", type=int, help="1 or 2")
	stirling.add_argument("--variant", help=", ".join(STIRLING_VARIANTS))
	stirling.add_argument("--rv", help="random variable, e.g. gamma:alpha=5/2,beta=3")
	stirling.add_argument("--lambda", dest="lam", help="'symbolic' or a rational")
	stirling.add_argument("--nmax", type=int, default=8)

	bernoulli = subparsers.add_parser("bernoulli", parents=[common], help="polynomial and number sequences")
	bernoulli.add_argument("--family", required=True, help="e.g. Bern, ProbDegBern, BernSecondKind")
	bernoulli.add_argument("--order", type=int, default=1)
	bernoulli.add_argument("--rv")
	bernoulli.add_argument("--lambda", dest="lam")
	bernoulli.add_argument("--u", help="Frobenius-Euler parameter u != 1")
	bernoulli.add_argument("--nmax", type=int, default=8)

	expand = subparsers.add_parser("expand", parents=[common], help="expand a polynomial in a Bernoulli basis")
	expand.add_argument("--poly", required=True, help="ascending coefficients, e.g. 0,0,1 for x^2")
	expand.add_argument("--basis", default="B", help="B (plain) or beta (degenerate)")
	expand.add_argument("--rv", default="constant1")
	expand.add_argument("--lambda", dest="lam")
	expand.add_argument("--order", type=int, default=1)
	expand.add_argument("--form", type=int, default=1, help="coefficient form 1, 2 or 3")
	expand.add_argument("--method", default="engine", help="engine (default) or oracle")

	verify = subparsers.add_parser("verify", parents=[common], help="run identity suites")
	verify.add_argument("--suite", required=True, help=f"suite id or '{ALL_SUITES}'")
	verify.add_argument("--nmax", type=int, default=8)
	return parser


def _configure_logging(level: str) -> None:
	logging.basicConfig(
		level=getattr(logging, level.upper(), logging.WARNING),
		stream=sys.stderr,
		format="%(levelname)s %(name)s: %(message)s",
		force=True,
	)


def _pydantic_message(error: PydanticValidationError) -> str:
	return "; ".join(f"{'.'.join(str(p) for p in e['loc']) or 'config'}: {e['msg']}" for e in error.errors())


def main(argv: list[str] | None = None) -> int:
	"""Console entry point; returns the process exit code."""
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except SystemExit as e:
		# argparse exits 2 on usage errors and 0 for --help/--version
		return int(e.code or 0)

	_configure_logging(args.log_level)
	try:
		config = CommandConfig(**{k: v for k, v in vars(args).items() if v is not None})
	except PydanticValidationError as e:
		message = _pydantic_message(e)
		logger.error(f"invalid arguments: {message}")
		print(f"prob-bernoulli: error: {message}", file=sys.stderr)
		return EXIT_USAGE
	except ProbBernoulliError as e:
		# e.g. a random variable with E[Y] = 0
		logger.error(f"{args.subcommand}: {type(e).__name__}: {e!s}")
		print(f"prob-bernoulli: {type(e).__name__}: {e!s}", file=sys.stderr)
		return EXIT_FAILURE

	try:
		text, code = COMMANDS[config.subcommand](config)
		write_output(text, config.out)
		return code
	except ValidationError as e:
		logger.error(f"{config.subcommand}: {e!s}")
		print(f"prob-bernoulli: error: {e!s}", file=sys.stderr)
		return EXIT_USAGE
	except ProbBernoulliError as e:
		logger.error(f"{config.subcommand} failed: {type(e).__name__}: {e!s}")
		print(f"prob-bernoulli: {type(e).__name__}: {e!s}", file=sys.stderr)
		return EXIT_FAILURE
	except Exception as e:
		logger.exception(f"{config.subcommand} failed unexpectedly: {e!s}")
		return EXIT_FAILURE


if __name__ == "__main__":
	sys.exit(main())
