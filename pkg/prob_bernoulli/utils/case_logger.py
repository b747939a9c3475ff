# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Logging and aggregation of identity-check cases.

Every case an identity suite evaluates is recorded here, successful or not,
and suite reports are summarized into totals and a pass rate.
"""

import logging
from collections.abc import Iterable
from typing import Any

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


def log_identity_case(
	suite: str,
	case: str,
	status: str,
	lhs: Any = None,
	rhs: Any = None,
	reason: str | None = None,
	diagnostic: bool = False,
) -> None:
	"""
	Record the outcome of a single identity case.

	Passing cases are logged at debug level, skipped cases at info level and
	failures at warning level with both exact sides. Diagnostic cases never
	escalate beyond info.

	Args:
		suite: Suite identifier
		case: Case descriptor
		status: One of ``pass``, ``fail``, ``skipped``
		lhs: Left-hand side of a failed comparison
		rhs: Right-hand side of a failed comparison
		reason: Skip reason or extra context
		diagnostic: Whether the case is a non-exact diagnostic

	Example:
		log_identity_case("lemma51", "n=3", "pass")
	"""
	try:
		if status == PASS:
			logger.debug(f"[{suite}] {case}: pass")
		elif status == SKIPPED:
			logger.info(f"[{suite}] {case}: skipped ({reason or 'no reason given'})")
		elif diagnostic:
			logger.info(f"[{suite}] {case}: diagnostic did not meet its criterion ({reason or ''})")
		else:
			logger.warning(f"[{suite}] {case}: FAIL lhs={lhs} rhs={rhs}")
	except Exception as e:
		# Rendering a huge value must never break a suite run
		logger.error(f"Failed to log identity case {suite}/{case}: {e!s}")


def summarize_cases(cases: Iterable[Any]) -> dict[str, Any]:
	"""
	Aggregate case outcomes.

	Args:
		cases: Objects exposing ``status`` and ``diagnostic`` attributes

	Returns:
		Dictionary with total, passed, failed, skipped, diagnostic_failures
		and success_rate (percentage of decided non-diagnostic cases that passed)
	"""
	total = passed = failed = skipped = diagnostic_failures = 0
	for case in cases:
		total += 1
		if case.status == PASS:
			passed += 1
		elif case.status == SKIPPED:
			skipped += 1
		elif case.diagnostic:
			diagnostic_failures += 1
		else:
			failed += 1

	decided = passed + failed
	return {
		"total": total,
		"passed": passed,
		"failed": failed,
		"skipped": skipped,
		"diagnostic_failures": diagnostic_failures,
		"success_rate": round(passed / decided * 100, 2) if decided > 0 else 100.0,
	}


def failed_cases(cases: Iterable[Any], include_diagnostics: bool = False) -> list[Any]:
	"""Cases that failed, optionally including failed diagnostics."""
	return [
		case
		for case in cases
		if case.status == FAIL and (include_diagnostics or not case.diagnostic)
	]
