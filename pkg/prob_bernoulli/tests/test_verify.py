# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Tests for the identity suites.

The cheaper suites run at moderate nmax; the oracle suites run at small nmax
with the default seeded generator. Case recording and the registry plumbing
are tested directly.
"""

import importlib
import unittest
from unittest.mock import patch

from prob_bernoulli import hooks
from prob_bernoulli.exceptions import DomainError, ValidationError
from prob_bernoulli.randvar import Kind, fixture_variables
from prob_bernoulli.utils.case_logger import FAIL, PASS, SKIPPED
from prob_bernoulli.utils.table_cache import cached_entry_count
from prob_bernoulli.verify import CaseRecorder, closed_form_crosscheck, run_all, run_suite


def exploding_suite(recorder, nmax, seed):
	raise RuntimeError("boom")


def engine_error_suite(recorder, nmax, seed):
	recorder.compare("first", 1, 1)
	raise DomainError("u = 1")


class TestRegistry(unittest.TestCase):
	"""hooks.verify_suites."""

	def test_every_path_resolves(self):
		for name, path in hooks.verify_suites.items():
			module_name, _, attr = path.rpartition(".")
			with self.subTest(suite=name):
				self.assertTrue(callable(getattr(importlib.import_module(module_name), attr)))

	def test_caps_name_registered_suites(self):
		self.assertTrue(set(hooks.suite_nmax_caps) <= set(hooks.verify_suites))

	def test_aliases_resolve(self):
		for alias, name in hooks.verify_suite_aliases.items():
			with self.subTest(alias=alias):
				self.assertIn(name, hooks.verify_suites)
		report = run_suite("lemma51", 6)
		self.assertEqual(report.suite, "integral-identities")
		self.assertTrue(report.passed)

	def test_unknown_suite(self):
		with self.assertRaises(ValidationError):
			run_suite("no-such", 3)
		with self.assertRaises(ValidationError):
			run_suite("reflection", -1)


class TestSuites(unittest.TestCase):
	"""Each registered suite passes on its grid."""

	def assertSuitePasses(self, name, nmax, seed=0):
		report = run_suite(name, nmax, seed)
		failures = [case for case in report.cases if case.status == FAIL and not case.diagnostic]
		self.assertTrue(report.passed, failures[:3])
		self.assertGreater(report.summary["total"], 0)
		return report

	def test_integral_identities(self):
		self.assertSuitePasses("integral-identities", 12)

	def test_acceptance_sizes(self):
		for name, nmax in (("orthogonality", 10), ("limits", 10), ("integral-identities", 12)):
			with self.subTest(suite=name):
				self.assertEqual(self.assertSuitePasses(name, nmax).nmax, nmax)

	def test_cheap_suites(self):
		for name, nmax in (
			("reflection", 10),
			("s2-from-differences", 12),
			("inverse-pairs", 12),
			("integral-generating-functions", 10),
			("falling-factorial-expansions", 8),
			("miki-fpz", 10),
		):
			with self.subTest(suite=name):
				self.assertSuitePasses(name, nmax)

	def test_stirling_suites(self):
		for name in ("orthogonality", "inverse-relations", "log-mgf-expansion"):
			with self.subTest(suite=name):
				self.assertSuitePasses(name, 5)

	def test_bernoulli_suites(self):
		for name in ("difference-identities", "lowering", "limits"):
			with self.subTest(suite=name):
				self.assertSuitePasses(name, 4)

	def test_degenerate_miki_is_capped(self):
		report = self.assertSuitePasses("degenerate-miki", 10)
		self.assertEqual(report.nmax, hooks.suite_nmax_caps["degenerate-miki"])

	def test_distribution_closed_forms(self):
		report = self.assertSuitePasses("distribution-closed-forms", 3)
		self.assertTrue(report.passed_strict)
		self.assertTrue(any(case.diagnostic for case in report.cases))

	def test_oracle_suites(self):
		for name in ("theorem-oracle", "higher-order-oracle"):
			with self.subTest(suite=name):
				self.assertSuitePasses(name, 3, seed=7)

	def test_seeded_runs_are_deterministic(self):
		first = run_suite("theorem-oracle", 3, seed=7)
		second = run_suite("theorem-oracle", 3, seed=7)
		self.assertEqual([c.case for c in first.cases], [c.case for c in second.cases])
		self.assertEqual([c.status for c in first.cases], [c.status for c in second.cases])


class TestCrosscheck(unittest.TestCase):
	"""Closed-form cross-checks for single variables."""

	def test_geometric(self):
		Y = next(Y for Y in fixture_variables() if Y.kind is Kind.GEOMETRIC)
		report = closed_form_crosscheck(Y, 3)
		self.assertTrue(report.passed_strict)

	def test_needs_positive_degree(self):
		with self.assertRaises(ValidationError):
			closed_form_crosscheck(fixture_variables()[0], 0)


class TestRecorder(unittest.TestCase):
	"""Case recording."""

	def test_outcomes(self):
		recorder = CaseRecorder("demo", 3, 0)
		self.assertTrue(recorder.compare("equal", 2, 2))
		self.assertFalse(recorder.compare("unequal", 2, 3, n=1))
		recorder.skip("later", "not applicable")
		recorder.check("diagnostic", False, reason="gap", diagnostic=True)

		report = recorder.report
		self.assertEqual([c.status for c in report.cases], [PASS, FAIL, SKIPPED, FAIL])
		self.assertEqual((report.cases[1].lhs, report.cases[1].rhs), (2, 3))
		self.assertEqual(report.cases[1].params, {"n": 1})
		self.assertIsNone(report.cases[0].lhs)
		self.assertFalse(report.passed)

	def test_diagnostics_only_fail_strict(self):
		recorder = CaseRecorder("demo", 3, 0)
		recorder.compare("equal", 1, 1)
		recorder.check("diagnostic", False, diagnostic=True)
		self.assertTrue(recorder.report.passed)
		self.assertFalse(recorder.report.passed_strict)

	def test_attempt_records_engine_errors(self):
		recorder = CaseRecorder("demo", 3, 0)

		def failing():
			raise DomainError("E[Y] = 0")

		self.assertIsNone(recorder.attempt("block", failing))
		self.assertEqual(recorder.report.cases[0].status, FAIL)
		self.assertIn("DomainError", recorder.report.cases[0].reason)


class TestRunAll(unittest.TestCase):
	"""run_all isolates suites from each other."""

	def test_failures_are_isolated(self):
		registry = {
			"reflection": "prob_bernoulli.verify.suite_reflection",
			"exploding": f"{__name__}.exploding_suite",
			"engine-error": f"{__name__}.engine_error_suite",
		}
		with patch.dict(hooks.verify_suites, registry, clear=True):
			reports = run_all(4)
		self.assertEqual([r.suite for r in reports], ["reflection", "exploding", "engine-error"])
		self.assertTrue(reports[0].passed)
		self.assertFalse(reports[1].passed)
		self.assertFalse(reports[2].passed)
		self.assertEqual(reports[2].cases[0].status, PASS)
		self.assertEqual(reports[2].cases[-1].case, "suite aborted")

	def test_table_cache_is_dropped_between_suites(self):
		registry = {"reflection": "prob_bernoulli.verify.suite_reflection"}
		with patch.dict(hooks.verify_suites, registry, clear=True):
			run_all(4)
		self.assertEqual(cached_entry_count(), 0)
