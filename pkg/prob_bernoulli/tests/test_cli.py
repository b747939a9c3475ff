# Copyright (c) 2025, Abhishek Chougule and contributors
# For license information, please see license.txt

"""
Tests for the batch command line.

``main`` is called in-process with stdout and stderr captured; exit codes
are compared against the documented contract.
"""

import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from prob_bernoulli.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main, render
from prob_bernoulli.exactnum import LambdaPoly
from prob_bernoulli.series import XPolynomial


def run_cli(*argv):
	stdout, stderr = io.StringIO(), io.StringIO()
	with redirect_stdout(stdout), redirect_stderr(stderr):
		code = main(list(argv))
	return code, stdout.getvalue(), stderr.getvalue()


def run_json(*argv):
	code, out, err = run_cli(*argv)
	if code != EXIT_OK:
		raise AssertionError(f"exit {code}: {err}")
	return json.loads(out)


def table_value(payload, n, k):
	return next(row["value"] for row in payload["rows"] if row["n"] == n and row["k"] == k)


class TestStirlingCommand(unittest.TestCase):
	def test_prob_exponential_diagonal(self):
		payload = run_json(
			"stirling", "--kind", "2", "--variant", "prob", "--rv", "exponential:alpha=3/2", "--nmax", "4"
		)
		self.assertEqual(payload["family"], "S2prob")
		self.assertEqual(table_value(payload, 4, 4), "16/81")

	def test_classical_first_kind(self):
		payload = run_json("stirling", "--kind", "1", "--variant", "classical", "--nmax", "3")
		self.assertEqual(table_value(payload, 3, 1), "2")
		self.assertIsNone(payload["lambda"])

	def test_degenerate_symbolic(self):
		payload = run_json(
			"stirling", "--kind", "2", "--variant", "degenerate", "--lambda", "symbolic", "--nmax", "2"
		)
		self.assertEqual(table_value(payload, 2, 1), ["1", "-1"])
		self.assertEqual(payload["lambda"], "symbolic")

	def test_csv(self):
		code, out, _ = run_cli("stirling", "--kind", "2", "--variant", "classical", "--nmax", "3", "--format", "csv")
		self.assertEqual(code, EXIT_OK)
		lines = out.splitlines()
		self.assertEqual(lines[0], "n,k,value")
		self.assertIn("3,2,3", lines)

	def test_missing_arguments(self):
		self.assertEqual(run_cli("stirling", "--variant", "prob", "--rv", "poisson:alpha=1")[0], EXIT_USAGE)
		self.assertEqual(run_cli("stirling", "--kind", "2", "--variant", "prob")[0], EXIT_USAGE)
		self.assertEqual(run_cli("stirling", "--kind", "2", "--variant", "degenerate")[0], EXIT_USAGE)

	def test_bad_random_variable(self):
		code, _, err = run_cli("stirling", "--kind", "2", "--variant", "prob", "--rv", "weibull:k=2")
		self.assertEqual(code, EXIT_USAGE)
		self.assertIn("error", err)

	def test_zero_mean_is_engine_failure(self):
		code, _, _ = run_cli("stirling", "--kind", "2", "--variant", "prob", "--rv", "custom:1,0,1")
		self.assertEqual(code, EXIT_FAILURE)

	def test_output_is_deterministic(self):
		argv = ("stirling", "--kind", "1", "--variant", "prob-degenerate", "--rv", "gamma:alpha=5/2,beta=3")
		argv += ("--lambda", "1/3", "--nmax", "4")
		self.assertEqual(run_cli(*argv)[1], run_cli(*argv)[1])


class TestBernoulliCommand(unittest.TestCase):
	def test_bernoulli_polynomials(self):
		payload = run_json("bernoulli", "--family", "Bern", "--nmax", "2")
		self.assertEqual(payload["entries"][2]["coeffs"], ["1/6", "-1", "1"])

	def test_second_kind_numbers(self):
		payload = run_json("bernoulli", "--family", "BernSecondKind", "--nmax", "2")
		self.assertEqual([entry["value"] for entry in payload["entries"]], ["1", "1/2", "-1/6"])

	def test_family_requirements(self):
		self.assertEqual(run_cli("bernoulli", "--family", "DegBern", "--nmax", "2")[0], EXIT_USAGE)
		self.assertEqual(run_cli("bernoulli", "--family", "NoSuch")[0], EXIT_USAGE)
		self.assertEqual(run_cli("bernoulli", "--family", "FrobeniusEuler", "--nmax", "2")[0], EXIT_USAGE)


class TestExpandCommand(unittest.TestCase):
	def test_x_squared(self):
		payload = run_json("expand", "--poly", "0,0,1", "--basis", "B", "--rv", "constant1")
		self.assertEqual(payload["coefficients"], ["1/3", "1", "1"])

	def test_constant_in_poisson_basis(self):
		payload = run_json("expand", "--poly", "5", "--rv", "poisson:alpha=3/2")
		self.assertEqual(payload["coefficients"], ["15/2"])

	def test_exponential_a0(self):
		payload = run_json("expand", "--poly", "0,0,0,0,1", "--rv", "exponential:alpha=3/2")
		self.assertEqual(payload["coefficients"][0], "2/3")

	def test_oracle_matches_engine(self):
		argv = ("expand", "--poly", "1,-2,0,3", "--basis", "beta", "--lambda", "symbolic", "--rv", "geometric:p=1/3")
		engine = run_json(*argv)
		oracle = run_json(*argv, "--method", "oracle")
		self.assertEqual(engine["coefficients"], oracle["coefficients"])
		self.assertEqual(oracle["method"], "oracle")

	def test_form_is_reported(self):
		payload = run_json("expand", "--poly", "0,0,1", "--basis", "beta", "--lambda", "1/3", "--form", "2")
		self.assertEqual(payload["method"], "prob_degenerate_form2")

	def test_usage_errors(self):
		self.assertEqual(run_cli("expand", "--poly", "0,1", "--format", "csv")[0], EXIT_USAGE)
		self.assertEqual(run_cli("expand", "--poly", "0,1", "--basis", "beta")[0], EXIT_USAGE)
		self.assertEqual(run_cli("expand", "--poly", "0,1", "--lambda", "1/2")[0], EXIT_USAGE)
		self.assertEqual(run_cli("expand", "--poly", "0,x")[0], EXIT_USAGE)

	def test_atomic_file_output(self):
		with tempfile.TemporaryDirectory() as directory:
			path = os.path.join(directory, "expansion.json")
			code, out, _ = run_cli("expand", "--poly", "0,0,1", "--out", path)
			self.assertEqual(code, EXIT_OK)
			self.assertEqual(out, "")
			with open(path, encoding="utf-8") as f:
				self.assertEqual(json.load(f)["coefficients"], ["1/3", "1", "1"])
			self.assertEqual(os.listdir(directory), ["expansion.json"])


class TestVerifyCommand(unittest.TestCase):
	def test_passing_suite(self):
		code, out, _ = run_cli("verify", "--suite", "integral-identities", "--nmax", "12")
		self.assertEqual(code, EXIT_OK)
		payload = json.loads(out)
		self.assertTrue(payload["passed"])
		self.assertEqual(payload["reports"][0]["suite"], "integral-identities")

	def test_suite_aliases(self):
		for alias, canonical, nmax in (
			("lemma51", "integral-identities", "12"),
			("remark52-series", "integral-generating-functions", "6"),
			("section5-crosschecks", "distribution-closed-forms", "3"),
			("barf-expansion", "log-mgf-expansion", "5"),
		):
			with self.subTest(suite=alias):
				code, out, err = run_cli("verify", "--suite", alias, "--nmax", nmax)
				self.assertEqual(code, EXIT_OK, err)
				payload = json.loads(out)
				self.assertEqual(payload["suite"], alias)
				self.assertEqual(payload["reports"][0]["suite"], canonical)

	def test_all_suites_are_deterministic(self):
		argv = ("verify", "--suite", "all", "--nmax", "8", "--seed", "7")
		first = run_cli(*argv)
		second = run_cli(*argv)
		self.assertEqual(first[0], EXIT_OK, first[2][-2000:])
		self.assertEqual(first[1], second[1])
		self.assertEqual(len(json.loads(first[1])["reports"]), 17)

	def test_unknown_suite(self):
		self.assertEqual(run_cli("verify", "--suite", "no-such")[0], EXIT_USAGE)

	def test_unknown_subcommand(self):
		self.assertEqual(run_cli("plot")[0], EXIT_USAGE)


class TestRender(unittest.TestCase):
	def test_exact_forms(self):
		self.assertEqual(render(Fraction(-3, 4)), "-3/4")
		self.assertEqual(render(7), "7")
		self.assertEqual(render(LambdaPoly((Fraction(1), Fraction(-1)))), ["1", "-1"])
		self.assertEqual(render(XPolynomial((Fraction(1, 2), Fraction(0), Fraction(1)))), ["1/2", "0", "1"])
		self.assertEqual(render({"n": 2, "ok": True}), {"n": "2", "ok": True})
