app_description = "Exact probabilistic Stirling numbers, Bernoulli polynomials and polynomial representations"

# Identity suites
# ---------------
# Suite id -> dotted path of a callable (recorder, nmax, seed).
# "all" runs them in this order.

verify_suites = {
	"orthogonality": "prob_bernoulli.verify.suite_orthogonality",
	"inverse-relations": "prob_bernoulli.verify.suite_inverse_relations",
	"difference-identities": "prob_bernoulli.verify.suite_difference_identities",
	"lowering": "prob_bernoulli.verify.suite_lowering",
	"inverse-pairs": "prob_bernoulli.verify.suite_inverse_pairs",
	"reflection": "prob_bernoulli.verify.suite_reflection",
	"integral-identities": "prob_bernoulli.verify.suite_integral_identities",
	"integral-generating-functions": "prob_bernoulli.verify.suite_integral_generating_functions",
	"miki-fpz": "prob_bernoulli.verify.suite_miki_fpz",
	"degenerate-miki": "prob_bernoulli.verify.suite_degenerate_miki",
	"distribution-closed-forms": "prob_bernoulli.verify.suite_distribution_closed_forms",
	"limits": "prob_bernoulli.verify.suite_limits",
	"log-mgf-expansion": "prob_bernoulli.verify.suite_log_mgf_expansion",
	"s2-from-differences": "prob_bernoulli.verify.suite_s2_from_differences",
	"falling-factorial-expansions": "prob_bernoulli.verify.suite_falling_factorial_expansions",
	"theorem-oracle": "prob_bernoulli.verify.suite_theorem_oracle",
	"higher-order-oracle": "prob_bernoulli.verify.suite_higher_order_oracle",
}

# Alternative ids accepted by run_suite and the CLI; "all" runs only the registry ids above

verify_suite_aliases = {
	"lemma51": "integral-identities",
	"remark52-series": "integral-generating-functions",
	"section5-crosschecks": "distribution-closed-forms",
	"barf-expansion": "log-mgf-expansion",
}

# Upper bounds on nmax per suite; symbolic-lambda suites get expensive quickly

suite_nmax_caps = {
	"degenerate-miki": 6,
	"theorem-oracle": 8,
	"higher-order-oracle": 6,
}
