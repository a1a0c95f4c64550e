##############################################
##### Command Line Interface for lfbasis #####
##############################################

import argparse
import os
import sys

from sympy import legendre_symbol

from .baker_tate import *
from .carlitz import (CarlitzContext, addition_formula_check, carlitz_pi_order, expected_pi_order,
	infinity_witness)
from .charzero import LubinTateGroup
from .digit_principle import Expansion, certify, expand, span_check, sup_norm
from .hyperdiff import chain_rule, hyperdiff_local, hyperdiff_poly, taylor_check, taylor_map
from .jobs import *
from .local_fields import FieldSpec, LocalElem, Poly
from .measures import Measure, convolve, measure_transform
from .quotient_algebra import FunctionTable
from .report import dumps, print_summary, summarize, write_frames
from .utils import *

ACTIONS = {
	"carlitz": ["polys", "value", "factorial", "validate", "addition", "infinity", "order"],
	"hyperdiff": ["apply", "taylor", "chain"],
	"lubin-tate": ["endomorphism", "law", "check"],
	"baker": ["legendre", "digits"],
	"tate": ["simplify", "eval", "to-function", "from-function", "ball", "power"],
	"measure": ["transform", "convolve", "dirac"],
}

DEFAULT_LEVEL = 2
DEFAULT_PRECN = 4


class Outcome:
	"""What a job produced: the JSON result, a verdict, the result object and CSV frames"""

	def __init__(self, result, passed=True, obj=None, frames=None):
		self.result = result
		self.passed = passed
		self.obj = obj
		self.frames = frames or []


def parse_literal(text):
	"""An exact element literal: "5" is an integer, "1,0,1" or "[1,0,1]" a coefficient list"""
	if text is None:
		return None
	if isinstance(text, (int, list)):
		return text
	text = str(text).strip().strip("[]")
	try:
		if "," in text:
			return [int(c) for c in text.split(",") if c.strip()]
		return int(text)
	except ValueError:
		raise InputError("cannot parse element literal \"{}\"".format(text))

def parse_codes(text):
	literal = parse_literal(text)
	return [literal] if type(literal) == int else literal

def field_from_params(params):
	"""The field named by --field, or by the --q/--p/--r/--pi shorthands"""
	if params.get("field"):
		return LocalFieldSpec.parse(params["field"])
	if params.get("pi"):
		assert params.get("r"), "--pi needs the coefficient field size --r"
		return LocalFieldSpec.completion_at_pi(params["r"], parse_codes(params["pi"]))
	if params.get("p"):
		return LocalFieldSpec.padic(params["p"])
	if params.get("q"):
		return LocalFieldSpec.laurent(params["q"])
	return None

def _input_literal(params, options):
	"""Reads --input as a JSON payload path, or else as the --poly and -x literal"""
	value = params.get("input")
	if value is None:
		return None
	if value == "-" or os.path.isfile(value):
		return read_payload(value)
	options.setdefault("poly", value)
	options.setdefault("x", value)
	return None

def job_from_params(params):
	"""Merges a --job file with the command line; flags win over job-file values"""
	options = {k: v for k, v in params.items() if k not in ("subcommand", "action", "field", "family", "level",
		"precN", "json", "input", "job", "output-path", "verbose", "summary", "workers") and v is not None}
	input_payload = _input_literal(params, options)
	if params.get("job"):
		base = job_parser(params["job"]).to_job()
		assert params["subcommand"] in (None, base.subcommand), "job file is for {}, not {}".format(
			base.subcommand, params["subcommand"])
		field = field_from_params(params) or base.field
		payload = read_payload(params["json"]) if params.get("json") else input_payload or base.payload
		merged = dict(base.options)
		merged.update(options)
		return JobSpec(base.subcommand, field,
			params.get("family") or base.family,
			params["level"] if params.get("level") is not None else base.level,
			params["precN"] if params.get("precN") is not None else base.precN,
			payload, params.get("action") or base.action, merged)
	assert params.get("subcommand"), "a subcommand (or --job) is required"
	payload = read_payload(params["json"]) if params.get("json") else input_payload
	return JobSpec(params["subcommand"], field_from_params(params), params.get("family"), params.get("level"),
		params.get("precN"), payload, params.get("action"), options)

def _level(job):
	return job.level if job.level is not None else DEFAULT_LEVEL

def _precN(job):
	return job.precN if job.precN is not None else DEFAULT_PRECN

def _action(job):
	choices = ACTIONS[job.subcommand]
	action = job.action or choices[0]
	assert action in choices, "{} has no action {}, choose from {}".format(job.subcommand, action, ", ".join(choices))
	return action

def _family(job, field, level, name=None):
	name = name or job.family
	assert name, "the {} subcommand needs --family".format(job.subcommand)
	return build_family(name, field, level, job.options, job.option("workers"), job.option("verbose", False))

def _int_option(job, name, default=None):
	value = job.option(name, default)
	assert value is not None, "the {} subcommand needs --{}".format(job.subcommand, name)
	return int(value)

def builtin_function(field, level, precN, name):
	"""Tables of the built-in functions "identity" and "power:K" """
	if name == "identity":
		k = 1
	else:
		assert name.startswith("power:"), "unknown built-in function {}".format(name)
		k = int(name.split(":")[1])
	return FunctionTable.tabulate(field, level, precN, lambda x: field.elem(x, precN) ** k)


def run_certify(job):
	field = job.require_field()
	level = _level(job)
	family = _family(job, field, level)
	cert = certify(family, level, job.option("mode"))
	frames = [cert.evidence_matrix.to_frame()] if cert.evidence_matrix is not None else []
	return Outcome(cert.to_json(), cert.passed, cert, frames)

def run_span(job):
	field = job.require_field()
	level = _level(job)
	result = span_check(_family(job, field, level), level)
	return Outcome(result.to_json(), result.passed)

def run_expand(job):
	if job.payload is not None:
		table = FunctionTable.from_json(job.payload)
	else:
		field = job.require_field()
		table = builtin_function(field, _level(job), _precN(job), job.option("function", "identity"))
	family = _family(job, table.field, table.level)
	expansion = expand(table, family, job.precN if job.payload is not None else None)
	result = expansion.to_json()
	result["norms"] = {"sup": str(sup_norm(table)), "coeff": str(expansion.coeff_norm())}
	return Outcome(result, True, expansion, [expansion.to_frame()])

def run_eval(job):
	if job.payload is not None:
		expansion = Expansion.from_json(job.require_payload())
		family = _family(job, expansion.field, expansion.level, job.family or expansion.label)
		table = expansion.evaluate(family)
	else:
		field = job.require_field()
		family = _family(job, field, _level(job))
		table = family.table(_int_option(job, "index"), _level(job), _precN(job))
	return Outcome(table.to_json(), True, table, [table.to_frame()])

def run_carlitz(job):
	action = _action(job)
	field = job.field
	r = job.option("r") or (field.r if field is not None else None) or job.option("q")
	assert r, "the carlitz subcommand needs --r, --q or --field"
	context = CarlitzContext(r)
	if action == "polys":
		j = _int_option(job, "j")
		return Outcome({"j": j, "D": context.D(j).to_json(), "e": context.e(j).to_json(),
			"E": context.E(j).to_json()})
	if action == "value":
		i = _int_option(job, "index")
		h = Poly(context.base, parse_codes(job.option("poly", "0")))
		return Outcome({"index": i, "h": h.to_json(), "value": context.script_E_value(i, h).to_json()})
	if action == "factorial":
		i = _int_option(job, "index")
		return Outcome({"index": i, "factorial": context.factorial(i).to_json()})
	if action == "validate":
		result = context.validate_recursions(_int_option(job, "j"))
	elif action == "addition":
		result = addition_formula_check(_int_option(job, "index"), _precN(job), _int_option(job, "samples", 20),
			r, job.option("seed"), context)
	elif action == "infinity":
		result = infinity_witness(r, _int_option(job, "j"), context)
	else:
		assert field is not None and field.kind == "completion_at_pi", "carlitz order needs a completion at pi"
		k = _int_option(job, "j")
		order = carlitz_pi_order(k, field.uniformizer, context)
		expected = expected_pi_order(field.r, field.d, k)
		result = CheckResult(order == expected, None if order == expected else [k, order, expected],
			{"order": order, "expected": expected})
	return Outcome(result.to_json(), result.passed)

def run_hyperdiff(job):
	action = _action(job)
	j = _int_option(job, "j")
	field = job.field
	if action == "chain":
		assert field is not None and field.kind == "completion_at_pi", "the chain rule needs a completion at pi"
		result = chain_rule(j, field.uniformizer, parse_codes(job.option("poly", "0")), _precN(job), field.r)
		return Outcome(result.to_json(), result.passed)
	if action == "apply" and job.payload is not None:
		x = LocalElem.from_json(job.require_field(), job.payload)
		return Outcome(hyperdiff_local(j, x).to_json())
	if field is not None and field.kind == "padic":
		raise InputError("hyperderivatives are defined in characteristic p only")
	q = job.option("q") or job.option("r") or (field.coefficient_field.q if field is not None else None)
	assert q, "hyperdiff needs --q, --r or --field"
	f = Poly(FieldSpec.of_order(q), parse_codes(job.option("poly", "0")))
	if action == "apply":
		return Outcome({"j": j, "f": f.to_json(), "value": hyperdiff_poly(j, f).to_json()})
	check = taylor_check(f, j)
	result = check.to_json()
	result["map"] = [g.to_json() for g in taylor_map(f, j)]
	return Outcome(result, check.passed)

def run_lubin_tate(job):
	action = _action(job)
	field = job.require_field()
	precN = _precN(job)
	frobenius = job.option("frobenius")
	group = LubinTateGroup(field, parse_codes(frobenius) if frobenius is not None else None,
		job.option("degree") or field.q ** max(_level(job), 2))
	if action == "endomorphism":
		a = parse_literal(job.option("a", 1))
		coeffs = group.endomorphism(field.exact(a), precN)
		return Outcome({"group": group.to_json(), "a": a, "precN": precN, "coeffs": [c.to_json() for c in coeffs]})
	if action == "law":
		law = group.formal_group_law(precN)
		terms = [{"exponents": list(key), "coeff": law[key].to_json()} for key in sorted(law, key=lambda k: (sum(k), k))]
		return Outcome({"group": group.to_json(), "precN": precN, "law": terms})
	a = field.exact(parse_literal(job.option("a", 1)))
	b = field.exact(parse_literal(job.option("b", 1)))
	checks = {
		"sum": group.sum_check(a, b, precN),
		"composition": group.composition_check(a, b, precN),
		"associativity": group.associativity_check(precN),
	}
	j = 0
	while group.q ** j <= group.M:
		checks["lifted_digit_{}".format(j)] = group.lifted_digit_check(j)
		j += 1
	passed = all(checks.values())
	return Outcome({"pass": passed, "checks": {k: v.to_json() for k, v in checks.items()}}, passed)

def run_baker(job):
	action = _action(job)
	field = job.require_field()
	if action == "legendre":
		assert field.kind == "padic", "the quadratic character is computed over Q_p"
		family = baker_family(field)
		values, witness = {}, None
		for x in range(1, field.p):
			value = baker_legendre(field.p, x, family)
			values[str(x)] = value
			if witness is None and value != legendre_symbol(x, field.p):
				witness = x
		return Outcome(CheckResult(witness is None, witness, {"values": values}).to_json(), witness is None)
	precN = _precN(job)
	count = job.option("count", _level(job))
	x = field.elem(field.exact(parse_literal(job.option("x", 0))), max(precN, count))
	digits = teichmuller_digits(x, count, precN)
	return Outcome({"x": x.to_json(), "digits": [w.to_json() for w in digits]})

def run_tate(job):
	action = _action(job)
	level, precN = _level(job), _precN(job)
	if action in ("ball", "power"):
		field = job.require_field()
		if action == "ball":
			a = field.elem(field.exact(parse_literal(job.option("x", 0))), max(precN, level))
			series = ball_indicator_series(a, level, precN)
		else:
			series = analytic_power(field, _int_option(job, "index"), level, precN)
		return Outcome(series.to_json(), True, series)
	if action == "from-function":
		table = FunctionTable.from_json(job.require_payload())
		series = function_to_series(table, _family(job, table.field, table.level, job.family or "baker"))
		return Outcome(series.to_json(), True, series)
	series = TateSeries.from_json(job.require_payload(), job.field)
	if action == "simplify":
		simplified = q_simplify(series)
		return Outcome(simplified.to_json(), True, simplified)
	if action == "eval":
		field = series.field
		x = field.elem(field.exact(parse_literal(job.option("x", 0))), precN)
		return Outcome(evaluate_at_point(series, x).to_json())
	table = series_to_function(q_simplify(series), level, precN, job.option("workers"), job.option("verbose", False))
	return Outcome(table.to_json(), True, table, [table.to_frame()])

def run_measure(job):
	action = _action(job)
	if action == "dirac":
		field = job.require_field()
		nu = Measure.dirac(field, _level(job), _precN(job), field.exact(parse_literal(job.option("x", 0))))
		return Outcome(nu.to_json(), True, nu, [nu.to_frame()])
	nu = Measure.from_json(job.require_payload())
	if action == "convolve":
		assert job.option("other"), "measure convolve needs the second measure (--other)"
		mu = Measure.from_json(read_payload(job.option("other")))
		product = convolve(nu, mu, job.option("workers"), job.option("verbose", False))
		return Outcome(product.to_json(), True, product, [product.to_frame()])
	family = _family(job, nu.field, nu.level, job.family or "carlitz")
	series = measure_transform(nu, family, job.option("bound"))
	return Outcome(series.to_json(), True, series, [series.to_frame()])

RUNNERS = {
	"certify": run_certify,
	"span": run_span,
	"expand": run_expand,
	"eval": run_eval,
	"carlitz": run_carlitz,
	"hyperdiff": run_hyperdiff,
	"lubin-tate": run_lubin_tate,
	"baker": run_baker,
	"tate": run_tate,
	"measure": run_measure,
}

def run(job):
	"""Runs one job

	Args:
		job (JobSpec): The validated job

	Returns:
		Outcome: JSON result, verdict, result object and frames for CSV export

	"""
	log("running {}".format(job), job.option("verbose", False))
	return RUNNERS[job.subcommand](job)


def main(argv=None):
	"""
	Main function for running lfbasis from the command line.
	"""
	parser = argparse.ArgumentParser(description="""
	Exact construction, certification and use of orthonormal bases of continuous functions on the integers
	of local fields. Results are printed as JSON on stdout; diagnostics go to stderr.
	""")

	# what to run
	parser.add_argument("subcommand", nargs="?", choices=SUBCOMMANDS, help="Operation to run")
	parser.add_argument("action", nargs="?", default=None, help="Action of the subcommand, e.g. tate simplify")
	parser.add_argument("--job", default=None, help="JSON or YAML job file")

	# field and family
	parser.add_argument("--field", default=None, help="laurent:Q, padic:P, pi:R:c0,c1,... or an inline JSON field")
	parser.add_argument("--q", type=int, default=None, help="Residue field size of F_q((T))")
	parser.add_argument("--p", type=int, default=None, help="Prime of Q_p")
	parser.add_argument("--r", type=int, default=None, help="Coefficient field size for a completion at pi")
	parser.add_argument("--pi", default=None, help="Coefficients of the monic irreducible pi, constant term first")
	parser.add_argument("--family", default=None, choices=list(FAMILIES), help="Basis family")
	parser.add_argument("--mode", default=None, choices=["linear", "sublinear", "general"], help="Override the certification mode")
	parser.add_argument("--level", type=int, default=None, help="Level n")
	parser.add_argument("--precN", dest="precN", type=int, default=None, help="Precision")

	# payloads and operands
	parser.add_argument("--json", default=None, help="Path to a JSON payload, - for stdin")
	parser.add_argument("--input", default=None, help="JSON payload path, or a --poly and -x literal")
	parser.add_argument("--other", default=None, help="Path to a second JSON payload")
	parser.add_argument("--function", default=None, help="Built-in function to expand: identity or power:K")
	parser.add_argument("-i", "--index", type=int, default=None, help="Basis index i")
	parser.add_argument("-j", "--j", dest="j", type=int, default=None, help="Order or seed index j")
	parser.add_argument("--poly", default=None, help="Polynomial coefficients c0,c1,...")
	parser.add_argument("-x", "--x", default=None, help="Element literal: an integer or coefficients c0,c1,...")
	parser.add_argument("-a", "--a", default=None, help="Endomorphism parameter a")
	parser.add_argument("-b", "--b", default=None, help="Second endomorphism parameter b")
	parser.add_argument("--frobenius", default=None, help="Frobenius series coefficients f0,f1,...")
	parser.add_argument("--degree", type=int, default=None, help="Truncation degree of Lubin-Tate series")
	parser.add_argument("--bound", type=int, default=None, help="Index bound of a measure transform")
	parser.add_argument("--count", type=int, default=None, help="Number of Teichmuller digits")
	parser.add_argument("--samples", type=int, default=None, help="Number of random samples")
	parser.add_argument("--seed", type=int, default=None, help="Random seed")

	# output
	parser.add_argument("-o", "--output-path", dest="output-path", default=None, help="Write the result table as CSV")
	parser.add_argument("--summary", action="store_true", default=False, help="Print a readable summary to stderr")
	parser.add_argument("-v", "--verbose", action="store_true", default=False, help="Flag for verbose output")
	parser.add_argument("--workers", type=int, default=None, help="Threads used to tabulate over points")

	params = vars(parser.parse_args(argv))
	verbose = params["verbose"]

	try:
		job = job_from_params(params)
		job.options.setdefault("verbose", verbose)
		job.options.setdefault("workers", params["workers"])
		outcome = run(job)
	except (AssertionError, InputError) as e:
		print("lfbasis: input error: {}".format(e), file=sys.stderr)
		sys.exit(2)
	except CertificationError as e:
		print("lfbasis: {}".format(e), file=sys.stderr)
		if e.certificate is not None:
			print(dumps(e.certificate.to_json()))
		sys.exit(1)
	except SeparationError as e:
		print("lfbasis: {} (points {})".format(e, list(e.witness)), file=sys.stderr)
		sys.exit(1)
	except (PrecisionError, DivisionError) as e:
		print("lfbasis: {}".format(e), file=sys.stderr)
		sys.exit(1)

	print(dumps(outcome.result))
	if params["summary"]:
		print_summary(summarize(job, outcome.result, outcome.obj))
	if params["output-path"]:
		path = write_frames(outcome.frames, params["output-path"], job.subcommand)
		log("wrote {}".format(path), verbose)
	if not outcome.passed:
		sys.exit(1)

if __name__ == "__main__":
	main()
