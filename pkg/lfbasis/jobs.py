#################################
##### Job Specs for lfbasis #####
#################################

import json
import os
import sys
import yaml

from .baker_tate import baker_family
from .carlitz import global_carlitz_family, local_carlitz_family
from .charzero import LubinTateGroup, digit_binomial_family, lubin_tate_family
from .hyperdiff import completion_hyperdiff_family, local_hyperdiff_family
from .local_fields import LocalFieldSpec
from .utils import *

SUBCOMMANDS = ["certify", "span", "expand", "eval", "carlitz", "hyperdiff", "lubin-tate", "baker", "tate", "measure"]
JOB_KEYS = ["subcommand", "action", "field", "family", "level", "precN", "json", "options"]


class JobSpec:
	"""One invocation of the command line tool

	Args:
		subcommand (str): One of SUBCOMMANDS
		field (LocalFieldSpec, optional): The local field
		family (str, optional): Family selector, a key of FAMILIES
		level (int, optional): The level n
		precN (int, optional): Working precision
		payload (dict, optional): Parsed JSON input
		action (str, optional): Subcommand action, e.g. "simplify" for tate
		options (dict, optional): Remaining subcommand flags

	"""

	def __init__(self, subcommand, field=None, family=None, level=None, precN=None, payload=None, action=None,
			options=None):
		assert subcommand in SUBCOMMANDS, "unknown subcommand {}".format(subcommand)
		assert family is None or family in FAMILIES, "unknown family {}, choose from {}".format(
			family, ", ".join(FAMILIES))
		assert level is None or (type(level) == int and level >= 0), "level must be a nonnegative integer"
		assert precN is None or (type(precN) == int and precN >= 1), "precN must be a positive integer"
		assert payload is None or type(payload) in (dict, list), "JSON payload must be an object or a list"
		self.subcommand = subcommand
		self.field = field
		self.family = family
		self.level = level
		self.precN = precN
		self.payload = payload
		self.action = action
		self.options = options or {}

	def option(self, name, default=None):
		value = self.options.get(name)
		return default if value is None else value

	def require_field(self):
		assert self.field is not None, "the {} subcommand needs --field (or --q/--p/--r with --pi)".format(
			self.subcommand)
		return self.field

	def require_payload(self):
		assert self.payload is not None, "the {} subcommand needs a JSON payload (--json)".format(self.subcommand)
		return self.payload

	def __repr__(self):
		return "JobSpec({}, field={}, family={}, level={}, precN={})".format(
			self.subcommand, self.field, self.family, self.level, self.precN)


def read_payload(path):
	"""Loads a JSON payload from a path, or from standard input when path is "-"

	Args:
		path (str): Path to a JSON file or "-"

	Returns:
		dict: parsed payload

	"""
	if path == "-":
		text = sys.stdin.read()
	else:
		assert os.path.isfile(path), "JSON payload {} does not exist".format(path)
		with open(path) as f:
			text = f.read()
	try:
		return json.loads(text)
	except ValueError as e:
		raise InputError("JSON payload {} is malformed: {}".format(path, e))

def _field_from(value):
	if value is None or isinstance(value, LocalFieldSpec):
		return value
	if type(value) == dict:
		return LocalFieldSpec.from_json(value)
	return LocalFieldSpec.parse(str(value))

def _check_job(job, where):
	assert type(job) == dict, "{} job is not a dictionary".format(where)
	assert "subcommand" in job.keys(), "{} job does not contain \"subcommand\" key".format(where)
	for key in job.keys():
		assert key in JOB_KEYS, "{} job has unknown key \"{}\"".format(where, key)


class JSONJobParser:
	"""Job parser for JSON files

	Args:
		file_path (str): Path to the JSON job file

	"""
	def __init__(self, file_path):
		with open(file_path) as f:
			contents = f.read()
		try:
			self._job = json.loads(contents)
		except ValueError as e:
			raise InputError("JSON job {} is malformed: {}".format(file_path, e))
		_check_job(self._job, "JSON")
		self._base = os.path.dirname(file_path)

	def get_subcommand(self):
		return self._job["subcommand"]

	def get_action(self):
		return self._job.get("action")

	def get_field(self):
		"""Returns the field of the job

		Returns:
			LocalFieldSpec: the parsed field, or None if the job has none

		"""
		return _field_from(self._job.get("field"))

	def get_family(self):
		return self._job.get("family")

	def get_level(self):
		return self._job.get("level")

	def get_precN(self):
		return self._job.get("precN")

	def get_payload(self):
		"""Returns the JSON payload, read from disk if the job names a path relative to the job file

		Returns:
			dict: the payload, or None

		"""
		payload = self._job.get("json")
		if type(payload) == str:
			return read_payload(payload if payload == "-" else os.path.join(self._base, payload))
		return payload

	def get_options(self):
		options = self._job.get("options") or {}
		assert type(options) == dict, "job options are not a dictionary"
		return options

	def to_job(self):
		return JobSpec(self.get_subcommand(), self.get_field(), self.get_family(), self.get_level(),
			self.get_precN(), self.get_payload(), self.get_action(), self.get_options())

class YAMLJobParser(JSONJobParser):
	"""Job parser for YAML files

	Args:
		file_path (str): Path to the YAML job file

	"""
	def __init__(self, file_path):
		with open(file_path) as f:
			try:
				self._job = yaml.safe_load(f)
			except yaml.YAMLError as e:
				raise InputError("YAML job {} is malformed: {}".format(file_path, e))
		_check_job(self._job, "YAML")
		self._base = os.path.dirname(file_path)

def job_parser(file_path):
	"""Picks the job parser from the file extension"""
	assert os.path.isfile(file_path), "job file {} does not exist".format(file_path)
	if file_path.endswith((".yml", ".yaml")):
		return YAMLJobParser(file_path)
	return JSONJobParser(file_path)


def _require_kind(field, kinds, name):
	if field.kind not in kinds:
		raise InputError("the {} family lives on {}, not on {}".format(name, " or ".join(kinds), field))

def _carlitz(field, level, options):
	_require_kind(field, ["laurent"], "carlitz")
	return local_carlitz_family(field.q)

def _carlitz_at_pi(field, level, options):
	_require_kind(field, ["completion_at_pi"], "carlitz-at-pi")
	return global_carlitz_family(field.r, field.uniformizer)

def _hyperdiff(field, level, options):
	_require_kind(field, ["laurent"], "hyperdiff")
	return local_hyperdiff_family(field.q)

def _hyperdiff_at_pi(field, level, options):
	_require_kind(field, ["completion_at_pi"], "hyperdiff-at-pi")
	return completion_hyperdiff_family(field.r, field.uniformizer)

def _digit_binomial(field, level, options):
	_require_kind(field, ["padic"], "digit-binomial")
	return digit_binomial_family(field.p)

def _lubin_tate(field, level, options):
	_require_kind(field, ["padic", "laurent"], "lubin-tate")
	degree = options.get("degree") or field.q ** max(level or 0, 2)
	frobenius = options.get("frobenius")
	if type(frobenius) == str:
		frobenius = [int(c) for c in frobenius.strip("[]").split(",") if c.strip()]
	group = LubinTateGroup(field, frobenius, degree)
	return lubin_tate_family(group, level)

def _baker(field, level, options):
	return baker_family(field)

FAMILIES = {
	"carlitz": _carlitz,
	"carlitz-at-pi": _carlitz_at_pi,
	"hyperdiff": _hyperdiff,
	"hyperdiff-at-pi": _hyperdiff_at_pi,
	"digit-binomial": _digit_binomial,
	"lubin-tate": _lubin_tate,
	"baker": _baker,
}

def build_family(name, field, level=None, options=None, num_workers=None, verbose=False):
	"""Builds a registered basis family over a field

	Args:
		name (str): Family selector
		field (LocalFieldSpec): The local field
		level (int, optional): Level the family will be used at
		options (dict, optional): Family options ("frobenius", "degree" for lubin-tate)
		num_workers (int, optional): Threads used to tabulate seeds
		verbose (bool, optional): Progress output

	Returns:
		BasisFamily: the family

	Raises:
		InputError: if the family is not defined over the field

	"""
	assert name in FAMILIES, "unknown family {}, choose from {}".format(name, ", ".join(FAMILIES))
	family = FAMILIES[name](field, level, options or {})
	family.num_workers = num_workers
	family.verbose = verbose
	return family
