###############################
##### Reports for lfbasis #####
###############################

import json
import os
import sys
import pandas as pd

from jinja2 import Template

CHECK_SUMMARY = Template("""{{ title }}: {% if result["pass"] %}PASS{% else %}FAIL{% endif %}
{%- if "witness" in result %}
Witness: {{ result.witness }}
{%- endif %}
{%- for key, value in details %}
{{ key }}: {{ value }}
{%- endfor %}""")

JOB_HEADER = Template("""lfbasis {{ job.subcommand }}{% if job.action %} {{ job.action }}{% endif %}
{%- if job.field is not none %} over {{ job.field }}{% endif %}
{%- if job.family %}, family {{ job.family }}{% endif %}
{%- if job.level is not none %}, level {{ job.level }}{% endif %}
{%- if job.precN is not none %}, precN {{ job.precN }}{% endif %}""")


def dumps(result):
	"""Deterministic JSON text for a result"""
	return json.dumps(result, sort_keys=True, indent=2)

def summarize(job, result, obj=None):
	"""Human-readable summary of a job result

	Objects with a summary() method (certificates, expansions, series) render their own template;
	anything else is shown as a check result.

	Args:
		job (JobSpec): The job that produced the result
		result (dict): JSON result
		obj (optional): The result object

	Returns:
		str: the summary

	"""
	header = JOB_HEADER.render(job=job)
	if obj is not None and hasattr(obj, "summary"):
		return header + "\n" + obj.summary()
	if type(result) == dict and "pass" in result:
		details = [(k, v) for k, v in sorted(result.items()) if k not in ("pass", "witness")]
		return header + "\n" + CHECK_SUMMARY.render(title="Check", result=result, details=details)
	return header

def print_summary(text):
	print(text, file=sys.stderr)

def merge_frames(frames):
	"""Stacks the frames of one job (all with the same columns) into one

	Args:
		frames (list): pandas DataFrames

	Returns:
		pandas.core.frame.DataFrame: the stacked frame, with the original row order kept

	"""
	return pd.concat(frames, axis=0, join="inner", ignore_index=True)

def write_frames(frames, output_path, name):
	"""Writes the job's frames to CSV

	Args:
		frames (list): pandas DataFrames to stack
		output_path (str): Directory, or a path ending in .csv
		name (str): File stem used when output_path is a directory

	Returns:
		str: path of the written file

	"""
	assert frames, "the job produced no table to export"
	if output_path.endswith(".csv"):
		path = output_path
	else:
		assert os.path.isdir(output_path), "output directory {} does not exist".format(output_path)
		path = os.path.join(output_path, "{}.csv".format(name))
	merge_frames(frames).to_csv(path, index=False)
	return path
