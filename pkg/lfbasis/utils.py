#################################
##### Utilities for lfbasis #####
#################################

import sys
from concurrent.futures import ThreadPoolExecutor, wait
from tqdm import tqdm

class LfbasisError(Exception):
	"""Base class for all errors raised by lfbasis"""

class InputError(LfbasisError):
	"""Malformed or inconsistent input (CLI exit code 2)"""

class PrecisionError(LfbasisError):
	"""Raised when an operation needs more precision than its inputs carry"""

class DivisionError(LfbasisError):
	"""Raised by exact division when the remainder is nonzero"""

class CertificationError(LfbasisError):
	"""Raised when a basis family is used at a level where it does not certify

	Args:
		message (str): Explanation of the failure
		certificate (Certificate, optional): The failing certificate

	"""
	def __init__(self, message, certificate=None):
		super().__init__(message)
		self.certificate = certificate

class SeparationError(LfbasisError):
	"""Raised when seed functions fail to separate two points

	Args:
		message (str): Explanation of the failure
		witness (tuple): The pair of point indices that are not separated

	"""
	def __init__(self, message, witness):
		super().__init__(message)
		self.witness = witness

def log(message, verbose):
	"""Writes a diagnostic line to stderr if verbose is set

	Args:
		message (str): The message to write
		verbose (bool): Whether to write anything at all

	"""
	if verbose:
		print(message, file=sys.stderr)

def base_digits(i, b, length=None):
	"""Returns the base-b digits of i, least significant first

	Args:
		i (int): Nonnegative integer
		b (int): Digit base, at least 2
		length (int, optional): Pad (or require) exactly this many digits

	Returns:
		list: Digits c_0, c_1, ... with i = sum c_j b^j

	"""
	assert i >= 0, "digit expansion needs a nonnegative integer, got {}".format(i)
	digits, n = [], i
	while n:
		n, c = divmod(n, b)
		digits.append(c)
	if length is not None:
		assert len(digits) <= length, "{} has more than {} digits in base {}".format(i, length, b)
		digits += [0] * (length - len(digits))
	return digits

def from_digits(digits, b):
	"""Inverse of base_digits"""
	value = 0
	for c in reversed(digits):
		value = value * b + c
	return value

def digit_sum(i, b):
	return sum(base_digits(i, b))

def is_power_of(n, b):
	"""Returns k with b**k == n, or None"""
	k = 0
	while n > 1 and n % b == 0:
		n //= b
		k += 1
	return k if n == 1 else None

def small_binomial(m, k):
	"""Exact binomial coefficient for 0 <= m < p, used inside Lucas products"""
	if k < 0 or k > m:
		return 0
	result = 1
	for t in range(k):
		result = result * (m - t) // (t + 1)
	return result

def lucas_binomial(m, k, p):
	"""Binomial coefficient binom(m, k) reduced mod p by Lucas' theorem

	Args:
		m (int): Upper argument, m >= 0
		k (int): Lower argument
		p (int): Prime

	Returns:
		int: binom(m, k) mod p as an integer in 0..p-1

	"""
	if k < 0 or m < 0:
		raise ValueError("lucas_binomial needs nonnegative arguments")
	result = 1
	while k:
		m, mi = divmod(m, p)
		k, ki = divmod(k, p)
		if ki > mi:
			return 0
		result = result * small_binomial(mi, ki) % p
	return result

def binomial_mod_p(m, k, p):
	"""binom(m, k) mod p for any integer m (negative m allowed) and k >= 0

	Negative upper arguments use binom(m, k) = (-1)^k binom(k - m - 1, k).

	"""
	if k < 0:
		return 0
	if m >= 0:
		return lucas_binomial(m, k, p)
	value = lucas_binomial(k - m - 1, k, p)
	return value if k % 2 == 0 else (-value) % p

def legendre_valuation(n, p):
	"""v_p(n!) = (n - s_p(n)) / (p - 1)"""
	return (n - digit_sum(n, p)) // (p - 1)

def compositions(total, parts, minimum=0):
	"""Yields every tuple of `parts` integers >= minimum summing to total"""
	if parts == 0:
		if total == 0:
			yield ()
		return
	if parts == 1:
		if total >= minimum:
			yield (total,)
		return
	for first in range(minimum, total - minimum * (parts - 1) + 1):
		for rest in compositions(total - first, parts - 1, minimum):
			yield (first,) + rest

def parallel_map(fn, items, num_workers=None, verbose=False, desc=None):
	"""Applies fn to every item, optionally across a thread pool, keeping input order

	With one worker (the default) this is a plain loop. Otherwise the items are submitted to a
	ThreadPoolExecutor and collected once every future has finished.

	Args:
		fn (callable): Function of one argument
		items (iterable): Inputs
		num_workers (int, optional): Number of threads; None or 1 runs sequentially
		verbose (bool, optional): Show a progress bar on stderr
		desc (str, optional): Label for the progress bar

	Returns:
		list: [fn(item) for item in items]

	"""
	items = list(items)
	progress = tqdm(total=len(items), desc=desc, file=sys.stderr, disable=not verbose)

	if not num_workers or num_workers <= 1:
		results = []
		for item in items:
			results.append(fn(item))
			progress.update(1)
		progress.close()
		return results

	def run(item):
		value = fn(item)
		progress.update(1)
		return value

	pool = ThreadPoolExecutor(num_workers)
	futures = [pool.submit(run, item) for item in items]
	wait(futures)
	pool.shutdown()
	progress.close()
	return [future.result() for future in futures]

class CheckResult:
	"""Outcome of a check-style operation; falsy when the check fails

	Args:
		passed (bool): Verdict
		witness (optional): JSON-friendly counterexample when the check fails
		details (dict, optional): Extra data reported alongside the verdict

	"""
	def __init__(self, passed, witness=None, details=None):
		self.passed = bool(passed)
		self.witness = witness
		self.details = details or {}

	def __bool__(self):
		return self.passed

	def to_json(self):
		result = {"pass": self.passed}
		if self.witness is not None:
			result["witness"] = self.witness
		result.update(self.details)
		return result

	def __repr__(self):
		if self.passed:
			return "CheckResult(pass)"
		return "CheckResult(fail, witness={})".format(self.witness)
