##################################################
##### Baker Basis and Tate Model for lfbasis #####
##################################################

from fractions import Fraction

from jinja2 import Template

from .digit_principle import BasisFamily, expand
from .local_fields import LocalElem, LocalFieldSpec, teichmuller_digits
from .quotient_algebra import FunctionTable
from .utils import *


def baker_family(L):
    """Seeds omega_j, the Teichmuller digits of x in powers of the field's uniformizer; digit base q

    The m-th function is omega_0(x)^(c_0) omega_1(x)^(c_1) ... over the base-q digits of m.

    """
    cache = {}

    def seed(j, x, precN):
        key = (x, precN)
        digits = cache.get(key)
        if digits is None or len(digits) <= j:
            digits = teichmuller_digits(L.elem(x, max(precN, j + 1)), j + 1, precN)
            cache[key] = digits
        return digits[j]

    return BasisFamily("baker", L, L.q, seed, "general", loss=lambda j: j, additive=L.kind == "laurent",
        description="Teichmuller digit products over {}".format(L))

def baker_legendre(p, x, family=None):
    """omega_0(x)^((p-1)/2) mod p for a unit x of Z_p, as 1 or -1"""
    assert p > 2, "the quadratic character needs an odd prime"
    family = family or baker_family(LocalFieldSpec.padic(p))
    value = family.evaluate((p - 1) // 2, x, 1).residue()
    return -1 if value == p - 1 else value


def monomial_key(exponents):
    """Normalizes exponents (dict, list of [idx, e] pairs, or tuple of pairs) to a sorted tuple of
    (idx, e) pairs with e > 0

    """
    if isinstance(exponents, dict):
        pairs = exponents.items()
    else:
        pairs = [tuple(pair) for pair in exponents]
    merged = {}
    for idx, e in pairs:
        assert idx >= 0 and e >= 0, "exponents and variable indices are nonnegative"
        merged[idx] = merged.get(idx, 0) + e
    return tuple(sorted((idx, e) for idx, e in merged.items() if e))

def _key_product(a, b):
    merged = dict(a)
    for idx, e in b:
        merged[idx] = merged.get(idx, 0) + e
    return tuple(sorted(merged.items()))

def _degree(key):
    return sum(e for _, e in key)


class TateSeries:
    """A finitely supported series sum c_k X^k in the variables X_0, X_1, ... with LocalElem
    coefficients

    Args:
        field (LocalFieldSpec): Coefficient field K
        terms (dict, optional): {exponent key: LocalElem}
        precN (int, optional): Precision used for integer constants

    """

    def __init__(self, field, terms=None, precN=None):
        self.field = field
        self.precN = precN
        self.terms = {}
        for key, c in (terms or {}).items():
            key = monomial_key(key)
            if isinstance(c, int):
                c = field.from_int(c, precN)
            if key in self.terms:
                c = self.terms[key] + c
            self.terms[key] = c
        self.terms = {k: c for k, c in self.terms.items() if not c.is_zero()}

    def _make(self, terms):
        return type(self)(self.field, terms, self.precN)

    @classmethod
    def constant(cls, field, c, precN):
        return cls(field, {(): c}, precN)

    @classmethod
    def variable(cls, field, j, precN):
        return cls(field, {((j, 1),): field.one(precN)}, precN)

    def _lift(self, other):
        if isinstance(other, TateSeries):
            return other
        return TateSeries(self.field, {(): other}, self.precN)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return self._make(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._make({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        terms = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                key = _key_product(a, b)
                terms[key] = terms[key] + x * y if key in terms else x * y
        return self._make(terms)

    __rmul__ = __mul__

    def __pow__(self, e):
        assert e >= 0, "negative power of a series"
        result = self._make({(): self.field.one(self.precN or 1)})
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c):
        return self._make({k: v * c for k, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def variables(self):
        return sorted({idx for key in self.terms for idx, _ in key})

    def max_exponent(self):
        return max((e for key in self.terms for _, e in key), default=0)

    def norm(self):
        """max |c_k|, as a Fraction"""
        return max((c.norm() for c in self.terms.values()), default=Fraction(0))

    def evaluate_digits(self, omegas, precN):
        """Substitutes X_j -> omegas[j]"""
        value = self.field.zero(precN)
        for key, c in self.terms.items():
            term = c
            for idx, e in key:
                if idx >= len(omegas):
                    raise PrecisionError("variable X_{} needs {} digits, {} available".format(idx, idx + 1, len(omegas)))
                term = term * omegas[idx] ** e
            value = value + term
        return value

    def evaluate(self, x, precN=None):
        """Value at x: X_j -> omega_j(x)"""
        precN = precN or x.precN
        count = max(self.variables(), default=-1) + 1
        if count > x.precN:
            raise PrecisionError("x known to precision {} but X_{} is used".format(x.precN, count - 1))
        omegas = teichmuller_digits(x, count, precN) if count else []
        return self.evaluate_digits(omegas, precN)

    def sorted_terms(self):
        """Terms in graded lexicographic order of (total degree, exponents by index)"""
        width = max(self.variables(), default=-1) + 1

        def order(key):
            dense = [0] * width
            for idx, e in key:
                dense[idx] = e
            return (_degree(key), tuple(reversed(dense)))

        return sorted(self.terms.items(), key=lambda item: order(item[0]))

    def __eq__(self, other):
        if not isinstance(other, TateSeries):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def agrees(self, other):
        keys = set(self.terms) | set(other.terms)
        for key in keys:
            a = self.terms.get(key)
            b = other.terms.get(key)
            if a is None and b is None:
                continue
            if a is None or b is None:
                nonzero = a if a is not None else b
                if not nonzero.is_zero():
                    return False
                continue
            if not a.agrees(b):
                return False
        return True

    def to_json(self):
        return {
            "q": self.field.q,
            "field": self.field.to_json(),
            "terms": [{"exponents": [list(pair) for pair in key], "coeff": c.to_json()}
                for key, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        assert type(obj) == dict, "series is not an object"
        assert "terms" in obj, "series does not contain \"terms\" key"
        if field is None:
            assert "field" in obj, "series does not contain \"field\" key"
            field = LocalFieldSpec.from_json(obj["field"])
        terms = {}
        for term in obj["terms"]:
            assert "exponents" in term and "coeff" in term, "series terms need \"exponents\" and \"coeff\""
            key = monomial_key(term["exponents"])
            c = LocalElem.from_json(field, term["coeff"])
            terms[key] = terms[key] + c if key in terms else c
        return cls(field, terms)

    def __repr__(self):
        parts = []
        for key, c in self.sorted_terms():
            monomial = "*".join("X_{}".format(i) if e == 1 else "X_{}^{}".format(i, e) for i, e in key)
            parts.append("({}){}".format(c, "*" + monomial if monomial else ""))
        return " + ".join(parts) if parts else "0"


class QSimplifiedSeries(TateSeries):
    """A TateSeries whose exponents are all at most q - 1; products are simplified again"""

    summary_template = Template("""q-simplified series over {{ series.field }} (q = {{ series.field.q }})
Terms: {{ series.terms | length }}, variables: {{ series.variables() }}, norm: {{ series.norm() }}""")

    def __init__(self, field, terms=None, precN=None):
        super().__init__(field, terms, precN)
        limit = self.field.q - 1
        assert all(e <= limit for key in self.terms for _, e in key), \
            "q-simplified series need exponents at most {}".format(limit)

    def _make(self, terms):
        return q_simplify(TateSeries(self.field, terms, self.precN))

    def summary(self):
        return self.summary_template.render(series=self)


def reduce_exponent(e, q):
    """The exponent left after repeatedly replacing X^q by X"""
    if e < q:
        return e
    return (e - 1) % (q - 1) + 1

def q_simplify(s):
    """Reduces a series modulo the ideal generated by X_j^q - X_j"""
    q = s.field.q
    terms = {}
    for key, c in s.terms.items():
        reduced = tuple((idx, reduce_exponent(e, q)) for idx, e in key)
        terms[reduced] = terms[reduced] + c if reduced in terms else c
    result = TateSeries(s.field, terms, s.precN)
    simplified = QSimplifiedSeries.__new__(QSimplifiedSeries)
    simplified.field, simplified.precN, simplified.terms = s.field, s.precN, result.terms
    return simplified

def series_to_function(s, n, precN, num_workers=None, verbose=False):
    """Evaluates a q-simplified series in X_0..X_(n-1) at the canonical points of level n"""
    L = s.field
    if s.variables() and s.variables()[-1] >= n:
        raise InputError("series uses X_{} but the level is {}".format(s.variables()[-1], n))

    def value(x):
        omegas = teichmuller_digits(L.elem(x, max(precN, n)), n, precN) if n else []
        return s.evaluate_digits(omegas, precN)

    return FunctionTable.tabulate(L, n, precN, value, num_workers, verbose)

def function_to_series(t, family=None):
    """Expands a table in the Baker basis and maps B_m to the monomial with the base-q digits of m"""
    family = family or baker_family(t.field)
    expansion = expand(t, family)
    q = t.field.q
    terms = {}
    for i, a in expansion.nonzero():
        terms[tuple((j, c) for j, c in enumerate(base_digits(i, q)) if c)] = a
    return QSimplifiedSeries(t.field, terms, expansion.precN)

def ball_indicator_series(a, n, precN=None):
    """prod_(j<n) (1 - (X_j - omega_j(a))^(q-1)), the indicator of a + pi^n O

    Args:
        a (LocalElem): Center, known to precision >= n
        n (int): Radius level
        precN (int, optional): Coefficient precision, default a.precN

    """
    L = a.field
    precN = precN or a.precN
    if a.precN < n:
        raise PrecisionError("the ball of level {} needs its center to precision {}".format(n, n))
    omegas = teichmuller_digits(a, n, precN) if n else []
    result = QSimplifiedSeries.constant(L, L.one(precN), precN)
    for j, w in enumerate(omegas):
        linear = TateSeries.variable(L, j, precN) - TateSeries.constant(L, w, precN)
        factor = TateSeries.constant(L, L.one(precN), precN) - linear ** (L.q - 1)
        result = result * q_simplify(factor)
    return result

def units_indicator_series(L, precN):
    """X_0^(q-1), the indicator of the units"""
    return QSimplifiedSeries(L, {((0, L.q - 1),): L.one(precN)}, precN)

def maximal_ideal_series(L, precN):
    """1 - X_0^(q-1), the indicator of the maximal ideal"""
    return q_simplify(TateSeries.constant(L, L.one(precN), precN) - units_indicator_series(L, precN))

def evaluate_at_point(s, x):
    return s.evaluate(x)

def analytic_power(L, k, n, precN):
    """q_simplify(Y^k) for Y = sum_(j<n) pi^j X_j"""
    Y = TateSeries(L, {((j, 1),): L.one(precN).shift(j) for j in range(n)}, precN)
    return q_simplify(Y ** k)
