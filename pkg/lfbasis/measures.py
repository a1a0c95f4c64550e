################################
##### Measures for lfbasis #####
################################

import pandas as pd

from jinja2 import Template

from .local_fields import LocalElem, LocalFieldSpec
from .utils import *


class Measure:
    """A finitely additive K-valued measure on O, known on the balls of level n

    Args:
        field (LocalFieldSpec): The local field
        level (int): The level n; balls are the cosets of m^n in canonical order
        precN (int): Common precision of the masses
        values (list): Mass of each ball

    """

    def __init__(self, field, level, precN, values):
        values = list(values)
        if len(values) != field.num_points(level):
            raise InputError("a level-{} measure over {} has {} masses, got {}".format(
                level, field, field.num_points(level), len(values)))
        self.field = field
        self.level = level
        self.precN = precN
        self.values = [v.with_precision(precN) if isinstance(v, LocalElem) else field.from_int(v, precN)
            for v in values]

    @classmethod
    def zero(cls, field, level, precN):
        return cls(field, level, precN, [field.zero(precN)] * field.num_points(level))

    @classmethod
    def dirac(cls, field, level, precN, a):
        """Unit mass on the ball of the exact element a"""
        values = [field.zero(precN)] * field.num_points(level)
        values[field.point_index(a, level)] = field.one(precN)
        return cls(field, level, precN, values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, v):
        return self.values[v]

    def _check(self, other):
        if self.field != other.field or self.level != other.level:
            raise InputError("measures over {} at level {} and {} at level {} do not combine".format(
                self.field, self.level, other.field, other.level))

    def __add__(self, other):
        self._check(other)
        return Measure(self.field, self.level, min(self.precN, other.precN),
            [a + b for a, b in zip(self.values, other.values)])

    def scale(self, c):
        values = [v * c for v in self.values]
        return Measure(self.field, self.level, min(v.precN for v in values), values)

    def coarsen(self, m):
        """Push-forward to the balls of level m <= n"""
        assert 0 <= m <= self.level, "can only coarsen to a level between 0 and {}".format(self.level)
        values = [self.field.zero(self.precN)] * self.field.num_points(m)
        for x, mass in zip(self.field.canonical_reps(self.level), self.values):
            w = self.field.point_index(x, m)
            values[w] = values[w] + mass
        return Measure(self.field, m, self.precN, values)

    def total_mass(self):
        return sum(self.values, self.field.zero(self.precN))

    def bounded(self):
        return all(v.is_integral() for v in self.values)

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return (self.field == other.field and self.level == other.level and self.precN == other.precN
            and self.values == other.values)

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "level": self.level,
            "precN": self.precN,
            "values": [v.to_json() for v in self.values],
            "bounded": self.bounded(),
        }

    @classmethod
    def from_json(cls, obj):
        assert type(obj) == dict, "measure is not an object"
        for key in ("field", "level", "precN", "values"):
            assert key in obj, "measure does not contain \"{}\" key".format(key)
        field = LocalFieldSpec.from_json(obj["field"])
        values = [LocalElem.from_json(field, v) for v in obj["values"]]
        return cls(field, obj["level"], obj["precN"], values)

    def to_frame(self):
        rows = [{"ball": v, "center": str(x), "val": None if m.is_zero() else m.val, "precN": m.precN,
            "digits": " ".join(str(c) for c in m.digits())}
            for v, (x, m) in enumerate(zip(self.field.canonical_reps(self.level), self.values))]
        return pd.DataFrame(rows, columns=["ball", "center", "val", "precN", "digits"])


def convolve(nu, mu, num_workers=None, verbose=False):
    """(nu * mu)(B) = sum over balls a, b with a + b in B of nu(a) mu(b)"""
    nu._check(mu)
    L = nu.field
    n = nu.level
    precN = min(nu.precN, mu.precN)
    points = L.canonical_reps(n)
    support = [(b, y, m) for b, (y, m) in enumerate(zip(points, mu.values)) if not m.is_zero()]

    def mass(w):
        x = points[w]
        acc = L.zero(precN)
        for b, y, m in support:
            a = L.point_index(x - y, n)
            if not nu.values[a].is_zero():
                acc = acc + nu.values[a] * m
        return acc

    values = parallel_map(mass, range(len(points)), num_workers, verbose, "convolve")
    return Measure(L, n, precN, values)


class DividedPowerSeries:
    """sum c_i X^i / i! truncated at the index bound len(coeffs)

    (X^i / i!)(X^j / j!) = binom(i + j, i) X^(i+j) / (i + j)!, so products only need binomials in K.

    """

    summary_template = Template("""Divided power series over {{ s.field }}, {{ s.coeffs | length }} coefficients
{%- for i, c in nonzero %}
  c_{{ i }} = {{ c }}
{%- endfor %}""")

    def __init__(self, field, coeffs, precN=None):
        self.field = field
        self.coeffs = list(coeffs)
        self.precN = precN if precN is not None else min((c.precN for c in self.coeffs), default=0)

    @property
    def bound(self):
        return len(self.coeffs)

    def nonzero(self):
        return [(i, c) for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def _check(self, other):
        if self.field != other.field or self.bound != other.bound:
            raise InputError("divided power series over {} with {} terms and {} with {} terms do not combine".format(
                self.field, self.bound, other.field, other.bound))

    def __add__(self, other):
        self._check(other)
        return DividedPowerSeries(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        self._check(other)
        out = []
        for n in range(self.bound):
            acc = self.field.zero(min(self.precN, other.precN))
            for i in range(n + 1):
                a, b = self.coeffs[i], other.coeffs[n - i]
                if a.is_zero() or b.is_zero():
                    continue
                c = small_binomial(n, i)
                if self.field.characteristic:
                    c %= self.field.p
                    if not c:
                        continue
                acc = acc + a * b * c
            out.append(acc)
        return DividedPowerSeries(self.field, out)

    def agrees(self, other, N=None):
        self._check(other)
        return all(a.agrees(b, N) for a, b in zip(self.coeffs, other.coeffs))

    def __eq__(self, other):
        if not isinstance(other, DividedPowerSeries):
            return NotImplemented
        return self.field == other.field and self.bound == other.bound and self.agrees(other)

    def summary(self):
        return self.summary_template.render(s=self, nonzero=self.nonzero())

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "precN": self.precN,
            "coeffs": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj):
        assert type(obj) == dict, "divided power series is not an object"
        for key in ("field", "coeffs"):
            assert key in obj, "divided power series does not contain \"{}\" key".format(key)
        field = LocalFieldSpec.from_json(obj["field"])
        return cls(field, [LocalElem.from_json(field, c) for c in obj["coeffs"]], obj.get("precN"))

    def to_frame(self):
        rows = [{"index": i, "val": c.val, "precN": c.precN, "digits": " ".join(str(d) for d in c.digits())}
            for i, c in self.nonzero()]
        return pd.DataFrame(rows, columns=["index", "val", "precN", "digits"])


def measure_transform(nu, family, bound=None):
    """The divided power series sum_i (integral of f_i against nu) X^i / i!, for i < bound

    The integrals are exact sums over the balls of level n because f_i is constant on them for
    i < q^n. Convolution goes to multiplication when the seeds are additive over a field whose
    canonical representatives are closed under addition.

    Raises:
        InputError: for a non-additive family, a family over another field, Q_p, or bound > q^n

    """
    L = nu.field
    if family.field != L:
        raise InputError("measure over {} integrated against a basis over {}".format(L, family.field))
    if L.kind == "padic":
        raise InputError("measure transforms are defined over fields of characteristic p")
    if not family.additive:
        raise InputError("the {} seeds are not additive".format(family.label))
    limit = family.index_bound(nu.level)
    bound = limit if bound is None else bound
    if bound > limit:
        raise InputError("index bound {} exceeds the {} indices resolved at level {}".format(bound, limit, nu.level))
    family.ensure_certified(nu.level)
    columns = family.columns(nu.level, nu.precN)
    coeffs = []
    for i in range(bound):
        acc = L.zero(nu.precN)
        for f, m in zip(columns[i], nu.values):
            if not m.is_zero():
                acc = acc + f * m
        coeffs.append(acc)
    log("transformed a level-{} measure against {} ({} coefficients)".format(nu.level, family.label, bound),
        family.verbose)
    return DividedPowerSeries(L, coeffs, nu.precN)
