#######################################
##### Digit Principle for lfbasis #####
#######################################

from fractions import Fraction

import pandas as pd

from jinja2 import Template

from .local_fields import LocalElem, LocalFieldSpec, Poly
from .quotient_algebra import FunctionTable, ResidueMatrix
from .utils import *

MODES = ("linear", "sublinear", "general")


class BasisFamily:
    """An indexed family i -> f_i of integer-valued functions built from seeds by digit extension

    Writing i = sum c_j b^j in the digit base b, f_i is the pointwise product of seed_j ** c_j. Seeds
    are evaluated exactly on exact elements of O; the returned LocalElem carries the requested
    precision.

    Args:
        label (str): Name used in reports and JSON
        field (LocalFieldSpec): The local field
        base (int): Digit base b; q must be a power of b
        seed (callable): seed(j, x, precN) -> LocalElem for an exact x in O
        mode (str): Certification mode, one of "linear", "sublinear", "general"
        loss (callable, optional): Precision-loss profile l(j), default l(j) = j
        additive (bool, optional): Whether the seeds are additive
        description (str, optional): One-line description

    """

    def __init__(self, label, field, base, seed, mode, loss=None, additive=False, description=None):
        assert mode in MODES, "unknown certification mode {}".format(mode)
        per_digit = is_power_of(field.q, base)
        if per_digit is None:
            raise InputError("q = {} is not a power of the digit base {}".format(field.q, base))
        if mode == "linear" and field.kind == "padic":
            raise InputError("Z_{} is not a vector space over its residue field".format(field.p))
        self.label = label
        self.field = field
        self.base = base
        self.seed = seed
        self.mode = mode
        self.loss = loss or (lambda j: j)
        self.additive = additive
        self.description = description or label
        self.per_level = per_digit
        self.num_workers = None
        self.verbose = False
        self._seed_tables = {}
        self._columns = {}
        self._certificates = {}
        self._inverses = {}

    def seeds_per_level(self, n):
        """Number of seeds that the digit products of indices below q^n use"""
        return self.per_level * n

    def index_bound(self, n):
        return self.field.q ** n

    def seed_value(self, j, x, precN):
        return self.seed(j, x, precN)

    def evaluate(self, i, x, precN):
        """f_i(x) for an exact x in O"""
        value = self.field.one(precN)
        for j, c in enumerate(base_digits(i, self.base)):
            if c:
                value = value * self.seed(j, x, precN) ** c
        return value

    def seed_table(self, j, level, precN):
        """FunctionTable of seed j on the canonical points of the given level, cached"""
        key = (j, level, precN)
        if key not in self._seed_tables:
            self._seed_tables[key] = FunctionTable.tabulate(self.field, level, precN,
                lambda x: self.seed(j, x, precN), self.num_workers, self.verbose)
        return self._seed_tables[key]

    def table(self, i, level, precN):
        """FunctionTable of f_i"""
        return FunctionTable(self.field, level, precN, self.columns(level, precN)[i]) \
            if i < self.index_bound(level) else self._product_table(i, level, precN)

    def _product_table(self, i, level, precN):
        values = [self.field.one(precN)] * self.field.num_points(level)
        for j, c in enumerate(base_digits(i, self.base)):
            if c:
                seed = self.seed_table(j, level, precN).values
                values = [v * s ** c for v, s in zip(values, seed)]
        return FunctionTable(self.field, level, precN, values)

    def columns(self, level, precN):
        """Values of f_0, ..., f_(q^level - 1) at the canonical points: columns[i][v] = f_i(x_v)"""
        key = (level, precN)
        if key in self._columns:
            return self._columns[key]
        size = self.index_bound(level)
        points = self.field.num_points(level)
        columns = [[self.field.one(precN)] * points]
        for i in range(1, size):
            # strip the lowest nonzero digit: f_i = f_(i - b^t) * e_t
            t, weight = 0, 1
            while (i // weight) % self.base == 0:
                t += 1
                weight *= self.base
            seed = self.seed_table(t, level, precN).values
            columns.append([a * s for a, s in zip(columns[i - weight], seed)])
        self._columns[key] = columns
        return columns

    def residue_matrix(self, level):
        """ResidueMatrix with entry (v, i) = reduction of f_i at point v"""
        columns = self.columns(level, 1)
        F = self.field.residue
        entries = [[col[v].residue() for col in columns] for v in range(self.field.num_points(level))]
        return ResidueMatrix(F, entries, col_labels=["f_{}".format(i) for i in range(len(columns))])

    def residue_inverse(self, level):
        if level not in self._inverses:
            try:
                self._inverses[level] = self.residue_matrix(level).inverse()
            except DivisionError:
                raise CertificationError("{} does not span at level {}".format(self.label, level),
                    self._certificates.get(level))
        return self._inverses[level]

    def certificate(self, level):
        if level not in self._certificates:
            self._certificates[level] = certify(self, level)
        return self._certificates[level]

    def ensure_certified(self, level):
        """Raises CertificationError unless the family certifies at this level"""
        cert = self.certificate(level)
        if not cert.passed:
            raise CertificationError("{} is not certified at level {}: {}".format(
                self.label, level, cert.reason), cert)
        return cert

    def __repr__(self):
        return "BasisFamily({}, {}, base {})".format(self.label, self.field, self.base)


class DigitProduct:
    """The function f_i of a family, as returned by digit_extend"""

    def __init__(self, family, i):
        self.family = family
        self.index = i
        self.digits = base_digits(i, family.base)

    def __call__(self, x, precN):
        return self.family.evaluate(self.index, x, precN)

    def table(self, level, precN):
        return self.family.table(self.index, level, precN)


def digit_extend(family, i):
    """f_i = prod_j e_j ** c_j where i = sum c_j b^j; f_0 is the constant 1"""
    assert i >= 0, "digit products are indexed by nonnegative integers"
    return DigitProduct(family, i)


class Certificate:
    """Outcome of certifying a seed family at one level

    Attributes:
        label (str): Family label
        level (int): The level n
        mode (str): Certification mode
        passed (bool): Verdict
        reason (str): Failure reason (None on success)
        witness: Witness of the failure
        evidence_matrix (ResidueMatrix): Linear-mode evidence
        bijection (list): General/sublinear-mode evidence, the seed signature of each point

    """

    summary_template = Template("""Certificate for {{ cert.label }} at level {{ cert.level }} ({{ cert.mode }} mode)
Result: {% if cert.passed %}PASS{% else %}FAIL ({{ cert.reason }}){% endif %}
{%- if cert.witness is not none %}
Witness: {{ cert.witness }}
{%- endif %}
{%- if cert.evidence_matrix is not none %}
Evidence matrix ({% if cert.evidence_matrix.is_unit_triangular() %}unit triangular{% elif cert.evidence_matrix.is_triangular() %}triangular{% else %}not triangular{% endif %}):
{%- for row in cert.evidence_matrix.entries %}
  {{ row | join(" ") }}
{%- endfor %}
{%- endif %}
{%- if cert.bijection is not none %}
Signatures checked: {{ cert.bijection | length }} points
{%- endif %}""")

    def __init__(self, label, level, mode, passed, reason=None, witness=None, evidence_matrix=None,
            bijection=None):
        self.label = label
        self.level = level
        self.mode = mode
        self.passed = passed
        self.reason = reason
        self.witness = witness
        self.evidence_matrix = evidence_matrix
        self.bijection = bijection

    def __bool__(self):
        return self.passed

    def summary(self):
        return self.summary_template.render(cert=self)

    def to_json(self):
        result = {"family": self.label, "level": self.level, "mode": self.mode, "pass": self.passed}
        if self.reason is not None:
            result["reason"] = self.reason
        if self.witness is not None:
            result["witness"] = self.witness
        if self.evidence_matrix is not None:
            result["evidence_matrix"] = self.evidence_matrix.entries
        if self.bijection is not None:
            result["bijection"] = [list(s) for s in self.bijection]
        return result


def _fail(family, n, mode, reason, witness, **kwargs):
    log("certification of {} at level {} failed: {}".format(family.label, n, reason), family.verbose)
    return Certificate(family.label, n, mode, False, reason, witness, **kwargs)

def certify(family, n, mode=None):
    """Checks the digit-principle hypotheses for the seeds of a family at level n

    All modes check that the seeds e_j, j < seeds_per_level(n), are integral and constant on cosets of
    m^n. Then "general" checks that x -> (e_0(x), ..., e_(n-1)(x)) mod m is a bijection onto F^n,
    "linear" also checks F-linearity and that the matrix (e_j(pi^k)) mod m is invertible, and
    "sublinear" checks linearity over the coefficient field, the matrix (e_j(T^k)) for j, k < dn and
    that the seeds separate the points of O/m^n.

    Args:
        family (BasisFamily): The seed family
        n (int): Level
        mode (str, optional): Overrides the family's mode

    Returns:
        Certificate: the verdict with evidence or witness

    """
    mode = mode or family.mode
    assert mode in MODES, "unknown certification mode {}".format(mode)
    L = family.field
    if mode == "linear" and L.kind == "padic":
        raise InputError("linear certification needs a residue-field vector space, {} is not one".format(L))
    k = family.seeds_per_level(n)
    log("certifying {} at level {} in {} mode with {} seeds".format(family.label, n, mode, k), family.verbose)

    # integrality
    tables = []
    for j in range(k):
        table = family.seed_table(j, n, 1)
        for v, value in enumerate(table.values):
            if not value.is_integral():
                return _fail(family, n, mode, "seed {} is not integral".format(j), [j, v])
        tables.append([value.residue() for value in table.values])

    # constancy on cosets of m^n
    probes = L.coset_probes(n)
    points = L.canonical_reps(n)
    for j in range(k):
        for v, x in enumerate(points):
            for h in probes:
                if family.seed(j, x + h, 1).residue() != tables[j][v]:
                    return _fail(family, n, mode, "seed {} is not constant on the coset of point {}".format(j, v),
                        [j, v, L.exact_to_json(h)])

    F = L.residue
    signatures = [tuple(t[v] for t in tables) for v in range(len(points))]

    if mode in ("linear", "sublinear"):
        failure = _check_linearity(family, n, mode, tables, points)
        if failure is not None:
            return _fail(family, n, mode, failure[0], failure[1])
        if mode == "linear":
            probes = [L.pi_power(i) for i in range(n)]
        else:
            t = L.exact([0, 1]) if L.kind != "padic" else None
            probes = [t ** i for i in range(L.d * n)]
        entries = [[tables[j][L.point_index(x, n)] for x in probes] for j in range(k)]
        evidence = ResidueMatrix(F, entries, ["e_{}".format(j) for j in range(k)],
            [L.exact_to_json(x) for x in probes])
        if not evidence.is_invertible():
            return _fail(family, n, mode, "evidence matrix is singular", evidence.kernel_vector(),
                evidence_matrix=evidence)
    else:
        evidence = None

    seen = {}
    for v, s in enumerate(signatures):
        if s in seen:
            return _fail(family, n, mode, "seeds do not separate points {} and {}".format(seen[s], v),
                [seen[s], v], evidence_matrix=evidence)
        seen[s] = v

    log("{} certified at level {}".format(family.label, n), family.verbose)
    return Certificate(family.label, n, mode, True, evidence_matrix=evidence,
        bijection=signatures if mode != "linear" else None)

def _check_linearity(family, n, mode, tables, points):
    L = family.field
    F = L.residue
    k = len(tables)
    # additivity against generators of the additive group of O/m^n
    if mode == "linear":
        generators = [L.scalar(c, n) * L.pi_power(i) for i in range(n) for c in range(1, F.q)]
    else:
        t = L.exact([0, 1])
        generators = [Poly.constant(L.coefficient_field, c) * t ** i
            for i in range(L.d * n) for c in range(1, L.r)]
    for g in generators:
        gi = L.point_index(g, n)
        for v, x in enumerate(points):
            w = L.point_index(x + g, n)
            for j in range(k):
                if tables[j][w] != F.add(tables[j][v], tables[j][gi]):
                    return ("seed {} is not additive".format(j), [j, v, gi])
    # scalars: Teichmuller lifts of F, or the constants F_r in sublinear mode
    if mode == "linear":
        scalars = [(c, L.scalar(c, n)) for c in range(2, F.q)]
    else:
        scalars = [(c, Poly.constant(L.coefficient_field, c)) for c in range(2, L.r)]
    for c, lift in scalars:
        for v, x in enumerate(points):
            w = L.point_index(lift * x, n)
            for j in range(k):
                if tables[j][w] != F.mul(c, tables[j][v]):
                    return ("seed {} is not linear for the scalar {}".format(j, c), [j, c, v])
    return None


class SpanResult(CheckResult):
    """Result of span_check: rank of the reduced digit products and a dependency on failure"""

    def __init__(self, label, level, rank, size, witness=None):
        super().__init__(rank == size, witness, {"family": label, "level": level, "rank": rank, "size": size})
        self.rank = rank
        self.size = size


def span_check(family, n):
    """Verifies that the reductions of f_i, i < q^n, are independent in Maps(O/m^n, F)

    Returns:
        SpanResult: falsy with a dependency vector when the rank is short of q^n

    """
    matrix = family.residue_matrix(n)
    rank = matrix.rank()
    size = family.index_bound(n)
    witness = matrix.kernel_vector() if rank < size else None
    log("span check for {} at level {}: rank {} of {}".format(family.label, n, rank, size), family.verbose)
    return SpanResult(family.label, n, rank, size, witness)


class Expansion:
    """Coefficients a_i, i < q^L, of a function in a digit-extended basis

    Args:
        label (str): Basis label
        field (LocalFieldSpec): The local field
        level (int): The level L
        precN (int): Precision of the expansion
        coeffs (list): LocalElem coefficients
        family (BasisFamily, optional): The basis, needed for evaluate

    """

    summary_template = Template("""Expansion in {{ exp.label }} at level {{ exp.level }}, precision {{ exp.precN }}
Nonzero coefficients: {{ nonzero | length }} of {{ exp.coeffs | length }}
{%- for i, a in nonzero %}
  a_{{ i }} = {{ a }}
{%- endfor %}""")

    def __init__(self, label, field, level, precN, coeffs, family=None):
        self.label = label
        self.field = field
        self.level = level
        self.precN = precN
        self.coeffs = list(coeffs)
        self.family = family

    def __getitem__(self, i):
        return self.coeffs[i]

    def nonzero(self):
        return [(i, a) for i, a in enumerate(self.coeffs) if not a.is_zero()]

    def evaluate(self, family=None):
        """Re-evaluates sum a_i f_i at the canonical points of level L"""
        family = family or self.family
        assert family is not None, "evaluating an expansion needs its basis family"
        lowest = min([0] + [a.val for a in self.coeffs if not a.is_zero()])
        W = self.precN - min(lowest, 0)
        columns = family.columns(self.level, max(W, 1))
        values = []
        for v in range(self.field.num_points(self.level)):
            acc = self.field.zero(self.precN)
            for i, a in self.nonzero():
                acc = acc + a * columns[i][v]
            values.append(acc)
        return FunctionTable(self.field, self.level, self.precN, values)

    def coeff_norm(self):
        return coeff_norm(self.coeffs)

    def summary(self):
        return self.summary_template.render(exp=self, nonzero=self.nonzero())

    def to_json(self):
        return {
            "basis_label": self.label,
            "field": self.field.to_json(),
            "level": self.level,
            "precN": self.precN,
            "coeffs": [{"index": i, "coeff": a.to_json()} for i, a in self.nonzero()],
        }

    @classmethod
    def from_json(cls, obj):
        assert type(obj) == dict, "expansion is not an object"
        for key in ("basis_label", "field", "level", "precN", "coeffs"):
            assert key in obj, "expansion does not contain \"{}\" key".format(key)
        field = LocalFieldSpec.from_json(obj["field"])
        coeffs = [field.zero(obj["precN"])] * field.num_points(obj["level"])
        for entry in obj["coeffs"]:
            coeffs[entry["index"]] = LocalElem.from_json(field, entry["coeff"])
        return cls(obj["basis_label"], field, obj["level"], obj["precN"], coeffs)

    def to_frame(self):
        rows = [{"basis": self.label, "index": i, "val": a.val, "precN": a.precN,
            "digits": " ".join(str(c) for c in a.digits())} for i, a in self.nonzero()]
        return pd.DataFrame(rows, columns=["basis", "index", "val", "precN", "digits"])


def expand(f, family, precN=None):
    """Expands a function table in a certified digit-extended basis

    Solves sum_i a_i f_i(x_v) = f(x_v) over the canonical points by pi-adic lifting: the reduced
    evaluation matrix is inverted once over F, and each step removes one digit of the residual. A
    non-integral table is first multiplied by pi^(-min valuation) and the coefficients are scaled
    back.

    Args:
        f (FunctionTable): The function at level L
        family (BasisFamily): A basis certified at level L
        precN (int, optional): Lower the precision of the result

    Returns:
        Expansion: coefficients a_i for i < q^L, known to the precision of f

    Raises:
        CertificationError: if the family does not certify at level L
        PrecisionError: if the table carries no precision

    """
    if f.field != family.field:
        raise InputError("table over {} expanded in a basis over {}".format(f.field, family.field))
    L = f.level
    family.ensure_certified(L)
    inverse = family.residue_inverse(L)
    if precN is not None:
        f = FunctionTable(f.field, L, precN, [v.with_precision(precN) for v in f.values])
    lowest = f.min_valuation()
    scale = -min(lowest, 0) if lowest is not None else 0
    g = f.shift(scale) if scale else f
    W = g.precN
    if W <= 0:
        raise PrecisionError("table known only to precision {}, nothing to expand".format(f.precN))
    field = f.field
    ring = field.ring
    columns = family.columns(L, W)
    size = len(columns)
    log("expanding in {} at level {} to precision {}".format(family.label, L, W), family.verbose)

    coeffs = [ring.zero() for _ in range(size)]
    residual = list(g.values)
    for step in range(W):
        digits = inverse.apply([r.residue() for r in residual])
        lifts = [ring.lift(c) for c in digits]
        for i, c in enumerate(lifts):
            if digits[i]:
                coeffs[i] = ring.add(coeffs[i], ring.shift_up(c, step))
        if step + 1 == W:
            break
        updated = []
        for v, r in enumerate(residual):
            acc = r
            for i, c in enumerate(lifts):
                if digits[i]:
                    acc = acc - columns[i][v] * LocalElem.make(field, 0, c, W)
            updated.append(acc.shift(-1))
        residual = updated
    result = [LocalElem.make(field, 0, a, W).shift(-scale) for a in coeffs]
    return Expansion(family.label, field, L, W - scale, result, family)

def sup_norm(f):
    """max |f(x_v)| over the table, as a Fraction"""
    return max((v.norm() for v in f.values), default=Fraction(0))

def coeff_norm(coeffs):
    """max |a_i|, as a Fraction"""
    return max((a.norm() for a in coeffs), default=Fraction(0))

def carry_free_product_check(family, i, j, level, precN):
    """Checks f_i * f_j = f_(i+j) pointwise when i + j has no carries in the digit base"""
    a, b = base_digits(i, family.base), base_digits(j, family.base)
    width = max(len(a), len(b))
    a, b = a + [0] * (width - len(a)), b + [0] * (width - len(b))
    if any(x + y >= family.base for x, y in zip(a, b)):
        raise InputError("{} + {} carries in base {}".format(i, j, family.base))
    fi = family.table(i, level, precN)
    fj = family.table(j, level, precN)
    fij = family.table(i + j, level, precN)
    product = fi * fj
    for v in range(len(fij)):
        if not product[v].agrees(fij[v], precN):
            return CheckResult(False, [i, j, v])
    return CheckResult(True)
