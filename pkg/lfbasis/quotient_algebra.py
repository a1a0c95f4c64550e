#########################################
##### Quotient Algebras for lfbasis #####
#########################################

import pandas as pd

from .local_fields import LocalElem, LocalFieldSpec
from .utils import *


class FunctionTable:
    """A continuous function on O restricted to level n, given by its values on the canonical
    representatives of O/m^n

    Args:
        field (LocalFieldSpec): The local field
        level (int): The level n
        precN (int): Common absolute precision of the values
        values (list): One LocalElem per canonical point, in canonical order

    """

    def __init__(self, field, level, precN, values):
        values = list(values)
        if len(values) != field.num_points(level):
            raise InputError("a level-{} table over {} has {} values, got {}".format(
                level, field, field.num_points(level), len(values)))
        self.field = field
        self.level = level
        self.precN = precN
        self.values = [self._coerce(v) for v in values]

    def _coerce(self, value):
        if isinstance(value, LocalElem):
            if value.field != self.field:
                raise InputError("value in {} stored in a table over {}".format(value.field, self.field))
            return value.with_precision(self.precN)
        if isinstance(value, int):
            return self.field.from_int(value, self.precN)
        return self.field.elem(value, self.precN)

    @classmethod
    def tabulate(cls, field, level, precN, fn, num_workers=None, verbose=False):
        """Evaluates fn(x) at every canonical point x of level n

        fn receives an exact element of O and returns a LocalElem (or an exact element).

        """
        values = parallel_map(fn, field.canonical_reps(level), num_workers, verbose, "tabulate")
        return cls(field, level, precN, values)

    @classmethod
    def constant(cls, field, level, precN, value):
        return cls(field, level, precN, [value] * field.num_points(level))

    def points(self):
        return self.field.canonical_reps(self.level)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def at(self, x):
        """Value at the class of an exact element x"""
        return self.values[self.field.point_index(x, self.level)]

    def _check(self, other):
        if self.field != other.field or self.level != other.level:
            raise InputError("tables over {} at level {} and {} at level {} do not combine".format(
                self.field, self.level, other.field, other.level))

    def __add__(self, other):
        self._check(other)
        N = min(self.precN, other.precN)
        return FunctionTable(self.field, self.level, N, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        N = min(self.precN, other.precN)
        return FunctionTable(self.field, self.level, N, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        self._check(other)
        values = [a * b for a, b in zip(self.values, other.values)]
        return FunctionTable(self.field, self.level, min(v.precN for v in values), values)

    def scale(self, c):
        """Multiplies every value by c (a LocalElem or an integer)"""
        values = [v * c for v in self.values]
        return FunctionTable(self.field, self.level, min(v.precN for v in values), values)

    def shift(self, k):
        """Multiplies every value by pi^k"""
        return FunctionTable(self.field, self.level, self.precN + k, [v.shift(k) for v in self.values])

    def is_integral(self):
        return all(v.is_integral() for v in self.values)

    def min_valuation(self):
        """Smallest valuation among nonzero values, None if the table vanishes"""
        vals = [v.val for v in self.values if not v.is_zero()]
        return min(vals) if vals else None

    def __eq__(self, other):
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (self.field == other.field and self.level == other.level and self.precN == other.precN
            and self.values == other.values)

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "level": self.level,
            "precN": self.precN,
            "values": [v.to_json() for v in self.values],
        }

    @classmethod
    def from_json(cls, obj):
        assert type(obj) == dict, "function table is not an object"
        for key in ("field", "level", "precN", "values"):
            assert key in obj, "function table does not contain \"{}\" key".format(key)
        field = LocalFieldSpec.from_json(obj["field"])
        values = [LocalElem.from_json(field, v) for v in obj["values"]]
        return cls(field, obj["level"], obj["precN"], values)

    def to_frame(self):
        rows = []
        for i, (x, v) in enumerate(zip(self.points(), self.values)):
            rows.append({
                "index": i,
                "point": str(x),
                "val": None if v.is_zero() else v.val,
                "precN": v.precN,
                "digits": " ".join(str(c) for c in v.digits()),
            })
        return pd.DataFrame(rows, columns=["index", "point", "val", "precN", "digits"])


class ResidueTable:
    """A function O/m^n -> F, values as residue-field element codes in canonical order"""

    def __init__(self, residue, level, values):
        self.residue = residue
        self.level = level
        self.values = list(values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __add__(self, other):
        add = self.residue.add
        return ResidueTable(self.residue, self.level, [add(a, b) for a, b in zip(self.values, other.values)])

    def scale(self, c):
        mul = self.residue.mul
        return ResidueTable(self.residue, self.level, [mul(c, a) for a in self.values])

    def __eq__(self, other):
        if not isinstance(other, ResidueTable):
            return NotImplemented
        return self.residue == other.residue and self.values == other.values

    def is_constant(self):
        return len(set(self.values)) <= 1

    def to_json(self):
        return {"level": self.level, "values": list(self.values)}


def reduce_table(t):
    """Reduces every value of an integral FunctionTable modulo m

    Raises:
        InputError: if some value is not integral

    """
    for i, v in enumerate(t.values):
        if not v.is_integral():
            raise InputError("value at point {} has valuation {}".format(i, v.val))
    return ResidueTable(t.field.residue, t.level, [v.residue() for v in t.values])


class ResidueMatrix:
    """A rectangular matrix over a finite field

    Args:
        residue (FiniteField): The field of entries
        entries (list): Rows of element codes
        row_labels (list, optional): Labels of the rows
        col_labels (list, optional): Labels of the columns

    """

    def __init__(self, residue, entries, row_labels=None, col_labels=None):
        self.residue = residue
        self.entries = [list(row) for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        assert all(len(row) == self.ncols for row in self.entries), "ragged matrix"
        self.row_labels = list(row_labels) if row_labels is not None else list(range(self.nrows))
        self.col_labels = list(col_labels) if col_labels is not None else list(range(self.ncols))
        assert len(self.row_labels) == self.nrows, "row labels do not match the matrix"
        assert len(self.col_labels) == self.ncols, "column labels do not match the matrix"

    @classmethod
    def identity(cls, residue, n):
        return cls(residue, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def is_square(self):
        return self.nrows == self.ncols

    def transpose(self):
        return ResidueMatrix(self.residue, [list(col) for col in zip(*self.entries)],
            self.col_labels, self.row_labels)

    def _echelon(self):
        # first nonzero entry in column order is the pivot
        F = self.residue
        rows = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, self.nrows) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = F.inv(rows[r][c])
            rows[r] = [F.mul(inv, a) for a in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c]:
                    factor = F.neg(rows[i][c])
                    rows[i] = [F.add(a, F.mul(factor, b)) for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return rows, pivots

    def rank(self):
        return len(self._echelon()[1])

    def is_invertible(self):
        return self.is_square() and self.rank() == self.nrows

    def kernel_vector(self):
        """A nonzero v with M v = 0, or None when the columns are independent"""
        rows, pivots = self._echelon()
        free = next((c for c in range(self.ncols) if c not in pivots), None)
        if free is None:
            return None
        F = self.residue
        v = [0] * self.ncols
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = F.neg(rows[i][free])
        return v

    def inverse(self):
        """Gauss-Jordan inverse

        Raises:
            DivisionError: if the matrix is singular

        """
        if not self.is_square():
            raise DivisionError("a {}x{} matrix has no inverse".format(self.nrows, self.ncols))
        n = self.nrows
        augmented = ResidueMatrix(self.residue,
            [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.entries)])
        rows, pivots = augmented._echelon()
        if pivots[:n] != list(range(n)):
            raise DivisionError("matrix is singular over {}".format(self.residue))
        return ResidueMatrix(self.residue, [row[n:] for row in rows], self.col_labels, self.row_labels)

    def apply(self, vector):
        """Returns M v"""
        F = self.residue
        out = []
        for row in self.entries:
            acc = 0
            for a, b in zip(row, vector):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def __mul__(self, other):
        cols = [self.apply(col) for col in zip(*other.entries)]
        return ResidueMatrix(self.residue, [list(row) for row in zip(*cols)], self.row_labels, other.col_labels)

    def diagonal(self):
        return [self.entries[i][i] for i in range(min(self.nrows, self.ncols))]

    def is_lower_triangular(self):
        return all(self.entries[i][j] == 0 for i in range(self.nrows) for j in range(i + 1, self.ncols))

    def is_upper_triangular(self):
        return all(self.entries[i][j] == 0 for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def is_triangular(self):
        return self.is_lower_triangular() or self.is_upper_triangular()

    def is_unit_triangular(self):
        return self.is_triangular() and all(c == 1 for c in self.diagonal())

    def __eq__(self, other):
        if not isinstance(other, ResidueMatrix):
            return NotImplemented
        return self.residue == other.residue and self.entries == other.entries

    def to_json(self):
        return {"rows": self.row_labels, "cols": self.col_labels, "entries": self.entries}

    def to_frame(self):
        return pd.DataFrame(self.entries, index=pd.Index(self.row_labels, tupleize_cols=False),
            columns=pd.Index(self.col_labels, tupleize_cols=False))


def rank_over_residue(m):
    """Returns (rank, invertible) with invertible None for a non-square matrix"""
    rank = m.rank()
    return rank, (rank == m.nrows if m.is_square() else None)


class Indicator:
    """The function h_v(w) = prod_j (1 - (e_j(w) - e_j(v))^(q-1)) kept in factored form

    Args:
        residue (FiniteField): The residue field F
        point (int): Index of v
        targets (list): The values e_j(v)
        seed_tables (list): ResidueTables of the seeds e_0, ..., e_(n-1)

    """

    def __init__(self, residue, point, targets, seed_tables):
        self.residue = residue
        self.point = point
        self.targets = list(targets)
        self.seed_tables = seed_tables

    def __call__(self, w):
        F = self.residue
        value = 1
        for table, a in zip(self.seed_tables, self.targets):
            factor = F.sub(1, F.power(F.sub(table[w], a), F.q - 1))
            if not factor:
                return 0
            value = F.mul(value, factor)
        return value

    def values(self):
        return [self(w) for w in range(len(self.seed_tables[0]))] if self.seed_tables else [1]

    def expand(self):
        """Multiplies out the factors into {exponent vector: coefficient}, exponents <= q - 1"""
        F = self.residue
        q = F.q
        poly = {(): 1}
        for a in self.targets:
            # 1 - (phi - a)^(q-1) = 1 - sum_k binom(q-1, k) phi^k (-a)^(q-1-k)
            factor = {}
            for k in range(q):
                c = F.from_int(lucas_binomial(q - 1, k, F.p))
                c = F.mul(c, F.power(F.neg(a), q - 1 - k))
                factor[k] = F.neg(c)
            factor[0] = F.add(factor[0], 1)
            poly = _multiply_out(F, poly, factor)
        return {e: c for e, c in poly.items() if c}


def _multiply_out(F, poly, factor):
    out = {}
    for e, c in poly.items():
        for k, b in factor.items():
            if c and b:
                key = e + (k,)
                out[key] = F.add(out.get(key, 0), F.mul(c, b))
    return out

def _signature(seed_tables, w):
    return tuple(table[w] for table in seed_tables)

def build_indicator(v, seed_tables, check=True):
    """Builds the indicator h_v of the point v from residue-valued seeds

    Args:
        v (int): Index of the point
        seed_tables (list): ResidueTables of the n seed functions
        check (bool, optional): Verify that the seeds separate v from every other point

    Raises:
        SeparationError: if some w != v has the same seed values as v

    """
    assert seed_tables, "build_indicator needs at least one seed"
    residue = seed_tables[0].residue
    targets = _signature(seed_tables, v)
    if check:
        for w in range(len(seed_tables[0])):
            if w != v and _signature(seed_tables, w) == targets:
                raise SeparationError("seeds do not separate points {} and {}".format(min(v, w), max(v, w)),
                    (min(v, w), max(v, w)))
    return Indicator(residue, v, targets, seed_tables)

def interpolate(table, seed_tables):
    """Writes a residue table as a polynomial in the seeds with exponents <= q - 1

    The result is sum_v g(v) h_v multiplied out, as {exponent vector: coefficient}.

    Raises:
        SeparationError: if the seeds do not separate the points

    """
    F = table.residue
    seen = {}
    for w in range(len(table)):
        key = _signature(seed_tables, w)
        if key in seen:
            raise SeparationError("seeds do not separate points {} and {}".format(seen[key], w), (seen[key], w))
        seen[key] = w
    poly = {}
    for v, g in enumerate(table.values):
        if not g:
            continue
        for e, c in build_indicator(v, seed_tables, check=False).expand().items():
            poly[e] = F.add(poly.get(e, 0), F.mul(g, c))
    return {e: c for e, c in poly.items() if c}

def evaluate_polynomial(poly, seed_tables):
    """Inverse of interpolate: evaluates an exponent-vector polynomial in the seeds at every point"""
    F = seed_tables[0].residue
    values = []
    for w in range(len(seed_tables[0])):
        point = _signature(seed_tables, w)
        acc = 0
        for e, c in poly.items():
            term = c
            for a, k in zip(point, e):
                term = F.mul(term, F.power(a, k))
            acc = F.add(acc, term)
        values.append(acc)
    return ResidueTable(F, seed_tables[0].level, values)
