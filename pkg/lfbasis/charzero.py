#####################################################
##### Binomial and Lubin-Tate Bases for lfbasis #####
#####################################################

import math

from .digit_principle import BasisFamily
from .local_fields import LocalElem, LocalFieldSpec
from .utils import *


def binom_func(x, m):
    """binom(x, m) for an integer representative x >= 0"""
    assert x >= 0 and m >= 0, "binom_func needs nonnegative arguments"
    return math.comb(x, m)

def binom_func_mod(x, m, p):
    """binom(x, m) mod p through the base-p digits of x and m"""
    return lucas_binomial(x, m, p)

def digit_binomial(x, m, p):
    """prod_j binom(x, p^j)^(c_j) over the base-p digits c_j of m"""
    value = 1
    for j, c in enumerate(base_digits(m, p)):
        if c:
            value *= math.comb(x, p ** j) ** c
    return value

def digit_binomial_family(p):
    """Seeds binom(x, p^j) on Z_p, digit base p"""
    field = LocalFieldSpec.padic(p)

    def seed(j, x, precN):
        return field.from_int(math.comb(x, p ** j), precN)

    return BasisFamily("digit-binomial", field, p, seed, "general", loss=lambda j: (p ** j - 1) // (p - 1),
        description="products of binom(x, p^j) over Z_{}".format(p))

def binomial_product_coefficients(i, j):
    """{k: c_k} with binom(x, i) binom(x, j) = sum_k c_k binom(x, k)"""
    return {k: math.comb(k, i) * math.comb(i, k - j) for k in range(max(i, j), i + j + 1)}

def p_valuation(n, p):
    if n == 0:
        return None
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


class MahlerTransition:
    """Triangular transition from the digit binomials {x over i} to binom(x, i), i < n

    Row i holds the Mahler coefficients of {x over i}: t_(i,k) = (Delta^k {. over i})(0).

    """

    def __init__(self, p, n):
        self.p = p
        self.n = n
        self.matrix = []
        for i in range(n):
            values = [digit_binomial(m, i, p) for m in range(n)]
            row = []
            for k in range(n):
                row.append(sum((-1) ** (k - m) * math.comb(k, m) * values[m] for m in range(k + 1)))
            self.matrix.append(row)
        self.diagonal = [self.matrix[i][i] for i in range(n)]
        self.valuations = [p_valuation(t, p) for t in self.diagonal]

    def is_triangular(self):
        return all(self.matrix[i][k] == 0 for i in range(self.n) for k in range(i + 1, self.n))

    @property
    def passed(self):
        return self.is_triangular() and all(v == 0 for v in self.valuations)

    def to_json(self):
        return {
            "p": self.p,
            "n": self.n,
            "diagonal": self.diagonal,
            "valuations": self.valuations,
            "triangular": self.is_triangular(),
            "pass": self.passed,
        }


def mahler_transition(p, n):
    return MahlerTransition(p, n)

def mahler_diagonal(p, n):
    """v_p(i! / prod_j ((p^j)!)^(c_j)) for i < n, from Legendre's formula"""
    out = []
    for i in range(n):
        v = legendre_valuation(i, p)
        for j, c in enumerate(base_digits(i, p)):
            v -= c * legendre_valuation(p ** j, p)
        out.append(v)
    return out


def _mul(a, b, M, field, W):
    out = []
    for n in range(M + 1):
        acc = field.zero(W)
        for i in range(n + 1):
            acc = acc + a[i] * b[n - i]
        out.append(acc)
    return out

def _compose(outer, inner, M, field, W):
    """outer(inner(X)) modulo X^(M+1), inner without constant term"""
    result = [outer[0]] + [field.zero(W)] * M
    power = [field.one(W)] + [field.zero(W)] * M
    for k in range(1, M + 1):
        power = _mul(power, inner, M, field, W)
        for n in range(M + 1):
            result[n] = result[n] + outer[k] * power[n]
    return result

def _first_disagreement(s, t):
    for n, (a, b) in enumerate(zip(s, t)):
        if not a.agrees(b):
            return n
    return None

def _bimul(a, b, M, field, W):
    out = {}
    for (i, j), x in a.items():
        for (k, l), y in b.items():
            if i + j + k + l <= M:
                key = (i + k, j + l)
                out[key] = out[key] + x * y if key in out else x * y
    return out

def _trimul(a, b, M):
    out = {}
    for (i, j, k), x in a.items():
        for (u, v, w), y in b.items():
            if i + j + k + u + v + w <= M:
                key = (i + u, j + v, k + w)
                out[key] = out[key] + x * y if key in out else x * y
    return out


class LubinTateGroup:
    """A Lubin-Tate formal group over O given by a Frobenius series f

    f must satisfy f(X) = pi X mod X^2 and f(X) = X^q mod pi; the default is X^q + pi X. The
    endomorphism [a](X) is the unique series with [a](X) = aX mod X^2 commuting with f, solved
    coefficient by coefficient; C_(n,F)(a) is its coefficient of X^n.

    Args:
        field (LocalFieldSpec): padic or laurent field
        frobenius (list, optional): Coefficient literals of f, index = degree
        degree (int, optional): Truncation degree M, default q^2

    """

    def __init__(self, field, frobenius=None, degree=None):
        self.field = field
        self.q = field.q
        self.M = degree or field.q ** 2
        assert self.M >= 1, "truncation degree must be positive"
        if frobenius is None:
            coeffs = {1: field.uniformizer, self.q: field.exact_from_int(1)}
        else:
            coeffs = {m: field.exact(c) for m, c in enumerate(frobenius)}
        self.frobenius = {m: c for m, c in coeffs.items() if m <= self.M and not self._is_zero(c)}
        self._validate()
        self._endomorphisms = {}
        self._f_powers = {}
        self._laws = {}

    def _is_zero(self, c):
        return c == 0 if self.field.kind == "padic" else c.is_zero()

    def _validate(self):
        L = self.field
        if 0 in self.frobenius:
            raise InputError("Frobenius series must have no constant term")
        if self.frobenius.get(1) != L.uniformizer:
            raise InputError("Frobenius series must be pi X mod X^2")
        for m, c in self.frobenius.items():
            if m < 2:
                continue
            residue = L.elem(c, 1).residue()
            if m == self.q and residue != 1:
                raise InputError("coefficient of X^{} must be 1 mod pi".format(m))
            if m != self.q and residue != 0:
                raise InputError("coefficient of X^{} must vanish mod pi".format(m))
        if self.q <= self.M and self.q not in self.frobenius:
            raise InputError("Frobenius series must be X^q mod pi")

    def frobenius_series(self, W):
        return [self.field.elem(self.frobenius[m], W) if m in self.frobenius else self.field.zero(W)
            for m in range(self.M + 1)]

    def _powers_of_f(self, W):
        if W not in self._f_powers:
            f = self.frobenius_series(W)
            powers = [[self.field.one(W)] + [self.field.zero(W)] * self.M]
            for _ in range(self.M):
                powers.append(_mul(powers[-1], f, self.M, self.field, W))
            self._f_powers[W] = powers
        return self._f_powers[W]

    def _unit_factor(self, n, W):
        # 1 - pi^(n-1) for n >= 2
        return self.field.one(W) - self.field.elem(self.field.pi_power(n - 1), W)

    def _solve(self, stuff, n, W, where):
        if not stuff.is_zero() and stuff.val < 1:
            raise DivisionError("{} is not divisible by pi at degree {}; not a Frobenius series".format(where, n))
        return stuff.shift(-1) / self._unit_factor(n, W)

    def _as_exact(self, a):
        if isinstance(a, LocalElem):
            return a.to_exact()
        return self.field.exact(a) if isinstance(a, list) else a

    def endomorphism(self, a, precN):
        """[a](X) modulo X^(M+1) with coefficients known modulo pi^precN

        Raises:
            PrecisionError: if precision runs out before degree M

        """
        a = self._as_exact(a)
        key = (a, precN)
        if key in self._endomorphisms:
            return self._endomorphisms[key]
        field, M = self.field, self.M
        W = precN + M
        powers = self._powers_of_f(W)
        g = [field.zero(W)] * (M + 1)
        if M >= 1:
            g[1] = field.elem(a, W)
        for n in range(2, M + 1):
            s1 = field.zero(W)
            for k in range(1, n):
                s1 = s1 + g[k] * powers[k][n]
            s2 = field.zero(W)
            for m, c in self.frobenius.items():
                if 2 <= m <= n:
                    gm = [field.one(W)] + [field.zero(W)] * n
                    for _ in range(m):
                        gm = _mul(gm, g[:n + 1], n, field, W)
                    s2 = s2 + field.elem(c, W) * gm[n]
            g[n] = self._solve(s1 - s2, n, W, "[a]")
        if any(c.precN < precN for c in g):
            raise PrecisionError("precision exhausted before degree {}".format(M))
        g = [c.with_precision(precN) for c in g]
        self._endomorphisms[key] = g
        return g

    def coefficient(self, n, a, precN):
        """C_(n,F)(a)"""
        if n > self.M:
            raise InputError("coefficient {} lies beyond the truncation degree {}".format(n, self.M))
        return self.endomorphism(a, precN)[n]

    def formal_group_law(self, precN):
        """F(X, Y) as {(i, j): coefficient} for i + j <= M, solved from f(F(X, Y)) = F(f(X), f(Y))"""
        if precN in self._laws:
            return self._laws[precN]
        field, M = self.field, self.M
        W = precN + M
        powers = self._powers_of_f(W)
        law = {(1, 0): field.one(W), (0, 1): field.one(W)}
        for n in range(2, M + 1):
            partial = {}
            for m, c in self.frobenius.items():
                if 2 <= m <= n:
                    power = {(0, 0): field.one(W)}
                    for _ in range(m):
                        power = _bimul(power, law, n, field, W)
                    for key, value in power.items():
                        if sum(key) == n:
                            term = field.elem(c, W) * value
                            partial[key] = partial[key] + term if key in partial else term
            lower = dict(law)
            for i in range(n + 1):
                j = n - i
                s1 = field.zero(W)
                for (a, b), coeff in lower.items():
                    s1 = s1 + coeff * powers[a][i] * powers[b][j]
                value = self._solve(s1 - partial.get((i, j), field.zero(W)), n, W, "F")
                if not value.is_zero():
                    law[(i, j)] = value
        law = {key: c.with_precision(min(c.precN, precN)) for key, c in law.items()}
        self._laws[precN] = law
        return law

    def apply_law(self, g, h, precN):
        """F(g(X), h(X)) modulo X^(M+1)"""
        field, M = self.field, self.M
        law = self.formal_group_law(precN)
        one = [field.one(precN)] + [field.zero(precN)] * M
        gp, hp = [one], [one]
        for _ in range(M):
            gp.append(_mul(gp[-1], g, M, field, precN))
            hp.append(_mul(hp[-1], h, M, field, precN))
        result = [field.zero(precN)] * (M + 1)
        for (i, j), c in law.items():
            term = _mul(gp[i], hp[j], M, field, precN)
            result = [r + c * t for r, t in zip(result, term)]
        return result

    def sum_check(self, a, b, precN):
        """[a + b](X) = F([a](X), [b](X))"""
        a, b = self._as_exact(a), self._as_exact(b)
        lhs = self.endomorphism(a + b, precN)
        rhs = self.apply_law(self.endomorphism(a, precN), self.endomorphism(b, precN), precN)
        n = _first_disagreement(lhs, rhs)
        return CheckResult(n is None, None if n is None else ["sum", n])

    def composition_check(self, a, b, precN):
        """[ab](X) = [a]([b](X))"""
        a, b = self._as_exact(a), self._as_exact(b)
        lhs = self.endomorphism(a * b, precN)
        rhs = _compose(self.endomorphism(a, precN), self.endomorphism(b, precN), self.M, self.field, precN)
        n = _first_disagreement(lhs, rhs)
        return CheckResult(n is None, None if n is None else ["composition", n])

    def associativity_check(self, precN, degree=None):
        """F(X, 0) = X, F(X, Y) = F(Y, X) and F(F(X, Y), Z) = F(X, F(Y, Z)) up to total degree D"""
        field = self.field
        D = min(degree or self.M, self.M)
        law = {key: c for key, c in self.formal_group_law(precN).items() if sum(key) <= D}
        for (i, j), c in law.items():
            if j == 0 and i != 1 and not c.is_zero():
                return CheckResult(False, ["identity", [i, j]])
            other = law.get((j, i))
            if other is None or not c.agrees(other):
                return CheckResult(False, ["symmetry", [i, j]])
        U = {(i, j, 0): c for (i, j), c in law.items()}
        V = {(0, i, j): c for (i, j), c in law.items()}
        X = {(1, 0, 0): field.one(precN)}
        Z = {(0, 0, 1): field.one(precN)}
        left = self._trivariate(law, U, Z, D, precN)
        right = self._trivariate(law, X, V, D, precN)
        for key in set(left) | set(right):
            a = left.get(key, field.zero(precN))
            b = right.get(key, field.zero(precN))
            if not a.agrees(b):
                return CheckResult(False, ["associativity", list(key)])
        return CheckResult(True, details={"degree": D})

    def _trivariate(self, law, first, second, D, precN):
        one = {(0, 0, 0): self.field.one(precN)}
        fp, sp = [one], [one]
        for _ in range(D):
            fp.append(_trimul(fp[-1], first, D))
            sp.append(_trimul(sp[-1], second, D))
        out = {}
        for (i, j), c in law.items():
            for key, value in _trimul(fp[i], sp[j], D).items():
                term = c * value
                out[key] = out[key] + term if key in out else term
        return out

    def _iterate_frobenius(self, k, W):
        field, M = self.field, self.M
        f = self.frobenius_series(W)
        s = [field.zero(W), field.one(W)] + [field.zero(W)] * (M - 1)
        for _ in range(k):
            s = _compose(f, s, M, field, W)
        return s

    def limit_logarithm(self, stage, precN):
        """[pi^k](X) / pi^k at stage k, with each coefficient's precision cut to where stages k and
        k + 1 agree

        """
        if self.field.kind != "padic":
            raise InputError("the logarithm cross-check is implemented over Z_p only")
        W = precN + stage + 1
        this = [c.shift(-stage) for c in self._iterate_frobenius(stage, W)]
        following = [c.shift(-stage - 1) for c in self._iterate_frobenius(stage + 1, W)]
        out = []
        for a, b in zip(this, following):
            diff = a - b
            N = min(a.precN, diff.precN if diff.is_zero() else diff.val)
            out.append(a.with_precision(N))
        return out

    def logarithm_check(self, a, stage, precN):
        """log([a](X)) = a log(X) at the tracked precision"""
        a = self._as_exact(a)
        field, M = self.field, self.M
        log_series = self.limit_logarithm(stage, precN)
        lhs = _compose(log_series, self.endomorphism(a, precN), M, field, precN)
        rhs = [field.elem(a, precN) * c for c in log_series]
        return self._compare(lhs, rhs, "logarithm")

    def cross_check(self, a, stage, precN):
        """exp_F(a log(X)) = [a](X), with exp_F the compositional inverse of the logarithm"""
        a = self._as_exact(a)
        field, M = self.field, self.M
        log_series = self.limit_logarithm(stage, precN)
        exp_series = _reversion(log_series, M, field)
        scaled = [field.elem(a, precN) * c for c in log_series]
        lhs = _compose(exp_series, scaled, M, field, precN)
        return self._compare(lhs, self.endomorphism(a, precN), "exponential")

    def _compare(self, lhs, rhs, label):
        compared = 0
        for n, (x, y) in enumerate(zip(lhs, rhs)):
            diff = x - y
            if diff.precN < 1:
                continue
            compared += 1
            if not diff.is_zero():
                return CheckResult(False, [label, n])
        return CheckResult(True, details={"compared": compared})

    def lifted_digit_check(self, j, precN=1):
        """C_(q^j)(pi^j a) = a mod pi for every residue a"""
        L = self.field
        n = self.q ** j
        if n > self.M:
            raise InputError("q^{} = {} exceeds the truncation degree {}".format(j, n, self.M))
        for c in range(self.q):
            a = L.ring.lift(c) * L.pi_power(j)
            value = self.coefficient(n, a, precN)
            if value.residue() != c:
                return CheckResult(False, [j, c])
        return CheckResult(True)

    def polynomial_degree_check(self, n, precN, extra=2):
        """C_(n,F)(a) agrees with the degree-n interpolant through n + 1 points at extra points"""
        L = self.field
        count = n + 1 + extra
        level = 0
        while L.num_points(level) < count:
            level += 1
        points = L.canonical_reps(level)[:count]
        P = precN + 2 * n * level
        values = [self.coefficient(n, a, P) for a in points]
        xs = [L.elem(a, P) for a in points]
        # Newton divided differences through the first n + 1 points
        table = list(values[:n + 1])
        newton = [table[0]]
        for k in range(1, n + 1):
            table = [(table[i + 1] - table[i]) / (xs[i + k] - xs[i]) for i in range(len(table) - 1)]
            newton.append(table[0])
        compared = 0
        for t in range(n + 1, count):
            acc = newton[-1]
            for k in range(n - 1, -1, -1):
                acc = acc * (xs[t] - xs[k]) + newton[k]
            diff = acc - values[t]
            if diff.precN < 1:
                continue
            compared += 1
            if not diff.is_zero():
                return CheckResult(False, [n, t])
        return CheckResult(True, details={"compared": compared})

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "frobenius": {str(m): self.field.exact_to_json(c) for m, c in sorted(self.frobenius.items())},
            "degree": self.M,
        }


def _reversion(series, M, field):
    """Compositional inverse of a series s with s(0) = 0 and s'(0) = 1"""
    W = max(c.precN for c in series)
    e = [field.zero(W), field.one(W)] + [field.zero(W)] * (M - 1)
    for n in range(2, M + 1):
        composed = _compose(series, e[:n] + [field.zero(W)] * (M + 1 - n), n, field, W)
        e[n] = -composed[n]
    return e

def lubin_tate_endomorphism(G, a, precN):
    return G.endomorphism(a, precN)

def lubin_tate_family(G, level=None):
    """Seeds C_(q^j,F) of a Lubin-Tate group, digit base q"""
    if level is not None and level >= 1 and G.q ** (level - 1) > G.M:
        raise InputError("level {} needs truncation degree at least {}, got {}".format(
            level, G.q ** (level - 1), G.M))

    def seed(j, x, precN):
        n = G.q ** j
        if n > G.M:
            raise InputError("seed {} needs truncation degree at least {}, got {}".format(j, n, G.M))
        return G.endomorphism(x, precN)[n]

    family = BasisFamily("lubin-tate", G.field, G.q, seed, "general", loss=lambda j: j,
        description="Lubin-Tate coefficient functions over {}".format(G.field))
    family.group = G
    return family
