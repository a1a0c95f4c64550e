###################################################
##### Hyperdifferential Operators for lfbasis #####
###################################################

from .digit_principle import BasisFamily
from .local_fields import FieldSpec, LocalElem, LocalFieldSpec, Poly
from .utils import *


def hyperdiff_poly(j, f):
    """D_j(f) for a polynomial f, using D_j(T^m) = binom(m, j) T^(m - j)"""
    assert j >= 0, "hyperderivatives are indexed by j >= 0"
    base = f.base
    if j == 0:
        return f
    out = []
    for m in range(j, len(f.coeffs)):
        c = f.coeffs[m]
        b = lucas_binomial(m, j, base.p)
        out.append(base.mul(c, b) if c and b else 0)
    return Poly(base, out)

def taylor_map(f, M):
    """[D_0 f, ..., D_M f]: the coefficients of X^0..X^M in the Taylor map"""
    return [hyperdiff_poly(j, f) for j in range(M + 1)]

def taylor_substitution(f, M):
    """f(T + X) modulo X^(M+1), as the list of coefficients of X^0..X^M"""
    base = f.base
    T = Poly.x(base)
    result = [Poly.zero(base)] * (M + 1)
    for c in reversed(f.coeffs):
        # result <- result * (T + X) + c
        shifted = [Poly.zero(base)] + result[:M]
        result = [T * a + b for a, b in zip(result, shifted)]
        result[0] = result[0] + Poly.constant(base, c)
    return result

def taylor_check(f, M):
    """Compares the Taylor map with the substitution T -> T + X"""
    for j, (a, b) in enumerate(zip(taylor_map(f, M), taylor_substitution(f, M))):
        if a != b:
            return CheckResult(False, [j, a.to_json(), b.to_json()])
    return CheckResult(True)

def hyperdiff_local(j, x):
    """D_j on a truncated element

    On F_q((T)) the binomial rule is applied digit by digit, negative exponents included; on a
    completion at pi the operator acts on the polynomial representative of an integral element.
    The result is known to precision precN - j.

    Raises:
        PrecisionError: if x is known to precision <= j

    """
    field = x.field
    if x.precN <= j:
        raise PrecisionError("D_{} needs precision above {}, element known to {}".format(j, j, x.precN))
    if j == 0:
        return x
    if field.kind == "laurent":
        if x.is_zero():
            return field.zero(x.precN - j)
        F = field.residue
        digits = []
        for k, c in enumerate(x.digits()):
            b = binomial_mod_p(x.val + k, j, F.p)
            digits.append(F.mul(c, b) if c and b else 0)
        return LocalElem.from_digits(field, x.val - j, digits, x.precN - j)
    if field.kind == "completion_at_pi":
        if not x.is_integral():
            raise InputError("D_j on a completion acts on integral elements only")
        return field.elem(hyperdiff_poly(j, x.to_exact()), x.precN - j)
    raise InputError("hyperderivatives are defined in characteristic p only, not on {}".format(field))

def leibniz_check(j, factors):
    """Checks D_j(f_1 ... f_m) = sum over k_1 + ... + k_m = j of prod D_(k_l)(f_l)"""
    base = factors[0].base
    product = Poly.one(base)
    for f in factors:
        product = product * f
    lhs = hyperdiff_poly(j, product)
    rhs = Poly.zero(base)
    for ks in compositions(j, len(factors)):
        term = Poly.one(base)
        for k, f in zip(ks, factors):
            term = term * hyperdiff_poly(k, f)
        rhs = rhs + term
    if lhs != rhs:
        return CheckResult(False, [j, [f.to_json() for f in factors]])
    return CheckResult(True)

def derivative(f):
    return hyperdiff_poly(1, f)

def congruence_checks(j, n, f, g=None):
    """The two congruences of hyperderivatives at powers of f

    divisibility: D_j(f^n g) = 0 mod f^(n-j) for n >= j
    power: D_j(f^j) = (f')^j mod f

    Returns:
        dict: {"divisibility": CheckResult, "power": CheckResult}

    """
    assert n >= j, "the divisibility congruence needs n >= j"
    base = f.base
    g = g if g is not None else Poly.one(base)
    value = hyperdiff_poly(j, f ** n * g)
    divisible = (value % f ** (n - j)).is_zero()
    power = ((hyperdiff_poly(j, f ** j) - derivative(f) ** j) % f).is_zero()
    return {
        "divisibility": CheckResult(divisible, None if divisible else [j, n, value.to_json()]),
        "power": CheckResult(power, None if power else [j, f.to_json()]),
    }

def hyperdiff_at_infinity(j, m, p):
    """D_j(S^m) = binom(-m, j) S^(m + j) for S = 1/T, as (coefficient mod p, exponent of S)"""
    return binomial_mod_p(-m, j, p), m + j

def composition_rule_check(j, k, f):
    """Checks D_j(D_k f) = binom(j + k, j) D_(j+k) f"""
    lhs = hyperdiff_poly(j, hyperdiff_poly(k, f))
    rhs = hyperdiff_poly(j + k, f).scale(lucas_binomial(j + k, j, f.base.p))
    return CheckResult(lhs == rhs, None if lhs == rhs else [j, k, f.to_json()])

def iterate_vanishes(j, f, p=None):
    """The p-fold iterate of D_j (j >= 1) kills f"""
    assert j >= 1, "D_0 is the identity"
    p = p or f.base.p
    value = f
    for _ in range(p):
        value = hyperdiff_poly(j, value)
    return value.is_zero()

def hyperdiff_from_axioms(j, m, base, cache=None):
    """The value on T^m forced by D_0 = id, D_1(T) = 1, D_j(T) = 0 for j >= 2 and the Leibniz rule

    D_j(T * T^(m-1)) = T D_j(T^(m-1)) + D_(j-1)(T^(m-1)).

    """
    cache = {} if cache is None else cache
    key = (j, m)
    if key in cache:
        return cache[key]
    if j == 0:
        value = Poly.monomial(base, m)
    elif m == 0:
        value = Poly.zero(base)
    else:
        value = Poly.x(base) * hyperdiff_from_axioms(j, m - 1, base, cache) \
            + hyperdiff_from_axioms(j - 1, m - 1, base, cache)
    cache[key] = value
    return value

def frobenius_coefficients(q, count, base=None):
    """(T^q - T)^j for j < count: the coefficients of x -> x^q in the hyperdifferential basis"""
    base = base or FieldSpec.of_order(q)
    T = Poly.x(base)
    step = T ** q - T
    return [step ** j for j in range(count)]

def _chain_inner(j, i, pi):
    """Sum over compositions k_1 + ... + k_i = j with k_l >= 1 of prod D_(k_l)(pi)"""
    base = pi.base
    total = Poly.zero(base)
    derivs = {}
    for ks in compositions(j, i, 1):
        term = Poly.one(base)
        for k in ks:
            if k not in derivs:
                derivs[k] = hyperdiff_poly(k, pi)
            term = term * derivs[k]
        total = total + term
    return total

def teichmuller_power_formula(j, n, pi):
    """Checks D_j(pi^n) = sum_i binom(n, i) pi^(n-i) sum_(k_1+...+k_i=j, k_l>=1) prod D_(k_l)(pi)"""
    base = pi.base
    lhs = hyperdiff_poly(j, pi ** n)
    rhs = Poly.zero(base) if j else pi ** n
    for i in range(1, min(j, n) + 1):
        c = lucas_binomial(n, i, base.p)
        if c:
            rhs = rhs + (pi ** (n - i) * _chain_inner(j, i, pi)).scale(c)
    return CheckResult(lhs == rhs, None if lhs == rhs else [j, n])


class ChainRuleResult(CheckResult):
    """D_(j,T)(f(pi)) computed directly and through the chain rule

    Attributes:
        value (LocalElem): The directly computed value
        chain (LocalElem): The chain-rule value

    """

    def __init__(self, value, chain, precN):
        passed = value.agrees(chain, precN)
        super().__init__(passed, None if passed else [value.to_json(), chain.to_json()],
            {"value": value.with_precision(precN).to_json(), "precN": precN})
        self.value = value
        self.chain = chain


def chain_rule(j, pi, f_coeffs, precN, r):
    """D_(j,T) of f(pi) = sum_k w(f_k) pi^k, with w the Teichmuller lift of the residue f_k

    The direct value applies D_j to the polynomial representative of f(pi). The chain-rule value is
    sum_(i=1..j) D_(i,pi)(f(pi)) sum_(k_1+...+k_i=j, k_l>=1) prod D_(k_l,T)(pi), where D_(i,pi)
    differentiates in pi with the Teichmuller coefficients held constant.

    Args:
        j (int): Order of the hyperderivative
        pi (list or Poly): Monic irreducible over F_r
        f_coeffs (list): Residue codes f_0, f_1, ... in F_pi
        precN (int): Precision at which the two values are compared
        r (int): Size of the coefficient field

    Returns:
        ChainRuleResult: falsy when the two computations disagree

    """
    field = LocalFieldSpec.completion_at_pi(r, pi)
    pi = field.uniformizer
    W = precN + j
    if len(f_coeffs) > W:
        raise PrecisionError("{} coefficients do not fit in precision {}".format(len(f_coeffs), W))
    lifts = [field.teichmuller_lift(c, W) for c in f_coeffs]
    f_value = field.zero(W)
    for k, w in enumerate(lifts):
        f_value = f_value + w.shift(k)
    direct = hyperdiff_local(j, f_value)
    if j == 0:
        return ChainRuleResult(direct, f_value, precN)
    chain = field.zero(W - j)
    for i in range(1, j + 1):
        # D_(i,pi) f(pi) = sum_k binom(k, i) w_k pi^(k-i)
        outer = field.zero(W - i)
        for k, w in enumerate(lifts):
            b = lucas_binomial(k, i, field.p)
            if b and k >= i:
                outer = outer + (w * b).shift(k - i)
        inner = field.elem(_chain_inner(j, i, pi), W)
        chain = chain + outer * inner
    return ChainRuleResult(direct, chain, precN)

def local_hyperdiff_family(q):
    """Hyperdifferential basis of C(F_q[[T]], F_q((T))): seeds D_j, digit base q"""
    field = LocalFieldSpec.laurent(q)

    def seed(j, x, precN):
        return field.elem(hyperdiff_poly(j, x), precN)

    return BasisFamily("hyperdiff", field, q, seed, "linear", loss=lambda j: j, additive=True,
        description="hyperdifferential digit products D_j over F_{}[T]".format(q))

def completion_hyperdiff_family(r, pi):
    """Hyperdifferential basis on the completion at pi: seeds D_(j,T), digit base r^d"""
    field = LocalFieldSpec.completion_at_pi(r, pi)

    def seed(j, x, precN):
        return field.elem(hyperdiff_poly(j, x), precN)

    return BasisFamily("hyperdiff-at-pi", field, field.q, seed, "linear", loss=lambda j: j, additive=True,
        description="hyperdifferential digit products D_(j,T) at {}".format(field.uniformizer))
