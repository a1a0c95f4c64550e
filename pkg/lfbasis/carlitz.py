#####################################
##### Carlitz Basis for lfbasis #####
#####################################

import random

from .digit_principle import BasisFamily
from .local_fields import FieldSpec, LocalFieldSpec, Poly, all_polys
from .utils import *


class XPoly:
    """A polynomial in x with coefficients in F_r[T], divided by a nonzero D in F_r[T]

    Args:
        terms (dict): {exponent of x: Poly coefficient}
        denominator (Poly): The common denominator

    """

    def __init__(self, terms, denominator):
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.denominator = denominator

    def numerator_at(self, h):
        base = self.denominator.base
        p = base.p
        value = Poly.zero(base)
        for e, c in self.terms.items():
            power = h.frobenius_power(e) if is_power_of(e, p) is not None else h ** e
            value = value + c * power
        return value

    def __call__(self, h):
        """Exact value at h in F_r[T]; raises DivisionError if the quotient is not a polynomial"""
        return self.numerator_at(h).exact_div(self.denominator)

    def __mul__(self, other):
        terms = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                terms[e + f] = terms.get(e + f, Poly.zero(c.base)) + c * d
        return XPoly(terms, self.denominator * other.denominator)

    def degree(self):
        return max(self.terms) if self.terms else -1

    def to_json(self):
        return {
            "numerator": [[e, self.terms[e].to_json()] for e in sorted(self.terms)],
            "denominator": self.denominator.to_json(),
        }


class CarlitzContext:
    """Carlitz polynomials over F_r[T]

    e_j(x) is stored as the coefficients a_(j,k) of x^(r^k), k <= j, with e_0(x) = x. D_j and e_j are
    computed from D_j = (T^(r^j) - T) D_(j-1)^r and e_(j+1) = e_j^r - D_j^(r-1) e_j, and
    validate_recursions compares them with the defining products.

    Args:
        r (int): Size of the coefficient field

    """

    def __init__(self, r):
        self.base = FieldSpec.of_order(r)
        self.r = r
        self.T = Poly.x(self.base)
        self._D = [Poly.one(self.base)]
        self._e = [[Poly.one(self.base)]]

    def D(self, j):
        """D_j, the product of all monic h of degree j"""
        while len(self._D) <= j:
            k = len(self._D)
            self._D.append((self.T.frobenius_power(self.r ** k) - self.T) * self._D[-1].frobenius_power(self.r))
        return self._D[j]

    def e_coeffs(self, j):
        """Coefficients of e_j: e_j(x) = sum_k a_k x^(r^k)"""
        while len(self._e) <= j:
            k = len(self._e) - 1
            a = self._e[k]
            factor = self.D(k) ** (self.r - 1)
            b = [Poly.zero(self.base)] * (k + 2)
            for i, c in enumerate(a):
                b[i + 1] = b[i + 1] + c.frobenius_power(self.r)
                b[i] = b[i] - factor * c
            self._e.append(b)
        return self._e[j]

    def e(self, j):
        return XPoly({self.r ** k: c for k, c in enumerate(self.e_coeffs(j))}, Poly.one(self.base))

    def E(self, j):
        """E_j = e_j / D_j"""
        return XPoly({self.r ** k: c for k, c in enumerate(self.e_coeffs(j))}, self.D(j))

    def E_value(self, j, h):
        """E_j(h) for h in F_r[T], always a polynomial"""
        value = Poly.zero(self.base)
        for k, c in enumerate(self.e_coeffs(j)):
            value = value + c * h.frobenius_power(self.r ** k)
        return value.exact_div(self.D(j))

    def factorial(self, i):
        """Carlitz factorial: prod D_j^(c_j) over the base-r digits of i"""
        value = Poly.one(self.base)
        for j, c in enumerate(base_digits(i, self.r)):
            if c:
                value = value * self.D(j) ** c
        return value

    def script_E(self, i):
        """The digit product prod E_j^(c_j) as an XPoly"""
        value = XPoly({0: Poly.one(self.base)}, Poly.one(self.base))
        for j, c in enumerate(base_digits(i, self.r)):
            for _ in range(c):
                value = value * self.E(j)
        return value

    def script_E_value(self, i, h):
        value = Poly.one(self.base)
        for j, c in enumerate(base_digits(i, self.r)):
            if c:
                value = value * self.E_value(j, h) ** c
        return value

    def validate_recursions(self, j_max):
        """Compares the recursive e_j, D_j with the defining products for j <= j_max"""
        for j in range(j_max + 1):
            if self.D(j) != carlitz_D_bruteforce(self.base, j):
                return CheckResult(False, ["D", j])
            dense = carlitz_e_bruteforce(self.base, j)
            expected = {self.r ** k: c for k, c in enumerate(self.e_coeffs(j)) if not c.is_zero()}
            found = {e: c for e, c in enumerate(dense) if not c.is_zero()}
            if found != expected:
                return CheckResult(False, ["e", j])
        return CheckResult(True)


def carlitz_e_bruteforce(base, j):
    """Dense coefficients (in x) of the product of (x - h) over all h of degree < j

    For j = 0 the product is taken to be x.

    """
    if j == 0:
        return [Poly.zero(base), Poly.one(base)]
    coeffs = [Poly.one(base)]
    for h in all_polys(base, j):
        # multiply by (x - h)
        shifted = [Poly.zero(base)] + coeffs
        for k, c in enumerate(coeffs):
            shifted[k] = shifted[k] - h * c
        coeffs = shifted
    return coeffs

def carlitz_D_bruteforce(base, j):
    """Product of all monic polynomials of degree j"""
    value = Poly.one(base)
    for h in all_polys(base, j):
        value = value * (h + Poly.monomial(base, j))
    return value

def carlitz_e(j, r, context=None):
    return (context or CarlitzContext(r)).e(j)

def carlitz_D(j, r, context=None):
    return (context or CarlitzContext(r)).D(j)

def carlitz_E(j, r, context=None):
    return (context or CarlitzContext(r)).E(j)

def carlitz_script_E(i, r, context=None):
    return (context or CarlitzContext(r)).script_E(i)

def carlitz_factorial(i, r, context=None):
    return (context or CarlitzContext(r)).factorial(i)

def carlitz_module(a, context):
    """C_a(X) = sum_k E_k(a) X^(r^k) as {exponent: Poly}"""
    return {context.r ** k: context.E_value(k, a) for k in range(a.degree() + 1)}

def pi_order(f, pi):
    """Exponent of pi in a nonzero polynomial f"""
    count = 0
    while True:
        quot, rem = divmod(f, pi)
        if not rem.is_zero():
            return count
        f = quot
        count += 1

def carlitz_pi_order(k, pi, context):
    """ord_pi(D_k) by repeated division"""
    return pi_order(context.D(k), pi)

def expected_pi_order(r, d, k):
    """(r^k - r^(k mod d)) / (r^d - 1)"""
    return (r ** k - r ** (k % d)) // (r ** d - 1)

def infinity_witness(r, j, context=None):
    """Orders at the place 1/T of the coefficients a_(j,k)/D_j of E_j

    All orders are positive, so E_j sends the integers at 1/T into the maximal ideal and every
    reduction vanishes: the family does not reduce to a basis at that place.

    Returns:
        CheckResult: passes when every coefficient order is positive; details list the orders

    """
    assert j >= 1, "E_0(x) = x is integral at every place"
    context = context or CarlitzContext(r)
    D = context.D(j)
    orders = [D.degree() - c.degree() for c in context.e_coeffs(j) if not c.is_zero()]
    passed = all(o > 0 for o in orders)
    return CheckResult(passed, None if passed else [j, orders], {"orders": orders})

def local_carlitz_family(q, context=None):
    """Carlitz basis of C(F_q[[T]], F_q((T))): seeds E_j over F_q[T], digit base q"""
    field = LocalFieldSpec.laurent(q)
    context = context or CarlitzContext(q)

    def seed(j, x, precN):
        return field.elem(context.E_value(j, x), precN)

    family = BasisFamily("carlitz", field, q, seed, "linear", loss=lambda j: j, additive=True,
        description="Carlitz digit products E_j over F_{}[T]".format(q))
    family.context = context
    return family

def global_carlitz_family(r, pi, context=None):
    """Carlitz basis on the completion of F_r(T) at pi: seeds E_j over F_r[T], digit base r"""
    field = LocalFieldSpec.completion_at_pi(r, pi)
    context = context or CarlitzContext(r)
    d = field.d

    def seed(j, x, precN):
        return field.elem(context.E_value(j, x), precN)

    family = BasisFamily("carlitz-at-pi", field, r, seed, "sublinear", loss=lambda j: j // d, additive=True,
        description="Carlitz digit products E_j over F_{}[T] at {}".format(r, field.uniformizer))
    family.context = context
    return family

def addition_formula_check(i, precN, samples, q, seed=None, context=None):
    """Checks E_i(x + y) = sum_(j+k=i) binom(i, j) E_j(x) E_k(y) on random x, y

    Here E_i is the digit product of the Carlitz polynomials over F_q[T]; the sampled x, y have
    degree < precN and both sides are compared modulo T^precN.

    Returns:
        CheckResult: falsy with the offending pair of coefficient lists

    """
    context = context or CarlitzContext(q)
    base = context.base
    rng = random.Random(seed)
    for _ in range(samples):
        x = Poly(base, [rng.randrange(q) for _ in range(precN)])
        y = Poly(base, [rng.randrange(q) for _ in range(precN)])
        lhs = context.script_E_value(i, x + y)
        rhs = Poly.zero(base)
        for j in range(i + 1):
            c = lucas_binomial(i, j, base.p)
            if c:
                rhs = rhs + (context.script_E_value(j, x) * context.script_E_value(i - j, y)).scale(c)
        if (lhs - rhs).truncate(precN) != Poly.zero(base):
            return CheckResult(False, [x.to_json(), y.to_json()])
    return CheckResult(True, details={"samples": samples})
