###############################################
##### Finite and Local Fields for lfbasis #####
###############################################

import json
from fractions import Fraction

import sympy

from .utils import *


class FiniteField:
    """Arithmetic shared by every finite field in lfbasis.

    Elements are encoded as integers 0..q-1. An element c_0 + c_1 y + ... + c_{k-1} y^{k-1} of an
    extension of a ground field of size b is the integer sum c_i b^i, so the ground field sits
    inside as 0..b-1 and an integer n maps to n mod p. Multiplication, inversion and powers use
    discrete-log tables built on first use from the slow polynomial product.

    Args:
        p (int): Characteristic
        q (int): Number of elements

    """

    def __init__(self, p, q):
        self.p = p
        self.q = q
        self._exp = None
        self._log = None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables()
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in {}".format(self))
        exp, log = self._tables()
        return exp[(-log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in {}".format(self))
            return 0
        exp, log = self._tables()
        return exp[(log[a] * e) % (self.q - 1)]

    def from_int(self, n):
        return n % self.p

    def coerce(self, value):
        """Turns an FqElem or an integer into an element code"""
        if isinstance(value, FqElem):
            assert value.field == self, "element of {} used in {}".format(value.field, self)
            return value.value
        if self.q == self.p:
            return value % self.p
        if not 0 <= value < self.q:
            raise InputError("{} is not an element code of {}".format(value, self))
        return value

    def elements(self):
        return range(self.q)

    def __call__(self, value):
        return FqElem(self, self.coerce(value))

    def _tables(self):
        if self._exp is None:
            self._build_tables()
        return self._exp, self._log

    def _build_tables(self):
        # search for a generator of the multiplicative group
        order = self.q - 1
        for g in range(1, self.q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._mul_slow(x, g)
            if len(powers) == order:
                break
        log = [0] * self.q
        for k, x in enumerate(powers):
            log[x] = k
        self._log = log
        self._exp = powers


class FieldSpec(FiniteField):
    """The finite field F_q = F_p[y]/(f)

    When no modulus is given, the smallest monic irreducible polynomial of degree f is used, where
    candidates are ordered by the integer their lower coefficients encode in base p.

    Args:
        p (int): A prime
        f (int, optional): Extension degree, defaults to 1
        modulus (list, optional): Coefficients (low to high) of a monic irreducible of degree f

    Attributes:
        p (int): Characteristic
        f (int): Degree over F_p
        q (int): p ** f
        modulus (tuple): Coefficients of the defining polynomial, low to high

    """

    def __init__(self, p, f=1, modulus=None):
        if not sympy.isprime(p):
            raise InputError("{} is not prime".format(p))
        if f < 1:
            raise InputError("extension degree must be at least 1, got {}".format(f))
        super().__init__(p, p ** f)
        self.f = f
        self._prime = self if f == 1 else FieldSpec(p)
        if f == 1:
            self.modulus = (0, 1)
        elif modulus is None:
            self.modulus = smallest_irreducible(self._prime, f).coeffs
        else:
            poly = Poly(self._prime, modulus)
            if poly.degree() != f or poly.lead() != 1:
                raise InputError("modulus {} is not monic of degree {}".format(list(modulus), f))
            if not is_irreducible(poly):
                raise InputError("modulus {} is reducible over F_{}".format(poly, p))
            self.modulus = poly.coeffs

    @classmethod
    def of_order(cls, q):
        """Returns the field with q elements and its default modulus"""
        factors = sympy.factorint(q) if q > 1 else {}
        if len(factors) != 1:
            raise InputError("{} is not a prime power".format(q))
        (p, f), = factors.items()
        return cls(p, f)

    def add(self, a, b):
        p = self.p
        if self.f == 1:
            return (a + b) % p
        result, weight = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            result += ((x + y) % p) * weight
            weight *= p
        return result

    def neg(self, a):
        p = self.p
        if self.f == 1:
            return (-a) % p
        result, weight = 0, 1
        while a:
            a, x = divmod(a, p)
            result += ((-x) % p) * weight
            weight *= p
        return result

    def mul(self, a, b):
        if self.f == 1:
            return a * b % self.p
        return super().mul(a, b)

    def _mul_slow(self, a, b):
        if self.f == 1:
            return a * b % self.p
        prime = self._prime
        product = Poly(prime, base_digits(a, self.p)) * Poly(prime, base_digits(b, self.p))
        product = product % Poly(prime, self.modulus)
        return from_digits(list(product.coeffs), self.p)

    def _key(self):
        return ("F", self.p, self.f, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "F_{}".format(self.q)

    def to_json(self):
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj):
        assert type(obj) == dict, "field spec is not an object"
        assert "p" in obj, "field spec does not contain \"p\" key"
        return cls(obj["p"], obj.get("f", 1), obj.get("modulus"))


class ExtensionField(FiniteField):
    """The residue field F_pi = F_r[T]/(pi) of a completion at a monic irreducible pi

    Args:
        base (FieldSpec): The field F_r
        modulus (Poly): Monic irreducible pi over F_r

    """

    def __init__(self, base, modulus):
        super().__init__(base.p, base.q ** modulus.degree())
        self.base = base
        self.modulus = modulus
        self.d = modulus.degree()

    def add(self, a, b):
        r = self.base.q
        result, weight = 0, 1
        while a or b:
            a, x = divmod(a, r)
            b, y = divmod(b, r)
            result += self.base.add(x, y) * weight
            weight *= r
        return result

    def neg(self, a):
        r = self.base.q
        result, weight = 0, 1
        while a:
            a, x = divmod(a, r)
            result += self.base.neg(x) * weight
            weight *= r
        return result

    def _mul_slow(self, a, b):
        return self.from_poly(self.to_poly(a) * self.to_poly(b))

    def to_poly(self, a):
        return Poly(self.base, base_digits(a, self.base.q))

    def from_poly(self, poly):
        return from_digits(list((poly % self.modulus).coeffs), self.base.q)

    def _key(self):
        return ("E", self.base._key(), self.modulus.coeffs)

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "F_{}[T]/({})".format(self.base.q, self.modulus)

    def to_json(self):
        return {"p": self.p, "f": None, "base": self.base.to_json(), "modulus": list(self.modulus.coeffs)}


class FqElem:
    """An element of a finite field with operator overloading

    Args:
        field (FiniteField): The field
        value (int): Element code in 0..q-1

    """
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        return self.field.coerce(other)

    def __add__(self, other):
        return FqElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FqElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FqElem(self.field, self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FqElem(self.field, self.field.power(self.value, e))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return "{}({})".format(self.field, self.value)


class Poly:
    """A polynomial in T over a finite field

    Coefficients are stored as element codes of the base field, index = degree, with no trailing
    zeros, so the zero polynomial has an empty coefficient tuple and degree -1.

    Args:
        base (FiniteField): Coefficient field
        coeffs (iterable): Coefficients, low degree first (ints or FqElem)

    """
    __slots__ = ("base", "coeffs")

    def __init__(self, base, coeffs=()):
        values = [base.coerce(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self.base = base
        self.coeffs = tuple(values)

    @classmethod
    def _raw(cls, base, values):
        # values already reduced element codes
        poly = cls.__new__(cls)
        values = list(values)
        while values and values[-1] == 0:
            values.pop()
        poly.base = base
        poly.coeffs = tuple(values)
        return poly

    @classmethod
    def zero(cls, base):
        return cls._raw(base, ())

    @classmethod
    def one(cls, base):
        return cls._raw(base, (1,))

    @classmethod
    def x(cls, base):
        return cls._raw(base, (0, 1))

    @classmethod
    def constant(cls, base, c):
        return cls._raw(base, (base.coerce(c),))

    @classmethod
    def monomial(cls, base, k, c=1):
        return cls._raw(base, [0] * k + [base.coerce(c)])

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def fq_coeffs(self):
        return [FqElem(self.base, c) for c in self.coeffs]

    def low_order(self):
        """Returns ord_T of the polynomial, None for zero"""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def _scalar(self, other):
        if isinstance(other, Poly):
            assert other.base == self.base, "polynomials over {} and {} do not mix".format(self.base, other.base)
            return other
        return Poly.constant(self.base, other)

    def __add__(self, other):
        other = self._scalar(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.base.add
        return Poly._raw(self.base, [add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        neg = self.base.neg
        return Poly._raw(self.base, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._scalar(other))

    def __rsub__(self, other):
        return self._scalar(other) - self

    def __mul__(self, other):
        other = self._scalar(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.base)
        base = self.base
        if base.q == base.p:
            p = base.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly._raw(base, [c % p for c in out])
        add, mul = base.add, base.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly._raw(base, out)

    __rmul__ = __mul__

    def mul_trunc(self, other, n):
        """Product modulo T^n"""
        if n <= 0:
            return Poly.zero(self.base)
        return self.truncate(n)._mul_low(other.truncate(n), n)

    def _mul_low(self, other, n):
        a, b = self.coeffs, other.coeffs
        base = self.base
        add, mul = base.add, base.mul
        out = [0] * min(n, max(len(a) + len(b) - 1, 0))
        for i, x in enumerate(a):
            if x:
                for j in range(min(len(b), n - i)):
                    y = b[j]
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly._raw(base, out)

    def scale(self, c):
        c = self.base.coerce(c)
        mul = self.base.mul
        return Poly._raw(self.base, [mul(c, x) for x in self.coeffs])

    def __pow__(self, e):
        assert e >= 0, "negative power of a polynomial"
        result = Poly.one(self.base)
        square = self
        while e:
            if e & 1:
                result = result * square
            e >>= 1
            if e:
                square = square * square
        return result

    def __divmod__(self, other):
        other = self._scalar(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        base = self.base
        rem = list(self.coeffs)
        dq = other.degree()
        inv_lead = base.inv(other.lead())
        quot = [0] * max(len(rem) - dq, 0)
        add, mul, neg = base.add, base.mul, base.neg
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            factor = mul(c, inv_lead)
            quot[k - dq] = factor
            factor = neg(factor)
            for i, y in enumerate(other.coeffs):
                if y:
                    rem[k - dq + i] = add(rem[k - dq + i], mul(factor, y))
        return Poly._raw(base, quot), Poly._raw(base, rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Exact division, raising DivisionError on a nonzero remainder"""
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise DivisionError("{} is not divisible by {}".format(self, other))
        return quot

    def truncate(self, n):
        """Remainder modulo T^n"""
        if n <= 0:
            return Poly.zero(self.base)
        return Poly._raw(self.base, self.coeffs[:n])

    def shift(self, k):
        """Multiplies by T^k; negative k drops the k lowest coefficients"""
        if k >= 0:
            if self.is_zero():
                return self
            return Poly._raw(self.base, (0,) * k + self.coeffs)
        return Poly._raw(self.base, self.coeffs[-k:])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.base.inv(self.lead()))

    def frobenius_power(self, e):
        """Returns self ** e for e a power of the characteristic

        In characteristic p, (sum c_i T^i)^e = sum c_i^e T^(i e) when e is a power of p.

        """
        base = self.base
        out = [0] * (self.degree() * e + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * e] = base.power(c, e)
        return Poly._raw(base, out)

    def compose(self, other):
        """Returns self(other) by Horner's rule"""
        result = Poly.zero(self.base)
        for c in reversed(self.coeffs):
            result = result * other + Poly.constant(self.base, c)
        return result

    def powmod(self, e, modulus):
        result = Poly.one(self.base) % modulus
        square = self % modulus
        while e:
            if e & 1:
                result = (result * square) % modulus
            e >>= 1
            if e:
                square = (square * square) % modulus
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.base == other.base and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Poly.constant(self.base, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                power = "T" if i == 1 else "T^{}".format(i)
                terms.append(power if c == 1 else "{}*{}".format(c, power))
        return " + ".join(terms)

    def to_json(self):
        return list(self.coeffs)


def exact_divide(a, b):
    return a.exact_div(b)

def poly_gcd(a, b):
    """Monic greatest common divisor"""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()

def poly_xgcd(a, b):
    """Returns (g, s, t) with g = gcd(a, b) monic and g = s a + t b"""
    base = a.base
    s, s1 = Poly.one(base), Poly.zero(base)
    t, t1 = Poly.zero(base), Poly.one(base)
    while not b.is_zero():
        quot, rem = divmod(a, b)
        a, b = b, rem
        s, s1 = s1, s - quot * s1
        t, t1 = t1, t - quot * t1
    if a.is_zero():
        return a, s, t
    inv = a.base.inv(a.lead())
    return a.scale(inv), s.scale(inv), t.scale(inv)

def is_irreducible(f):
    """Irreducibility test over the base field of f

    f of degree n is irreducible iff gcd(f, T^(q^i) - T) = 1 for 1 <= i <= n/2.

    """
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    q = f.base.q
    t = Poly.x(f.base)
    h = t
    for _ in range(n // 2):
        h = h.powmod(q, f)
        if poly_gcd(f, h - t).degree() > 0:
            return False
    return True

def smallest_irreducible(base, degree):
    """First monic irreducible of the given degree, ordered by the integer of its lower coefficients"""
    for m in range(base.q ** degree):
        candidate = Poly(base, base_digits(m, base.q, degree) + [1])
        if is_irreducible(candidate):
            return candidate
    raise InputError("no irreducible of degree {} over {}".format(degree, base))

def all_polys(base, bound):
    """Polynomials of degree < bound in canonical order"""
    return [Poly._raw(base, base_digits(i, base.q, bound)) for i in range(base.q ** bound)]


class _LaurentRing:
    """Integral representatives of F_q[[T]]: polynomials over F_q read modulo T^m"""

    def __init__(self, base):
        self.base = base

    def zero(self):
        return Poly.zero(self.base)

    def one(self):
        return Poly.one(self.base)

    def reduce(self, a, m):
        return a.truncate(m)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b, m):
        return a.mul_trunc(b, m)

    def order(self, a, m):
        o = a.low_order()
        return m if o is None or o >= m else o

    def shift_down(self, a, k):
        return a.shift(-k)

    def shift_up(self, a, k):
        return a.shift(k)

    def inverse(self, u, m):
        base = self.base
        c = [u.coeff(i) for i in range(m)]
        inv0 = base.inv(c[0])
        out = [inv0]
        for n in range(1, m):
            acc = 0
            for k in range(1, n + 1):
                if c[k]:
                    acc = base.add(acc, base.mul(c[k], out[n - k]))
            out.append(base.neg(base.mul(inv0, acc)))
        return Poly._raw(base, out)

    def residue(self, a):
        return a.coeff(0)

    def lift(self, c):
        return Poly.constant(self.base, c)

    def teichmuller(self, c, m):
        return self.lift(c).truncate(m)

    def digit_lift(self, c, m):
        return self.lift(c)

    def is_zero(self, a):
        return a.is_zero()


class _PiAdicRing:
    """Integral representatives of the completion of F_r(T) at pi: polynomials read modulo pi^m"""

    def __init__(self, base, pi, residue):
        self.base = base
        self.pi = pi
        self.residue_field = residue
        self.q = residue.q
        self._powers = [Poly.one(base), pi]

    def pi_power(self, k):
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.pi)
        return self._powers[k]

    def zero(self):
        return Poly.zero(self.base)

    def one(self):
        return Poly.one(self.base)

    def reduce(self, a, m):
        if m <= 0:
            return Poly.zero(self.base)
        return a % self.pi_power(m)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b, m):
        return self.reduce(a * b, m)

    def order(self, a, m):
        count = 0
        while count < m and not a.is_zero():
            quot, rem = divmod(a, self.pi)
            if not rem.is_zero():
                return count
            a = quot
            count += 1
        return m if a.is_zero() else count

    def shift_down(self, a, k):
        return a // self.pi_power(k)

    def shift_up(self, a, k):
        return a * self.pi_power(k)

    def inverse(self, u, m):
        g, s, _ = poly_xgcd(u, self.pi_power(m))
        if g.degree() != 0:
            raise PrecisionError("{} is not a unit modulo pi^{}".format(u, m))
        return s % self.pi_power(m)

    def residue(self, a):
        return self.residue_field.from_poly(a)

    def lift(self, c):
        return self.residue_field.to_poly(c)

    def digit_lift(self, c, m):
        return self.teichmuller(c, m)

    def teichmuller(self, c, m):
        # z -> z^q converges: the differences are raised to the q-th power at every step
        z = self.reduce(self.lift(c), m)
        while True:
            w = self.reduce(z.frobenius_power(self.q), m)
            if w == z:
                return z
            z = w

    def is_zero(self, a):
        return a.is_zero()


class _PadicRing:
    """Integral representatives of Z_p: integers read modulo p^m"""

    def __init__(self, p):
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def reduce(self, a, m):
        if m <= 0:
            return 0
        return a % self.p ** m

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b, m):
        return self.reduce(a * b, m)

    def order(self, a, m):
        if a % self.p ** m == 0:
            return m
        count = 0
        while a % self.p == 0:
            a //= self.p
            count += 1
        return count

    def shift_down(self, a, k):
        return a // self.p ** k

    def shift_up(self, a, k):
        return a * self.p ** k

    def inverse(self, u, m):
        return pow(u, -1, self.p ** m)

    def residue(self, a):
        return a % self.p

    def lift(self, c):
        return c

    def teichmuller(self, c, m):
        modulus = self.p ** m
        z = c % modulus
        while True:
            w = pow(z, self.p, modulus)
            if w == z:
                return z
            z = w

    def digit_lift(self, c, m):
        # residue digits 0..p-1, carried
        return c

    def is_zero(self, a):
        return a == 0


class LocalFieldSpec:
    """One of the three supported local fields K with integer ring O

    Use the constructors laurent(q), completion_at_pi(r, pi) and padic(p). Exact elements of O are
    Poly objects (laurent, completion_at_pi) or Python integers (padic).

    Attributes:
        kind (str): "laurent", "completion_at_pi" or "padic"
        residue (FiniteField): The residue field F, of size q
        q (int): Size of the residue field
        p (int): Residue characteristic
        characteristic (int): p for the function fields, 0 for Q_p
        coefficient_field (FieldSpec): Field of polynomial coefficients (None for padic)
        r (int): Size of coefficient_field (p for padic)
        d (int): Residue degree over coefficient_field
        uniformizer: T, pi or p as an exact element
        ring: Arithmetic on integral representatives

    """

    KINDS = ("laurent", "completion_at_pi", "padic")

    def __init__(self, kind, residue, ring, uniformizer, coefficient_field=None, r=None, d=1):
        assert kind in LocalFieldSpec.KINDS, "unknown local field kind {}".format(kind)
        self.kind = kind
        self.residue = residue
        self.ring = ring
        self.uniformizer = uniformizer
        self.coefficient_field = coefficient_field
        self.q = residue.q
        self.p = residue.p
        self.r = r
        self.d = d
        self.characteristic = 0 if kind == "padic" else self.p

    @classmethod
    def laurent(cls, q):
        base = FieldSpec.of_order(q)
        return cls("laurent", base, _LaurentRing(base), Poly.x(base), coefficient_field=base, r=q, d=1)

    @classmethod
    def completion_at_pi(cls, r, pi):
        base = FieldSpec.of_order(r)
        if not isinstance(pi, Poly):
            pi = Poly(base, pi)
        if pi.degree() < 1 or pi.lead() != 1:
            raise InputError("pi = {} must be monic of positive degree".format(pi))
        if not is_irreducible(pi):
            raise InputError("pi = {} is reducible over F_{}".format(pi, r))
        residue = ExtensionField(base, pi)
        return cls("completion_at_pi", residue, _PiAdicRing(base, pi, residue), pi,
            coefficient_field=base, r=r, d=pi.degree())

    @classmethod
    def padic(cls, p):
        if not sympy.isprime(p):
            raise InputError("{} is not prime".format(p))
        return cls("padic", FieldSpec(p), _PadicRing(p), p, r=p, d=1)

    @classmethod
    def parse(cls, text):
        """Parses laurent:Q, padic:P, pi:R:c0,c1,... or an inline JSON field object"""
        text = text.strip()
        if text.startswith("{"):
            try:
                return cls.from_json(json.loads(text))
            except ValueError:
                raise InputError("field spec {} is not valid JSON".format(text))
        parts = text.split(":")
        try:
            if parts[0] == "laurent" and len(parts) == 2:
                return cls.laurent(int(parts[1]))
            if parts[0] == "padic" and len(parts) == 2:
                return cls.padic(int(parts[1]))
            if parts[0] in ("pi", "completion_at_pi") and len(parts) == 3:
                return cls.completion_at_pi(int(parts[1]), [int(c) for c in parts[2].split(",")])
        except ValueError:
            pass
        raise InputError("cannot parse field spec \"{}\"".format(text))

    def _key(self):
        if self.kind == "completion_at_pi":
            return (self.kind, self.r, self.uniformizer.coeffs)
        return (self.kind, self.q)

    def __eq__(self, other):
        return isinstance(other, LocalFieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.kind == "laurent":
            return "F_{}((T))".format(self.q)
        if self.kind == "padic":
            return "Q_{}".format(self.p)
        return "F_{}(T) completed at {}".format(self.r, self.uniformizer)

    def to_json(self):
        obj = {"kind": self.kind, "residue": self.residue.to_json()}
        if self.kind == "laurent":
            obj["q"] = self.q
        elif self.kind == "padic":
            obj["p"] = self.p
        else:
            obj["r"] = self.r
            obj["pi"] = self.uniformizer.to_json()
        return obj

    @classmethod
    def from_json(cls, obj):
        assert type(obj) == dict, "field spec is not an object"
        assert "kind" in obj, "field spec does not contain \"kind\" key"
        kind = obj["kind"]
        if kind == "laurent":
            assert "q" in obj, "laurent field spec does not contain \"q\" key"
            return cls.laurent(obj["q"])
        if kind == "padic":
            assert "p" in obj, "padic field spec does not contain \"p\" key"
            return cls.padic(obj["p"])
        if kind == "completion_at_pi":
            assert "r" in obj and "pi" in obj, "completion field spec needs \"r\" and \"pi\" keys"
            return cls.completion_at_pi(obj["r"], obj["pi"])
        raise InputError("unknown local field kind {}".format(kind))

    # exact elements of O

    @property
    def digit_base(self):
        """Base of the digits of canonical representatives (q, r or p)"""
        return self.r if self.kind == "completion_at_pi" else self.q

    def num_points(self, n):
        return self.q ** n

    def point(self, i, n):
        """The canonical representative with index i at level n"""
        if self.kind == "padic":
            return i
        return Poly._raw(self.coefficient_field, base_digits(i, self.digit_base, self.d * n))

    def canonical_reps(self, n):
        assert n >= 0, "level must be nonnegative"
        return [self.point(i, n) for i in range(self.num_points(n))]

    def reduce_exact(self, x, n):
        return self.ring.reduce(x, n)

    def point_index(self, x, n):
        """Index of the canonical representative congruent to x mod m^n"""
        y = self.reduce_exact(x, n)
        if self.kind == "padic":
            return y
        return from_digits(list(y.coeffs), self.digit_base)

    def exact(self, literal):
        """Turns a JSON literal (int or coefficient list) into an exact element of O"""
        if self.kind == "padic":
            assert type(literal) == int, "padic elements are integers, got {}".format(literal)
            return literal
        if isinstance(literal, Poly):
            return literal
        if type(literal) == int:
            return Poly.constant(self.coefficient_field, self.coefficient_field.from_int(literal))
        assert type(literal) == list, "polynomial elements are coefficient lists, got {}".format(literal)
        return Poly(self.coefficient_field, literal)

    def exact_to_json(self, x):
        return x if self.kind == "padic" else x.to_json()

    def exact_from_int(self, k):
        if self.kind == "padic":
            return k
        return Poly.constant(self.coefficient_field, self.coefficient_field.from_int(k))

    def pi_power(self, k):
        return self.uniformizer ** k

    def coset_probes(self, n):
        """Nonzero elements of m^n used to test constancy on cosets of m^n"""
        pi_n = self.pi_power(n)
        probes = [pi_n * g for g in self.canonical_reps(1)[1:]]
        return probes + [pi_n + pi_n * self.uniformizer]

    def scalar(self, c, n):
        """Exact representative of the coefficient-field lift of residue c, good modulo m^n"""
        return self.ring.teichmuller(self.residue.coerce(c), n)

    # truncated elements

    def elem(self, x, precN, val=0):
        """LocalElem pi^val * x for an exact x in O, known modulo pi^precN"""
        return LocalElem.make(self, val, x, precN)

    def zero(self, precN):
        return LocalElem(self, precN, self.ring.zero(), precN)

    def one(self, precN):
        return LocalElem.make(self, 0, self.ring.one(), precN)

    def from_int(self, k, precN):
        return LocalElem.make(self, 0, self.exact_from_int(k), precN)

    def teichmuller_lift(self, c, precN):
        """The root of z^q = z reducing to the residue c"""
        return LocalElem.make(self, 0, self.ring.teichmuller(self.residue.coerce(c), precN), precN)


class LocalElem:
    """A truncated element pi^val * unit of a local field, known modulo pi^precN

    The unit is an integral representative known modulo pi^(precN - val); zero elements are stored
    with val == precN. Arithmetic reports the precision the inputs justify and nothing more.

    Args:
        field (LocalFieldSpec): The field
        val (int): Valuation (exact unless the element is zero)
        unit: Unit representative
        precN (int): Absolute precision

    """
    __slots__ = ("field", "val", "unit", "precN")

    def __init__(self, field, val, unit, precN):
        self.field = field
        self.val = val
        self.unit = unit
        self.precN = precN

    @classmethod
    def make(cls, field, val, rep, precN):
        """Normalizes pi^val * rep, where rep is any integral representative"""
        ring = field.ring
        rel = precN - val
        if rel <= 0:
            return cls(field, precN, ring.zero(), precN)
        rep = ring.reduce(rep, rel)
        o = ring.order(rep, rel)
        if o >= rel:
            return cls(field, precN, ring.zero(), precN)
        if o:
            rep = ring.shift_down(rep, o)
        return cls(field, val + o, rep, precN)

    @classmethod
    def from_digits(cls, field, val, digits, precN):
        ring = field.ring
        assert len(digits) <= max(precN - val, 0), "more digits than the precision window"
        rel = precN - val
        rep = ring.zero()
        for k, c in enumerate(digits):
            c = field.residue.coerce(c)
            if c:
                rep = ring.add(rep, ring.shift_up(ring.digit_lift(c, rel - k), k))
        return cls.make(field, val, rep, precN)

    @classmethod
    def from_json(cls, field, obj):
        assert type(obj) == dict, "local element is not an object"
        for key in ("val", "digits", "precN"):
            assert key in obj, "local element does not contain \"{}\" key".format(key)
        return cls.from_digits(field, obj["val"], obj["digits"], obj["precN"])

    def to_json(self):
        return {"val": self.val, "digits": self.digits(), "precN": self.precN}

    def is_zero(self):
        return self.val >= self.precN

    def is_integral(self):
        return self.is_zero() or self.val >= 0

    def is_unit(self):
        return not self.is_zero() and self.val == 0

    def digits(self):
        """Residue digits from pi^val up to pi^(precN-1)

        Digits are taken in the coefficient field: constants for F_q((T)), Teichmuller lifts at pi, and
        carried residues 0..p-1 for Q_p.

        """
        ring = self.field.ring
        if self.is_zero():
            return []
        rel = self.precN - self.val
        y, out = self.unit, []
        for k in range(rel):
            c = ring.residue(y)
            out.append(c)
            y = ring.shift_down(ring.sub(y, ring.digit_lift(c, rel - k)), 1)
        return out

    def _coerce(self, other):
        if isinstance(other, LocalElem):
            if other.field != self.field:
                raise InputError("cannot combine elements of {} and {}".format(self.field, other.field))
            return other
        if isinstance(other, int):
            return self.field.from_int(other, max(self.precN, 1))
        return LocalElem.make(self.field, 0, other, max(self.precN, 1))

    def _aligned(self, m):
        if self.is_zero():
            return self.field.ring.zero()
        return self.field.ring.shift_up(self.unit, self.val - m)

    def __add__(self, other):
        other = self._coerce(other)
        N = min(self.precN, other.precN)
        m = min(self.val, other.val, N)
        total = self.field.ring.add(self._aligned(m), other._aligned(m))
        return LocalElem.make(self.field, m, total, N)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return LocalElem.make(self.field, self.val, self.field.ring.neg(self.unit), self.precN)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        N = min(self.precN + other.val, other.precN + self.val)
        if self.is_zero() or other.is_zero():
            return self.field.zero(N)
        v = self.val + other.val
        rep = self.field.ring.mul(self.unit, other.unit, N - v)
        return LocalElem.make(self.field, v, rep, N)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise PrecisionError("cannot invert an element that is zero to precision {}".format(self.precN))
        rel = self.precN - self.val
        return LocalElem(self.field, -self.val, self.field.ring.inverse(self.unit, rel), rel - self.val)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return self.field.one(max(self.precN, 1))
        result = None
        square = self
        while e:
            if e & 1:
                result = square if result is None else result * square
            e >>= 1
            if e:
                square = square * square
        return result

    def shift(self, k):
        """Multiplies by pi^k"""
        if self.is_zero():
            return self.field.zero(self.precN + k)
        return LocalElem(self.field, self.val + k, self.unit, self.precN + k)

    def with_precision(self, N):
        """Forgets precision down to pi^N"""
        if N > self.precN:
            raise PrecisionError("element known to precision {} asked for {}".format(self.precN, N))
        if self.is_zero():
            return self.field.zero(N)
        return LocalElem.make(self.field, self.val, self.unit, N)

    def residue(self):
        """Residue class as an element code of the residue field"""
        if self.is_zero():
            if self.precN < 1:
                raise PrecisionError("residue of an element known only to precision {}".format(self.precN))
            return 0
        if self.val < 0:
            raise InputError("element of valuation {} is not integral".format(self.val))
        if self.val > 0:
            return 0
        return self.field.ring.residue(self.unit)

    def residue_elem(self):
        return FqElem(self.field.residue, self.residue())

    def to_exact(self):
        """Integral representative modulo pi^precN"""
        if self.is_zero():
            return self.field.ring.zero()
        if self.val < 0:
            raise InputError("element of valuation {} is not integral".format(self.val))
        ring = self.field.ring
        return ring.reduce(ring.shift_up(self.unit, self.val), self.precN)

    def norm(self):
        """Normalized absolute value q^(-val) as a Fraction (0 for zero)"""
        if self.is_zero():
            return Fraction(0)
        return Fraction(1, self.field.q ** self.val) if self.val >= 0 else Fraction(self.field.q ** -self.val)

    def agrees(self, other, N=None):
        """True if the two elements agree modulo pi^N (default: the common precision)"""
        diff = self - self._coerce(other)
        if N is None:
            return diff.is_zero()
        if N > diff.precN:
            raise PrecisionError("cannot compare to precision {} (only {} known)".format(N, diff.precN))
        return diff.val >= N

    def __eq__(self, other):
        if not isinstance(other, LocalElem):
            return NotImplemented
        return (self.field == other.field and self.val == other.val and self.precN == other.precN
            and self.unit == other.unit)

    def __hash__(self):
        return hash((self.field, self.val, self.precN, self.unit))

    def __repr__(self):
        if self.is_zero():
            return "O(pi^{})".format(self.precN)
        return "pi^{} * ({}) + O(pi^{})".format(self.val, self.unit, self.precN)


def canonical_reps(L, n):
    """The q^n canonical representatives of O/m^n in canonical order"""
    return L.canonical_reps(n)

def teichmuller_digits(x, count, precN=None):
    """Teichmuller digits omega_0(x), ..., omega_(count-1)(x)

    Args:
        x (LocalElem): An integral element known to precision >= count
        count (int): Number of digits
        precN (int, optional): Precision of the returned lifts, default x.precN

    Returns:
        list: LocalElem digits with omega^q = omega and x = sum omega_j pi^j

    """
    field = x.field
    if not x.is_integral():
        raise InputError("Teichmuller digits need an integral element")
    if x.precN < count:
        raise PrecisionError("digit {} needs precision {} but x is known to {}".format(count - 1, count, x.precN))
    W = precN or x.precN
    digits = []
    y = x
    for k in range(count):
        w = field.teichmuller_lift(y.residue(), max(W, y.precN))
        digits.append(w.with_precision(W))
        if k + 1 < count:
            y = (y - w).shift(-1)
    return digits

def teichmuller_digit(x, j, precN=None):
    """The j-th Teichmuller digit omega_j(x)"""
    return teichmuller_digits(x, j + 1, precN)[j]
