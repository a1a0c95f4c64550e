import random
import unittest

from lfbasis.carlitz import CarlitzContext
from lfbasis.digit_principle import certify, expand
from lfbasis.hyperdiff import *
from lfbasis.local_fields import FieldSpec, LocalElem, LocalFieldSpec, Poly, all_polys
from lfbasis.quotient_algebra import FunctionTable
from lfbasis.utils import InputError, PrecisionError


def random_poly(base, degree, rng):
    return Poly(base, [rng.randrange(base.q) for _ in range(degree + 1)])


class TestHyperderivatives(unittest.TestCase):

    def test_worked_value(self):
        """
        Check D_3(1 + T + 2T^3 + 2T^7 + T^9) = 2 + T^4 over F_3
        """
        F3 = FieldSpec.of_order(3)
        f = Poly(F3, [1, 1, 0, 2, 0, 0, 0, 2, 0, 1])
        self.assertEqual(hyperdiff_poly(3, f).to_json(), [2, 0, 0, 0, 1])

    def test_monomials(self):
        """
        Check D_0 = id, D_j(T) = 0 for j >= 2 and D_2(T^5) = T^3 over F_3
        """
        F3 = FieldSpec.of_order(3)
        T = Poly.x(F3)
        f = Poly(F3, [2, 1, 1])
        self.assertEqual(hyperdiff_poly(0, f), f)
        self.assertEqual(hyperdiff_poly(1, T), Poly.one(F3))
        self.assertTrue(hyperdiff_poly(2, T).is_zero())
        self.assertEqual(hyperdiff_poly(2, T ** 5), T ** 3)

    def test_taylor(self):
        """
        Check that the Taylor map equals the substitution T -> T + X
        """
        rng = random.Random(5)
        for q in [2, 3, 4]:
            base = FieldSpec.of_order(q)
            for _ in range(5):
                self.assertTrue(taylor_check(random_poly(base, 9, rng), 6).passed)

    def test_taylor_map(self):
        """
        Check the Taylor map of T^2 over F_3
        """
        F3 = FieldSpec.of_order(3)
        T = Poly.x(F3)
        self.assertEqual(taylor_map(T ** 2, 2), [T ** 2, Poly(F3, [0, 2]), Poly.one(F3)])

    def test_leibniz(self):
        """
        Check the Leibniz rule with three factors over F_2 and two over F_3
        """
        rng = random.Random(6)
        F2, F3 = FieldSpec.of_order(2), FieldSpec.of_order(3)
        for j in range(5):
            factors = [random_poly(F2, 3, rng) for _ in range(3)]
            self.assertTrue(leibniz_check(j, factors).passed)
            factors = [random_poly(F3, 4, rng) for _ in range(2)]
            self.assertTrue(leibniz_check(j, factors).passed)

    def test_congruences(self):
        """
        Check the divisibility and power congruences at T and at T^2 + T + 1
        """
        F2 = FieldSpec.of_order(2)
        rng = random.Random(8)
        for f in [Poly.x(F2), Poly(F2, [1, 1, 1])]:
            for n in range(6):
                for j in range(n + 1):
                    result = congruence_checks(j, n, f, random_poly(F2, 2, rng))
                    self.assertTrue(result["divisibility"].passed)
                    self.assertTrue(result["power"].passed)

    def test_composition_and_iterates(self):
        """
        Check D_j D_k = binom(j + k, j) D_(j+k) and that p-fold iterates vanish
        """
        F3 = FieldSpec.of_order(3)
        f = random_poly(F3, 10, random.Random(9))
        for j in range(4):
            for k in range(4):
                self.assertTrue(composition_rule_check(j, k, f).passed)
        for j in range(1, 5):
            self.assertTrue(iterate_vanishes(j, f))

    def test_axioms_determine_operators(self):
        """
        Check that the Leibniz recursion from D_j(T) reproduces the binomial rule
        """
        for q in [2, 3]:
            base = FieldSpec.of_order(q)
            cache = {}
            for m in range(13):
                for j in range(6):
                    self.assertEqual(hyperdiff_from_axioms(j, m, base, cache), hyperdiff_poly(j, Poly.monomial(base, m)))

    def test_at_infinity(self):
        """
        Check D_j(1/T^m) = binom(-m, j) / T^(m+j)
        """
        self.assertEqual(hyperdiff_at_infinity(1, 1, 3), (2, 2))
        self.assertEqual(hyperdiff_at_infinity(2, 1, 2), (1, 3))
        self.assertEqual(hyperdiff_at_infinity(1, 2, 2), (0, 3))


class TestLocalHyperderivatives(unittest.TestCase):

    def test_negative_exponents(self):
        """
        Check D_1(1/T) = -1/T^2 over F_3((T)) with the precision drop
        """
        L = LocalFieldSpec.laurent(3)
        x = LocalElem.from_digits(L, -1, [1], 4)
        y = hyperdiff_local(1, x)
        self.assertEqual(y.val, -2)
        self.assertEqual(y.precN, 3)
        self.assertEqual(y.digits()[0], 2)

    def test_polynomial_agreement(self):
        """
        Check that D_j on truncations agrees with D_j on polynomials
        """
        L = LocalFieldSpec.laurent(3)
        T = Poly.x(L.residue)
        y = hyperdiff_local(2, L.elem(T ** 5, 8))
        self.assertTrue(y.agrees(L.elem(T ** 3, 6)))
        self.assertEqual(y.precN, 6)

    def test_precision_needed(self):
        """
        Check that D_j needs precision above j and characteristic p
        """
        L = LocalFieldSpec.laurent(2)
        with self.assertRaises(PrecisionError):
            hyperdiff_local(3, L.elem(Poly.x(L.residue), 3))
        with self.assertRaises(InputError):
            hyperdiff_local(1, LocalFieldSpec.padic(3).elem(4, 3))

    def test_reductions_match_carlitz(self):
        """
        Check that D_j and E_j have the same reduction on O/T^n
        """
        for q in [2, 3]:
            context = CarlitzContext(q)
            for n in range(1, 4):
                for x in all_polys(context.base, n):
                    for j in range(n):
                        self.assertEqual(hyperdiff_poly(j, x).coeff(0), context.E_value(j, x).coeff(0))

    def test_frobenius_expansion(self):
        """
        Check that x -> x^q has coefficients (T^q - T)^j at indices q^j and 0 elsewhere
        """
        for q, level in [(2, 4), (3, 3)]:
            L = LocalFieldSpec.laurent(q)
            family = local_hyperdiff_family(q)
            table = FunctionTable.tabulate(L, level, 5, lambda x: L.elem(x.frobenius_power(q), 5))
            expansion = expand(table, family)
            expected = frobenius_coefficients(q, level, L.residue)
            for i, a in enumerate(expansion.coeffs):
                if i in [q ** j for j in range(level)]:
                    j = [q ** k for k in range(level)].index(i)
                    self.assertTrue(a.agrees(L.elem(expected[j], 5)), "q = {}, j = {}".format(q, j))
                else:
                    self.assertTrue(a.is_zero(), "q = {}, i = {}".format(q, i))

    def test_local_certificates(self):
        """
        Check the hyperdifferential family over F_q((T)) up to level 4
        """
        for q in [2, 3]:
            family = local_hyperdiff_family(q)
            for n in range(1, 5):
                cert = certify(family, n)
                self.assertTrue(cert.passed, "q = {}, n = {}: {}".format(q, n, cert.reason))
                self.assertTrue(cert.evidence_matrix.is_unit_triangular())


class TestHyperderivativesAtPi(unittest.TestCase):

    def test_teichmuller_power_formula(self):
        """
        Check the expansion of D_j(pi^n) through the hyperderivatives of pi
        """
        F2 = FieldSpec.of_order(2)
        for pi in [Poly(F2, [1, 1, 1]), Poly(F2, [1, 1, 0, 1])]:
            for j in range(4):
                for n in range(6):
                    self.assertTrue(teichmuller_power_formula(j, n, pi).passed)

    def test_chain_rule(self):
        """
        Check the chain rule for D_(j,T) on f(pi) with Teichmuller coefficients
        """
        rng = random.Random(10)
        for j in range(4):
            for _ in range(20):
                coeffs = [rng.randrange(4) for _ in range(3)]
                result = chain_rule(j, [1, 1, 1], coeffs, 3, 2)
                self.assertTrue(result.passed, "j = {}, coefficients {}".format(j, coeffs))

    def test_completion_certificates(self):
        """
        Check the hyperdifferential family at pi = T^2 + T + 1 with a triangular evidence matrix
        """
        family = completion_hyperdiff_family(2, [1, 1, 1])
        for n in [1, 2]:
            cert = certify(family, n)
            self.assertTrue(cert.passed, "n = {}: {}".format(n, cert.reason))
            self.assertTrue(cert.evidence_matrix.is_triangular())
            self.assertTrue(all(c != 0 for c in cert.evidence_matrix.diagonal()))
