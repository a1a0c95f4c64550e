import itertools
import random
import unittest
from fractions import Fraction

from sympy import legendre_symbol

from lfbasis.baker_tate import *
from lfbasis.digit_principle import certify, sup_norm
from lfbasis.local_fields import LocalFieldSpec, Poly, teichmuller_digits
from lfbasis.quotient_algebra import FunctionTable
from lfbasis.utils import InputError, PrecisionError, base_digits


def monomial(j, q):
    """Exponent key of the Baker monomial with the base-q digits of j"""
    return tuple((k, c) for k, c in enumerate(base_digits(j, q)) if c)


class TestBakerBasis(unittest.TestCase):

    def test_certificates(self):
        """
        Check the Teichmuller digit seeds over F_2((T)), Q_3 and the completion at T^2 + T + 1
        """
        fields = [LocalFieldSpec.laurent(2), LocalFieldSpec.padic(3), LocalFieldSpec.completion_at_pi(2, [1, 1, 1])]
        for L in fields:
            family = baker_family(L)
            for n in range(1, 4):
                cert = certify(family, n)
                self.assertTrue(cert.passed, "{}, n = {}: {}".format(L, n, cert.reason))
                self.assertEqual(len(set(cert.bijection)), L.num_points(n))

    def test_legendre(self):
        """
        Check that omega_0^((p-1)/2) is the quadratic character
        """
        for p in [3, 5, 7]:
            family = baker_family(LocalFieldSpec.padic(p))
            for x in range(1, p):
                self.assertEqual(baker_legendre(p, x, family), legendre_symbol(x, p))
        with self.assertRaises(AssertionError):
            baker_legendre(2, 1)


class TestTateSeries(unittest.TestCase):

    def setUp(self):
        self.L2 = LocalFieldSpec.laurent(2)
        self.L3 = LocalFieldSpec.laurent(3)

    def test_reduce_exponent(self):
        """
        Check exponent reduction modulo X^q - X
        """
        self.assertEqual(reduce_exponent(5, 3), 1)
        self.assertEqual(reduce_exponent(4, 3), 2)
        self.assertEqual(reduce_exponent(2, 3), 2)
        self.assertEqual(reduce_exponent(7, 2), 1)
        self.assertEqual(reduce_exponent(0, 5), 0)

    def test_frobenius_relation(self):
        """
        Check that X_0^q - X_0 simplifies to 0
        """
        for L in [self.L2, self.L3]:
            s = TateSeries(L, {((0, L.q),): 1, ((0, 1),): -1}, 3)
            self.assertFalse(s.is_zero())
            self.assertTrue(q_simplify(s).is_zero())

    def test_high_power(self):
        """
        Check that X_1^5 simplifies to X_1 when q = 3
        """
        s = q_simplify(TateSeries(self.L3, {((1, 5),): 1}, 3))
        self.assertEqual(s, TateSeries.variable(self.L3, 1, 3))
        self.assertEqual(q_simplify(s), s)

    def test_units_times_ideal(self):
        """
        Check that the indicators of the units and of the maximal ideal multiply to 0
        """
        for L in [self.L2, self.L3]:
            product = units_indicator_series(L, 3) * maximal_ideal_series(L, 3)
            self.assertTrue(product.is_zero())

    def test_indicators(self):
        """
        Check the unit and maximal ideal indicators pointwise at level 2
        """
        L = self.L3
        units = series_to_function(units_indicator_series(L, 3), 2, 3)
        ideal = series_to_function(maximal_ideal_series(L, 3), 2, 3)
        for v in range(9):
            expected = 1 if v % 3 else 0
            self.assertTrue(units[v].agrees(L.from_int(expected, 3)))
            self.assertTrue(ideal[v].agrees(L.from_int(1 - expected, 3)))

    def test_exponent_bound(self):
        """
        Check that a q-simplified series refuses exponents above q - 1
        """
        with self.assertRaises(AssertionError):
            QSimplifiedSeries(self.L2, {((0, 2),): 1}, 3)

    def test_round_trip(self):
        """
        Check that a function survives conversion to a series and back
        """
        rng = random.Random(12)
        for L, level in [(self.L2, 3), (self.L3, 2)]:
            for _ in range(50):
                values = [L.elem(Poly(L.residue, [rng.randrange(L.q) for _ in range(4)]), 4)
                    for _ in range(L.num_points(level))]
                table = FunctionTable(L, level, 4, values)
                series = function_to_series(table)
                self.assertLessEqual(series.max_exponent(), L.q - 1)
                again = series_to_function(series, level, 4)
                for a, b in zip(again.values, table.values):
                    self.assertTrue(a.agrees(b))

    def test_isometry(self):
        """
        Check sup norm = coefficient norm for every residue-coefficient series with q = 2, n <= 3
        """
        L = self.L2
        for n in range(1, 4):
            keys = [monomial(j, 2) for j in range(2 ** n)]
            for mask in itertools.product([0, 1], repeat=len(keys)):
                terms = {key: L.one(3) for key, bit in zip(keys, mask) if bit}
                series = QSimplifiedSeries(L, terms, 3)
                table = series_to_function(series, n, 3)
                self.assertEqual(sup_norm(table), series.norm())

    def test_ball_indicator(self):
        """
        Check the ball indicator pointwise and that disjoint balls multiply to 0
        """
        L = self.L3
        self.assertEqual(ball_indicator_series(L.zero(3), 0).terms, {(): L.one(3)})
        a = L.elem(L.exact([2, 1]), 3)
        ball = ball_indicator_series(a, 2)
        table = series_to_function(ball, 2, 3)
        center = L.point_index(L.exact([2, 1]), 2)
        for v in range(9):
            self.assertTrue(table[v].agrees(L.from_int(1 if v == center else 0, 3)))
        other = ball_indicator_series(L.elem(L.exact([2, 2]), 3), 2)
        self.assertTrue((ball * other).is_zero())
        self.assertEqual(ball * ball, ball)
        with self.assertRaises(PrecisionError):
            ball_indicator_series(L.elem(L.exact([1]), 1), 2)

    def test_multiplicative_evaluation(self):
        """
        Check that evaluation at a point is a ring homomorphism over F_3[[T]]
        """
        L = self.L3
        rng = random.Random(13)

        def random_series():
            terms = {}
            for _ in range(4):
                key = ((0, rng.randrange(3)), (1, rng.randrange(3)))
                terms[key] = L.elem(Poly(L.residue, [rng.randrange(3) for _ in range(4)]), 4)
            return TateSeries(L, terms, 4)

        for _ in range(5):
            s, t = random_series(), random_series()
            x = L.elem(Poly(L.residue, [rng.randrange(3) for _ in range(4)]), 4)
            self.assertTrue(evaluate_at_point(s * t, x).agrees(evaluate_at_point(s, x) * evaluate_at_point(t, x)))
            self.assertTrue(evaluate_at_point(s + t, x).agrees(evaluate_at_point(s, x) + evaluate_at_point(t, x)))
            omega = teichmuller_digits(x, 1)[0]
            linear = TateSeries.variable(L, 0, 4) - TateSeries.constant(L, omega, 4)
            self.assertTrue(evaluate_at_point(linear, x).is_zero())

    def test_evaluation_needs_precision(self):
        """
        Check that a variable beyond the precision of the point raises
        """
        L = self.L2
        s = TateSeries.variable(L, 3, 4)
        with self.assertRaises(PrecisionError):
            s.evaluate(L.elem(L.exact([1, 1]), 2))
        with self.assertRaises(InputError):
            series_to_function(q_simplify(s), 2, 4)

    def test_analytic_power(self):
        """
        Check that the simplified powers of sum T^j X_j evaluate to x^k
        """
        L = self.L2
        for k in [1, 2, 3]:
            table = series_to_function(analytic_power(L, k, 3, 4), 3, 4)
            for x, value in zip(L.canonical_reps(3), table.values):
                self.assertTrue(value.agrees(L.elem(x ** k, 4)))

    def test_json(self):
        """
        Check that series JSON is sorted by degree and reloads
        """
        L = self.L3
        s = q_simplify(TateSeries(L, {((1, 1),): 2, ((0, 2),): 1, (): 1}, 3))
        obj = s.to_json()
        self.assertEqual([t["exponents"] for t in obj["terms"]], [[], [[1, 1]], [[0, 2]]])
        self.assertEqual(TateSeries.from_json(obj), s)
        self.assertEqual(s.norm(), Fraction(1))
