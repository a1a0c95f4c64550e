import random
import unittest
from fractions import Fraction

from lfbasis.local_fields import *
from lfbasis.utils import DivisionError, InputError, PrecisionError


class TestFiniteFields(unittest.TestCase):

    def test_default_modulus(self):
        """
        Check that F_4 is built on the smallest irreducible quadratic 1 + y + y^2
        """
        F = FieldSpec.of_order(4)
        self.assertEqual(F.modulus, (1, 1, 1))
        self.assertEqual(F.q, 4)
        self.assertEqual(F.p, 2)

    def test_field_axioms(self):
        """
        Check inverses, characteristic and the Frobenius fixed points in F_9
        """
        F = FieldSpec.of_order(9)
        for a in range(1, 9):
            self.assertEqual(F.mul(a, F.inv(a)), 1)
            self.assertEqual(F.power(a, 9), a)
        for a in range(9):
            self.assertEqual(F.add(F.add(a, a), a), 0)
            self.assertEqual(F.add(a, F.neg(a)), 0)

    def test_fq_elem_operators(self):
        """
        Check that FqElem overloads agree with the field methods
        """
        F = FieldSpec.of_order(8)
        a, b = F(3), F(6)
        self.assertEqual(int(a * b), F.mul(3, 6))
        self.assertEqual(int(a + b), F.add(3, 6))
        self.assertEqual((a / b) * b, a)

    def test_bad_orders(self):
        """
        Check that composite moduli and non prime powers are rejected
        """
        with self.assertRaises(InputError):
            FieldSpec.of_order(6)
        with self.assertRaises(InputError):
            FieldSpec(2, 2, [1, 0, 1])


class TestPolynomials(unittest.TestCase):

    def setUp(self):
        self.F2 = FieldSpec.of_order(2)
        self.T = Poly.x(self.F2)

    def test_irreducibility(self):
        """
        Check the irreducibility test on small polynomials over F_2
        """
        self.assertTrue(is_irreducible(Poly(self.F2, [1, 1, 1])))
        self.assertFalse(is_irreducible(Poly(self.F2, [1, 0, 1])))
        self.assertTrue(is_irreducible(Poly(self.F2, [1, 1, 0, 1])))
        self.assertEqual(smallest_irreducible(self.F2, 3), Poly(self.F2, [1, 1, 0, 1]))

    def test_division(self):
        """
        Check exact division, remainders and the extended gcd
        """
        a = Poly(self.F2, [1, 1, 1])
        b = Poly(self.F2, [1, 1])
        self.assertEqual((a * b).exact_div(b), a)
        with self.assertRaises(DivisionError):
            a.exact_div(b)
        g, s, t = poly_xgcd(a, b)
        self.assertEqual(g, Poly.one(self.F2))
        self.assertEqual(s * a + t * b, g)

    def test_frobenius_power(self):
        """
        Check that f^(p^k) computed coefficientwise matches repeated products
        """
        F = FieldSpec.of_order(9)
        f = Poly(F, [2, 5, 0, 7])
        self.assertEqual(f.frobenius_power(3), f ** 3)
        self.assertEqual(f.frobenius_power(9), f ** 9)


class TestLocalFields(unittest.TestCase):

    def test_canonical_reps(self):
        """
        Check the canonical representatives in the three settings
        """
        L = LocalFieldSpec.laurent(2)
        reps = canonical_reps(L, 2)
        self.assertEqual([r.coeffs for r in reps], [(), (1,), (0, 1), (1, 1)])
        self.assertEqual(canonical_reps(LocalFieldSpec.padic(3), 1), [0, 1, 2])
        C = LocalFieldSpec.completion_at_pi(2, [1, 1, 1])
        reps = canonical_reps(C, 1)
        self.assertEqual(len(reps), 4)
        self.assertTrue(all(r.degree() < 2 for r in reps))
        self.assertEqual(C.q, 4)
        self.assertEqual(C.d, 2)

    def test_point_index(self):
        """
        Check that point_index inverts the canonical enumeration
        """
        for L in [LocalFieldSpec.laurent(3), LocalFieldSpec.padic(5), LocalFieldSpec.completion_at_pi(2, [1, 1, 1])]:
            for i, x in enumerate(canonical_reps(L, 2)):
                self.assertEqual(L.point_index(x, 2), i)

    def test_reducible_pi(self):
        """
        Check that a reducible or non-monic pi is an input error
        """
        with self.assertRaises(InputError):
            LocalFieldSpec.completion_at_pi(2, [1, 0, 1])
        with self.assertRaises(InputError):
            LocalFieldSpec.completion_at_pi(3, [1, 2])
        with self.assertRaises(InputError):
            LocalFieldSpec.padic(4)

    def test_parse(self):
        """
        Check the compact field syntax and JSON round trip of field specs
        """
        self.assertEqual(LocalFieldSpec.parse("laurent:4"), LocalFieldSpec.laurent(4))
        self.assertEqual(LocalFieldSpec.parse("padic:7"), LocalFieldSpec.padic(7))
        C = LocalFieldSpec.parse("pi:2:1,1,1")
        self.assertEqual(C, LocalFieldSpec.completion_at_pi(2, [1, 1, 1]))
        self.assertEqual(LocalFieldSpec.from_json(C.to_json()), C)
        with self.assertRaises(InputError):
            LocalFieldSpec.parse("bogus:1")

    def test_teichmuller_lift(self):
        """
        Check that the Teichmuller lift of 2 in Q_5 is 7 mod 25
        """
        L = LocalFieldSpec.padic(5)
        w = L.teichmuller_lift(2, 2)
        self.assertEqual(w.to_exact(), 7)
        self.assertTrue((w ** 5).agrees(w))

    def test_teichmuller_digits(self):
        """
        Check digits of 2 in Z_3 and that digits reassemble the element
        """
        L = LocalFieldSpec.padic(3)
        x = L.elem(2, 3)
        digits = [w.to_exact() for w in teichmuller_digits(x, 3)]
        self.assertEqual(digits, [26, 1, 0])
        rng = random.Random(4)
        for _ in range(10):
            x = L.elem(rng.randrange(81), 4)
            total = L.zero(4)
            for j, w in enumerate(teichmuller_digits(x, 4)):
                self.assertTrue((w ** 3).agrees(w))
                total = total + w.shift(j)
            self.assertTrue(total.agrees(x))

    def test_teichmuller_digits_zero(self):
        """
        Check that every digit of 0 is 0
        """
        for L in [LocalFieldSpec.laurent(2), LocalFieldSpec.padic(3), LocalFieldSpec.completion_at_pi(2, [1, 1, 1])]:
            for j in range(3):
                self.assertTrue(teichmuller_digit(L.zero(3), j).is_zero())

    def test_digits_need_precision(self):
        """
        Check that asking for more digits than the precision raises
        """
        L = LocalFieldSpec.padic(3)
        with self.assertRaises(PrecisionError):
            teichmuller_digits(L.elem(5, 2), 3)

    def test_completion_teichmuller(self):
        """
        Check that Teichmuller digits at pi are roots of z^q = z and reassemble x
        """
        L = LocalFieldSpec.completion_at_pi(2, [1, 1, 1])
        for x in canonical_reps(L, 2):
            e = L.elem(x, 3)
            total = L.zero(3)
            for j, w in enumerate(teichmuller_digits(e, 3)):
                self.assertTrue((w ** 4).agrees(w))
                total = total + w.shift(j)
            self.assertTrue(total.agrees(e))

    def test_completion_digits_are_teichmuller(self):
        """
        Check that element digits at pi are the residues of its Teichmuller digits and survive JSON
        """
        L = LocalFieldSpec.completion_at_pi(2, [1, 1, 1])
        x = L.elem(L.exact([0, 1]), 3)
        expected = [w.residue() for w in teichmuller_digits(x, 3)]
        self.assertEqual(x.digits(), expected)
        self.assertEqual(x.digits()[0], 2)
        self.assertTrue(LocalElem.from_json(L, x.to_json()).agrees(x))
        for rep in canonical_reps(L, 3):
            e = L.elem(rep, 3)
            if not e.is_unit():
                continue
            self.assertEqual(e.digits(), [w.residue() for w in teichmuller_digits(e, 3)])
            self.assertTrue(LocalElem.from_json(L, e.to_json()).agrees(e))

    def test_precision_semantics(self):
        """
        Check that sums and products report only the precision their inputs justify
        """
        L = LocalFieldSpec.padic(3)
        a = L.elem(1, 3)
        b = L.elem(3, 5)
        self.assertEqual((a + b).precN, 3)
        self.assertEqual((a * b).precN, 4)
        self.assertEqual((a * b).val, 1)
        inv = L.elem(2, 4).inverse()
        self.assertTrue((inv * 2).agrees(L.one(4)))
        with self.assertRaises(PrecisionError):
            a.with_precision(4)
        with self.assertRaises(PrecisionError):
            L.zero(3).inverse()

    def test_laurent_negative_valuation(self):
        """
        Check valuation, norm and digits of 1/T in F_2((T))
        """
        L = LocalFieldSpec.laurent(2)
        x = LocalElem.from_digits(L, -1, [1], 3)
        self.assertEqual(x.val, -1)
        self.assertEqual(x.norm(), Fraction(2))
        self.assertEqual(x.digits(), [1, 0, 0, 0])
        self.assertFalse(x.is_integral())
        self.assertTrue((x * L.elem(Poly.x(L.residue), 3)).agrees(L.one(2)))

    def test_json(self):
        """
        Check the JSON form of a truncated element
        """
        L = LocalFieldSpec.laurent(3)
        x = L.elem(Poly(L.residue, [0, 2, 1]), 4)
        obj = x.to_json()
        self.assertEqual(obj, {"val": 1, "digits": [2, 1, 0], "precN": 4})
        self.assertEqual(LocalElem.from_json(L, obj), x)
        self.assertEqual(L.zero(3).to_json(), {"val": 3, "digits": [], "precN": 3})
