import random
import unittest
from fractions import Fraction

from lfbasis.baker_tate import baker_family
from lfbasis.carlitz import global_carlitz_family, local_carlitz_family
from lfbasis.charzero import digit_binomial_family
from lfbasis.digit_principle import *
from lfbasis.hyperdiff import local_hyperdiff_family
from lfbasis.local_fields import LocalFieldSpec, Poly
from lfbasis.quotient_algebra import *
from lfbasis.utils import CertificationError, InputError, SeparationError


def random_table(L, level, precN, rng):
    """A random integral function table"""
    values = []
    for _ in range(L.num_points(level)):
        if L.kind == "padic":
            values.append(L.elem(rng.randrange(L.p ** precN), precN))
        else:
            length = L.d * precN
            values.append(L.elem(Poly(L.coefficient_field, [rng.randrange(L.r) for _ in range(length)]), precN))
    return FunctionTable(L, level, precN, values)


class TestQuotientAlgebra(unittest.TestCase):

    def test_reduce_table(self):
        """
        Check reduction of an integral table and rejection of a non-integral one
        """
        L = LocalFieldSpec.padic(3)
        t = FunctionTable(L, 1, 2, [1, 5, 3])
        self.assertEqual(reduce_table(t).values, [1, 2, 0])
        with self.assertRaises(InputError):
            reduce_table(t.shift(-1))

    def test_table_size(self):
        """
        Check that a table with the wrong number of values is rejected
        """
        with self.assertRaises(InputError):
            FunctionTable(LocalFieldSpec.padic(3), 1, 2, [1, 2])

    def test_rank(self):
        """
        Check rank, invertibility and kernel vectors over F_3
        """
        F = LocalFieldSpec.padic(3).residue
        m = ResidueMatrix(F, [[1, 2], [2, 1]])
        self.assertEqual(rank_over_residue(m), (1, False))
        v = m.kernel_vector()
        self.assertEqual(m.apply(v), [0, 0])
        m = ResidueMatrix(F, [[1, 0], [2, 1]])
        self.assertEqual(rank_over_residue(m), (2, True))
        self.assertEqual(m * m.inverse(), ResidueMatrix.identity(F, 2))
        self.assertTrue(m.is_unit_triangular())

    def test_indicator(self):
        """
        Check that indicators built from separating seeds are the delta functions
        """
        L = LocalFieldSpec.laurent(2)
        family = local_carlitz_family(2)
        seeds = [reduce_table(family.seed_table(j, 2, 1)) for j in range(2)]
        for v in range(4):
            h = build_indicator(v, seeds)
            self.assertEqual(h.values(), [1 if w == v else 0 for w in range(4)])

    def test_indicator_collision(self):
        """
        Check that non-separating seeds raise with the first colliding pair
        """
        F = LocalFieldSpec.laurent(2).residue
        seeds = [ResidueTable(F, 2, [0, 1, 0, 1]), ResidueTable(F, 2, [0, 0, 0, 1])]
        with self.assertRaises(SeparationError) as cm:
            build_indicator(0, seeds)
        self.assertEqual(cm.exception.witness, (0, 2))

    def test_interpolate(self):
        """
        Check that interpolation in the seeds reproduces a residue table
        """
        L = LocalFieldSpec.laurent(3)
        family = baker_family(L)
        seeds = [reduce_table(family.seed_table(j, 2, 1)) for j in range(2)]
        rng = random.Random(7)
        table = ResidueTable(L.residue, 2, [rng.randrange(3) for _ in range(9)])
        poly = interpolate(table, seeds)
        self.assertTrue(all(max(e, default=0) <= 2 for e in poly))
        self.assertEqual(evaluate_polynomial(poly, seeds), table)


class TestCertification(unittest.TestCase):

    def test_carlitz_linear(self):
        """
        Check the Carlitz seeds over F_2((T)) at level 3 with a unit triangular evidence matrix
        """
        cert = certify(local_carlitz_family(2), 3)
        self.assertTrue(cert.passed)
        self.assertEqual(cert.mode, "linear")
        self.assertTrue(cert.evidence_matrix.is_unit_triangular())
        self.assertEqual(cert.evidence_matrix.entries, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_zero_seeds(self):
        """
        Check that constant seeds fail separation with the first colliding pair as witness
        """
        L = LocalFieldSpec.laurent(2)
        family = BasisFamily("zero", L, 2, lambda j, x, precN: L.zero(precN), "general")
        cert = certify(family, 2)
        self.assertFalse(cert.passed)
        self.assertEqual(cert.witness, [0, 1])
        with self.assertRaises(CertificationError):
            expand(FunctionTable.constant(L, 2, 3, 1), family)

    def test_non_integral_seed(self):
        """
        Check that a seed of negative valuation fails integrality at the first point
        """
        L = LocalFieldSpec.padic(3)
        family = BasisFamily("pole", L, 3, lambda j, x, precN: L.elem(1, precN, val=-1), "general")
        cert = certify(family, 1)
        self.assertFalse(cert.passed)
        self.assertIn("integral", cert.reason)
        self.assertEqual(cert.witness, [0, 0])

    def test_not_constant_on_cosets(self):
        """
        Check that the digit of 3^(j+1) fails constancy on cosets of 9 Z_3 for j = 1
        """
        L = LocalFieldSpec.padic(3)
        family = BasisFamily("shifted", L, 3, lambda j, x, precN: L.elem(x // 3 ** (j + 1), precN), "general")
        cert = certify(family, 2)
        self.assertFalse(cert.passed)
        self.assertIn("constant", cert.reason)

    def test_linear_padic(self):
        """
        Check that linear certification is refused on Q_p
        """
        with self.assertRaises(InputError):
            certify(digit_binomial_family(3), 2, mode="linear")

    def test_span(self):
        """
        Check that the reduced digit products span at full rank
        """
        result = span_check(local_carlitz_family(2), 3)
        self.assertTrue(result.passed)
        self.assertEqual(result.rank, 8)
        result = span_check(global_carlitz_family(2, [1, 1, 1]), 1)
        self.assertEqual(result.rank, 4)


class TestExpansion(unittest.TestCase):

    def assertTablesAgree(self, a, b):
        self.assertEqual(len(a), len(b))
        for u, v in zip(a.values, b.values):
            self.assertTrue(u.agrees(v))

    def test_round_trip(self):
        """
        Check expand then evaluate on random integral tables in each setting
        """
        rng = random.Random(11)
        cases = [
            (LocalFieldSpec.laurent(2), local_carlitz_family(2), 3, 5),
            (LocalFieldSpec.laurent(3), local_hyperdiff_family(3), 2, 5),
            (LocalFieldSpec.padic(3), digit_binomial_family(3), 2, 5),
            (LocalFieldSpec.laurent(2), baker_family(LocalFieldSpec.laurent(2)), 3, 5),
            (LocalFieldSpec.padic(3), baker_family(LocalFieldSpec.padic(3)), 2, 5),
            (LocalFieldSpec.padic(5), baker_family(LocalFieldSpec.padic(5)), 2, 5),
            (LocalFieldSpec.completion_at_pi(2, [1, 1, 1]), baker_family(LocalFieldSpec.completion_at_pi(2, [1, 1, 1])), 1, 5),
            (LocalFieldSpec.completion_at_pi(2, [1, 1, 1]), global_carlitz_family(2, [1, 1, 1]), 1, 5),
        ]
        for L, family, level, precN in cases:
            for _ in range(100):
                table = random_table(L, level, precN, rng)
                expansion = expand(table, family)
                self.assertEqual(expansion.precN, precN)
                self.assertEqual(expansion.evaluate(family), table)
                self.assertEqual(expansion.coeff_norm(), sup_norm(table))
                self.assertTrue(all(a.is_integral() for a in expansion.coeffs))

    def test_non_integral(self):
        """
        Check that a table with a pole expands with scaled coefficients of the same norm
        """
        rng = random.Random(3)
        L = LocalFieldSpec.laurent(2)
        family = local_carlitz_family(2)
        table = random_table(L, 2, 4, rng)
        table.values[1] = L.one(4)
        table = table.shift(-1)
        expansion = expand(table, family)
        self.assertEqual(sup_norm(table), Fraction(2))
        self.assertEqual(expansion.coeff_norm(), Fraction(2))
        self.assertTablesAgree(expansion.evaluate(family), table)

    def test_identity_in_digits(self):
        """
        Check that x = sum T^j omega_j(x) is the expansion of the identity in the Teichmuller digits
        """
        L = LocalFieldSpec.laurent(2)
        family = baker_family(L)
        table = FunctionTable.tabulate(L, 3, 4, lambda x: L.elem(x, 4))
        expansion = expand(table, family)
        self.assertEqual([i for i, a in expansion.nonzero()], [1, 2, 4])
        for j, i in enumerate([1, 2, 4]):
            self.assertEqual(expansion[i].val, j)
            self.assertTrue(expansion[i].agrees(L.one(4).shift(j)))

    def test_json(self):
        """
        Check that expansion JSON lists the nonzero coefficients and reloads
        """
        L = LocalFieldSpec.laurent(2)
        family = local_carlitz_family(2)
        table = FunctionTable.tabulate(L, 2, 3, lambda x: L.elem(x * x, 3))
        expansion = expand(table, family)
        obj = expansion.to_json()
        self.assertEqual(len(obj["coeffs"]), len(expansion.nonzero()))
        again = Expansion.from_json(obj)
        self.assertEqual(again.coeffs, expansion.coeffs)
        self.assertEqual(again.evaluate(family), table)

    def test_digit_products(self):
        """
        Check f_0 = 1 and f_i f_j = f_(i+j) when the digits do not carry
        """
        L = LocalFieldSpec.laurent(3)
        family = local_carlitz_family(3)
        f0 = digit_extend(family, 0)
        self.assertTrue(f0(L.exact([1, 2]), 3).agrees(L.one(3)))
        self.assertEqual(digit_extend(family, 5).digits, [2, 1])
        self.assertTrue(carry_free_product_check(family, 1, 3, 2, 3).passed)
        self.assertTrue(carry_free_product_check(family, 2, 6, 2, 3).passed)
        with self.assertRaises(InputError):
            carry_free_product_check(family, 2, 2, 2, 3)
