import random
import unittest

from lfbasis.baker_tate import baker_family
from lfbasis.carlitz import local_carlitz_family
from lfbasis.charzero import digit_binomial_family
from lfbasis.hyperdiff import local_hyperdiff_family
from lfbasis.local_fields import LocalFieldSpec, Poly
from lfbasis.measures import *
from lfbasis.utils import InputError


class TestMeasures(unittest.TestCase):

    def setUp(self):
        self.L = LocalFieldSpec.laurent(2)
        self.rng = random.Random(21)

    def random_measure(self, level=2, precN=4):
        L = self.L
        values = [L.elem(Poly(L.residue, [self.rng.randrange(2) for _ in range(precN)]), precN)
            for _ in range(L.num_points(level))]
        return Measure(L, level, precN, values)

    def test_dirac_convolution(self):
        """
        Check that Dirac masses convolve to the Dirac mass at the sum
        """
        L = self.L
        points = L.canonical_reps(2)
        for a in points:
            for b in points:
                product = convolve(Measure.dirac(L, 2, 4, a), Measure.dirac(L, 2, 4, b))
                self.assertEqual(product, Measure.dirac(L, 2, 4, a + b))

    def test_convolution_algebra(self):
        """
        Check commutativity, associativity and the zero measure
        """
        zero = Measure.zero(self.L, 2, 4)
        for _ in range(5):
            nu, mu, lam = self.random_measure(), self.random_measure(), self.random_measure()
            self.assertEqual(convolve(nu, mu), convolve(mu, nu))
            self.assertEqual(convolve(convolve(nu, mu), lam), convolve(nu, convolve(mu, lam)))
            self.assertEqual(convolve(nu, zero), zero)

    def test_coarsen(self):
        """
        Check that pushing forward to a coarser level keeps the total mass
        """
        nu = self.random_measure(level=3)
        coarse = nu.coarsen(1)
        self.assertEqual(len(coarse), 2)
        self.assertTrue(coarse.total_mass().agrees(nu.total_mass()))
        self.assertTrue(nu.coarsen(0)[0].agrees(nu.total_mass()))

    def test_bounded(self):
        """
        Check that integral masses are bounded and a pole is not
        """
        nu = self.random_measure()
        self.assertTrue(nu.bounded())
        self.assertTrue(nu.to_json()["bounded"])
        dirac = Measure.dirac(self.L, 2, 4, self.L.exact([1]))
        self.assertFalse(dirac.scale(self.L.one(4).shift(-1)).bounded())

    def test_json(self):
        """
        Check that a measure reloads from its JSON form
        """
        nu = self.random_measure()
        self.assertEqual(Measure.from_json(nu.to_json()), nu)
        with self.assertRaises(InputError):
            Measure(self.L, 2, 4, [1, 0, 0])


class TestTransform(unittest.TestCase):

    def setUp(self):
        self.L = LocalFieldSpec.laurent(2)
        self.rng = random.Random(22)

    def random_measure(self):
        L = self.L
        values = [L.elem(Poly(L.residue, [self.rng.randrange(2) for _ in range(4)]), 4) for _ in range(4)]
        return Measure(L, 2, 4, values)

    def test_dirac_at_zero(self):
        """
        Check that the transform of the Dirac mass at 0 is the constant series 1
        """
        L = self.L
        for family in [local_carlitz_family(2), local_hyperdiff_family(2)]:
            series = measure_transform(Measure.dirac(L, 2, 4, L.exact(0)), family)
            self.assertEqual(series.bound, 4)
            self.assertTrue(series.coeffs[0].agrees(L.one(4)))
            self.assertTrue(all(c.is_zero() for c in series.coeffs[1:]))

    def test_homomorphism(self):
        """
        Check that convolution of measures goes to multiplication of divided power series
        """
        for family in [local_carlitz_family(2), local_hyperdiff_family(2)]:
            for _ in range(50):
                nu, mu = self.random_measure(), self.random_measure()
                lhs = measure_transform(convolve(nu, mu), family)
                rhs = measure_transform(nu, family) * measure_transform(mu, family)
                self.assertTrue(lhs.agrees(rhs), family.label)

    def test_linear(self):
        """
        Check that the transform is additive
        """
        family = local_carlitz_family(2)
        nu, mu = self.random_measure(), self.random_measure()
        self.assertEqual(measure_transform(nu + mu, family),
            measure_transform(nu, family) + measure_transform(mu, family))

    def test_json(self):
        """
        Check that divided power series reload from JSON
        """
        series = measure_transform(self.random_measure(), local_carlitz_family(2))
        self.assertEqual(DividedPowerSeries.from_json(series.to_json()), series)
        self.assertEqual(len(series.to_frame()), len(series.nonzero()))

    def test_refusals(self):
        """
        Check the transform refuses Q_p, non-additive seeds, a foreign basis and too many indices
        """
        P = LocalFieldSpec.padic(3)
        with self.assertRaises(InputError):
            measure_transform(Measure.dirac(P, 1, 3, 0), digit_binomial_family(3))
        nu = self.random_measure()
        with self.assertRaises(InputError):
            measure_transform(nu, local_carlitz_family(3))
        with self.assertRaises(InputError):
            measure_transform(nu, local_carlitz_family(2), bound=5)
        L3 = LocalFieldSpec.completion_at_pi(2, [1, 1, 1])
        with self.assertRaises(InputError):
            measure_transform(Measure.dirac(L3, 1, 3, L3.exact([1])), baker_family(L3))
