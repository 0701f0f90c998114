import unittest

import numpy as np
import numpy.testing as npt

import jbtk.errors as errors
import jbtk.gen as gen
import jbtk.linearmap as linearmap
import jbtk.matcore as matcore


class TestLinearMap(unittest.TestCase):
    """
    Coordinate matrices of linear maps between triple spaces
    """

    def setUp(self):
        self.m2 = matcore.TripleSpace([(2, 2)])
        self.rect = matcore.TripleSpace([(3, 2)])
        self.rng = np.random.default_rng(9)

    def test_shape_checked(self):
        """
        The matrix must be dim(codomain) x dim(domain)
        """
        with self.assertRaises(errors.SpaceMismatchError):
            linearmap.LinearMap(self.m2, self.rect, np.zeros((4, 6)))

    def test_from_function_matches_apply(self):
        """
        Tabulating a function reproduces it on random inputs
        """
        T = linearmap.LinearMap.transpose(self.m2)
        x = gen.random_element(self.m2, rng=self.rng)
        npt.assert_allclose(T(x).data[0], x.data[0].T)

    def test_domain_checked(self):
        """
        Maps refuse elements of other spaces
        """
        T = linearmap.LinearMap.identity(self.m2)
        with self.assertRaises(errors.SpaceMismatchError):
            T(self.rect.zero())

    def test_compose_and_arithmetic(self):
        """
        Composition and linear combinations act on coordinates
        """
        T = linearmap.LinearMap.transpose(self.m2)
        one = linearmap.LinearMap.identity(self.m2)
        self.assertLess((T @ T).distance(one), 1e-15)
        self.assertLess((T + T - 2 * T).norm(), 1e-15)
        with self.assertRaises(errors.SpaceMismatchError):
            T @ linearmap.LinearMap.zero(self.m2, self.rect)

    def test_products(self):
        """
        left_product and right_product multiply the blocks of T(x)
        """
        v = gen.random_extreme(self.rect, self.rng)
        T = linearmap.LinearMap.identity(self.m2)
        vT = T.left_product(v, self.rect)
        x = gen.random_element(self.m2, rng=self.rng)
        npt.assert_allclose(vT(x).data[0], v.data[0] @ x.data[0], atol=1e-14)
        back = vT.left_product(matcore.adjoint(v), self.m2)
        self.assertLess(back.distance(T), 1e-12)

    def test_identity_is_homomorphism(self):
        """
        The identity has no Jordan, adjoint or triple defect
        """
        T = linearmap.LinearMap.identity(self.m2)
        self.assertLess(linearmap.jordan_star_defect(T), 1e-15)
        self.assertLess(linearmap.triple_defect(T), 1e-15)

    def test_transpose_is_jordan_but_not_multiplicative(self):
        """
        Transposition preserves squares and adjoints but reverses products
        """
        T = linearmap.LinearMap.transpose(self.m2)
        self.assertLess(linearmap.jordan_star_defect(T), 1e-15)
        a, b = self.m2.unit(1), self.m2.unit(2)
        product = matcore.Element(self.m2, [a.data[0] @ b.data[0]])
        self.assertGreater(matcore.distance(
            T(product),
            matcore.Element(self.m2, [T(a).data[0] @ T(b).data[0]])), 0.5)

    def test_scaling_breaks_triple(self):
        """
        2T is not a triple homomorphism
        """
        T = 2 * linearmap.LinearMap.identity(self.m2)
        self.assertGreater(linearmap.triple_defect(T), 1.0)
        x = self.m2.unit(0)
        self.assertAlmostEqual(linearmap.triple_residual(T, x, x, x), 6.0)
