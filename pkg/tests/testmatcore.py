import unittest

import numpy as np
import numpy.testing as npt
from hypothesis import given, settings
from hypothesis import strategies as st

import jbtk.errors as errors
import jbtk.gen as gen
import jbtk.matcore as matcore


class TestTripleSpace(unittest.TestCase):
    """
    Block bookkeeping of triple spaces
    """

    def setUp(self):
        self.space = matcore.TripleSpace([(3, 2), (2, 2)])

    def test_dim_and_locate(self):
        """
        Coordinates run row-major within a block, block after block
        """
        self.assertEqual(self.space.dim, 10)
        self.assertEqual(self.space.locate(0), (0, 0, 0))
        self.assertEqual(self.space.locate(5), (0, 2, 1))
        self.assertEqual(self.space.locate(6), (1, 0, 0))
        with self.assertRaises(IndexError):
            self.space.locate(10)

    def test_bad_blocks(self):
        """
        Empty spaces, empty blocks and fractional dimensions are rejected
        """
        with self.assertRaises(errors.SpaceMismatchError):
            matcore.TripleSpace([])
        with self.assertRaises(errors.SpaceMismatchError):
            matcore.TripleSpace([(0, 2)])
        with self.assertRaises(errors.SpaceMismatchError):
            matcore.TripleSpace([(2.5, 2)])
        self.assertEqual(matcore.TripleSpace([(np.int64(2), 3.0)]).blocks,
                         ((2, 3),))

    def test_identity_needs_square_blocks(self):
        """
        Only square-block spaces are unital
        """
        self.assertFalse(self.space.is_unital_cstar)
        with self.assertRaises(errors.SpaceMismatchError):
            self.space.identity()
        square = matcore.TripleSpace([(2, 2), (1, 1)])
        one = square.identity()
        npt.assert_allclose(one.data[0], np.eye(2))
        npt.assert_allclose(one.data[1], np.eye(1))

    def test_hermitian_basis_size(self):
        """
        The self-adjoint part of M_n has real dimension n^2
        """
        square = matcore.TripleSpace([(3, 3), (1, 1)])
        basis = square.hermitian_basis()
        self.assertEqual(len(basis), 9 + 1)
        for h in basis:
            self.assertLess(matcore.distance(matcore.adjoint(h), h), 1e-15)

    def test_square_companions(self):
        """
        cols_square and rows_square build the spaces hosting v*T and Tv*
        """
        self.assertEqual(self.space.cols_square().blocks, ((2, 2), (2, 2)))
        self.assertEqual(self.space.rows_square().blocks, ((3, 3), (2, 2)))
        self.assertEqual(self.space.transposed().blocks, ((2, 3), (2, 2)))

    def test_equality(self):
        """
        Spaces compare and hash by their block list
        """
        other = matcore.TripleSpace([[3, 2], [2, 2]])
        self.assertEqual(self.space, other)
        self.assertEqual(hash(self.space), hash(other))
        self.assertNotEqual(self.space, self.space.transposed())


class TestElement(unittest.TestCase):
    """
    Element arithmetic and decompositions
    """

    def setUp(self):
        self.space = matcore.TripleSpace([(3, 2), (2, 2)])
        self.rng = np.random.default_rng(11)

    def test_shape_checked(self):
        """
        Blocks of the wrong shape are rejected
        """
        with self.assertRaises(errors.SpaceMismatchError):
            matcore.Element(self.space, [np.zeros((2, 3)), np.zeros((2, 2))])
        with self.assertRaises(errors.SpaceMismatchError):
            matcore.Element(self.space, [np.zeros((3, 2))])

    def test_mixed_spaces(self):
        """
        Adding elements of different spaces is an error
        """
        x = self.space.zero()
        y = self.space.transposed().zero()
        with self.assertRaises(errors.SpaceMismatchError):
            x + y

    def test_coordinate_round_trip(self):
        """
        from_coords inverts coords and from_realified inverts realified
        """
        x = gen.random_element(self.space, rng=self.rng)
        self.assertLess(matcore.distance(
            self.space.from_coords(x.coords()), x), 1e-15)
        self.assertLess(matcore.distance(
            self.space.from_realified(x.realified()), x), 1e-15)

    def test_norm_is_largest_singular_value(self):
        """
        The norm is the maximum over blocks of the spectral norm
        """
        x = matcore.Element(
            self.space, [np.diag([3.0, 1.0]).tolist() + [[0, 0]],
                         np.diag([0.5, 4.0])])
        self.assertAlmostEqual(x.norm(), 4.0)

    def test_numpy_scalar_multiplication(self):
        """
        numpy scalars on the left still produce Elements
        """
        x = gen.random_element(self.space, rng=self.rng)
        y = np.float64(2.0) * x
        self.assertIsInstance(y, matcore.Element)
        self.assertLess(matcore.distance(y, x + x), 1e-14)

    def test_rank_profile(self):
        """
        Generated elements have exactly the requested rank profile
        """
        x = gen.random_element(self.space, [1, 2], self.rng)
        self.assertEqual(matcore.rank(x), (1, 2))

    def test_mp_inverse_penrose(self):
        """
        The Moore-Penrose inverse satisfies the four Penrose identities
        """
        x = gen.random_element(self.space, [1, 2], self.rng)
        b = matcore.mp_inverse(x)
        self.assertEqual(b.space, self.space.transposed())
        for residual in matcore.penrose_residuals(x, b):
            self.assertLess(residual, 1e-12)

    def test_mp_inverse_of_zero(self):
        """
        The zero element inverts to zero
        """
        b = matcore.mp_inverse(self.space.zero())
        self.assertEqual(b.norm(), 0.0)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 31))
    def test_svd_reconstructs(self, seed):
        """
        U diag(sigma) V* reproduces every block
        """
        x = gen.random_element(self.space, rng=seed)
        for m, b in zip(x.data, matcore.svd(x)):
            r, c = m.shape
            core = np.zeros((r, c))
            core[:len(b.sigma), :len(b.sigma)] = np.diag(b.sigma)
            npt.assert_allclose(b.u @ core @ b.v.conj().T, m, atol=1e-12)


class TestTolerances(unittest.TestCase):
    """
    Tolerance policy
    """

    def test_defaults(self):
        """
        None falls back to the documented defaults
        """
        tol = matcore.resolve(None)
        self.assertEqual(tol.zero_tol, 1e-9)
        self.assertEqual(tol.sv_rel_cutoff, 1e-10)

    def test_scaled(self):
        """
        Residuals are compared against the tolerance times the scale
        """
        tol = matcore.Tolerances(zero_tol=1e-6)
        self.assertTrue(tol.is_small(5e-6, scale=10.0))
        self.assertFalse(tol.is_small(5e-6, scale=0.5))

    def test_invalid(self):
        """
        Negative or infinite tolerances are refused
        """
        with self.assertRaises(ValueError):
            matcore.Tolerances(zero_tol=-1.0)
        with self.assertRaises(ValueError):
            matcore.Tolerances(sv_rel_cutoff=float('inf'))


class TestFormatting(unittest.TestCase):
    """
    Human-readable rendering
    """

    def test_scalar_tuple(self):
        """
        Elements with 1x1 blocks print as tuples, integers without decimals
        """
        space = matcore.TripleSpace([(1, 1), (1, 1)])
        x = matcore.Element(space, [[[2]], [[1]]])
        self.assertEqual(matcore.format_element(x), '(2,1)')

    def test_complex_scalars(self):
        """
        Complex scalars carry their imaginary part
        """
        self.assertEqual(matcore.format_scalar(1j), '1i')
        self.assertEqual(matcore.format_scalar(0.5 - 2j), '0.5-2i')
        self.assertEqual(matcore.format_scalar(-3), '-3')

    def test_matrix_rows(self):
        """
        Larger blocks print as nested rows
        """
        space = matcore.TripleSpace([(2, 1)])
        x = matcore.Element(space, [[[1], [0]]])
        self.assertEqual(matcore.format_element(x), '[[1],[0]]')
