import numpy as np

import jbtk.errors as errors
import jbtk.matcore as matcore
import jbtk.triple as triple


class LinearMap(object):
    """
    A complex-linear map between triple spaces

    The matrix acts on matrix-unit coordinates and has shape
    dim(codomain) x dim(domain).
    """
    def __init__(self, domain, codomain, matrix, name=None):
        """
        Args:
            domain: Source TripleSpace
            codomain: Target TripleSpace
            matrix: Complex array-like of shape (dim(codomain), dim(domain))
            name: (Optional) Label used in reports
        """
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (codomain.dim, domain.dim):
            raise errors.SpaceMismatchError(
                'map matrix has shape {0}, expected {1}'.format(
                    matrix.shape, (codomain.dim, domain.dim)))
        matrix.setflags(write=False)
        self._domain = domain
        self._codomain = codomain
        self._matrix = matrix
        self._name = name

    @classmethod
    def from_function(cls, domain, codomain, func, name=None):
        """
        Tabulate a complex-linear function on the matrix units

        Args:
            domain: Source TripleSpace
            codomain: Target TripleSpace
            func: Function from domain Elements to codomain Elements
            name: (Optional) Label

        Returns:
            LinearMap
        """
        columns = [func(u).coords() for u in domain.basis()]
        return cls(domain, codomain, np.column_stack(columns), name=name)

    @classmethod
    def identity(cls, space, name='identity'):
        return cls(space, space, np.eye(space.dim), name=name)

    @classmethod
    def zero(cls, domain, codomain, name='zero'):
        return cls(domain, codomain, np.zeros((codomain.dim, domain.dim)),
                   name=name)

    @classmethod
    def transpose(cls, space, name='transpose'):
        """
        The map x -> x^t on a square-block space
        """
        if not space.is_unital_cstar:
            raise errors.SpaceMismatchError(
                'transpose map needs square blocks, got {0}'.format(space))
        return cls.from_function(
            space, space, lambda x: x.map_blocks(lambda k, m: m.T), name=name)

    @property
    def domain(self):
        return self._domain

    @property
    def codomain(self):
        return self._codomain

    @property
    def matrix(self):
        return self._matrix

    @property
    def name(self):
        return self._name

    def apply(self, x):
        if x.space != self._domain:
            raise errors.SpaceMismatchError(
                'map on {0} applied to an element of {1}'.format(
                    self._domain, x.space))
        return self._codomain.from_coords(self._matrix @ x.coords())

    __call__ = apply

    def compose(self, other):
        """
        Get self after other
        """
        if other.codomain != self._domain:
            raise errors.SpaceMismatchError(
                'cannot compose map on {0} after map into {1}'.format(
                    self._domain, other.codomain))
        return LinearMap(other.domain, self._codomain,
                         self._matrix @ other.matrix)

    __matmul__ = compose

    def _check_shape(self, other):
        if (other.domain != self._domain or
           other.codomain != self._codomain):
            raise errors.SpaceMismatchError('maps act between different spaces')

    def __add__(self, other):
        self._check_shape(other)
        return LinearMap(self._domain, self._codomain,
                         self._matrix + other.matrix)

    def __sub__(self, other):
        self._check_shape(other)
        return LinearMap(self._domain, self._codomain,
                         self._matrix - other.matrix)

    def __mul__(self, scalar):
        return LinearMap(self._domain, self._codomain, scalar * self._matrix)

    __rmul__ = __mul__

    def norm(self):
        """
        Spectral norm of the coordinate matrix
        """
        return np.linalg.norm(self._matrix, 2)

    def distance(self, other):
        return (self - other).norm()

    def left_product(self, m, codomain):
        """
        The map x -> m T(x), blockwise

        Args:
            m: Element whose blocks multiply the blocks of T(x) from the left
            codomain: TripleSpace of the products
        """
        return LinearMap.from_function(
            self._domain, codomain,
            lambda x: matcore.Element(
                codomain, [a @ b for a, b in zip(m.data, self(x).data)]))

    def right_product(self, m, codomain):
        """
        The map x -> T(x) m, blockwise
        """
        return LinearMap.from_function(
            self._domain, codomain,
            lambda x: matcore.Element(
                codomain, [b @ a for a, b in zip(m.data, self(x).data)]))

    def __repr__(self):
        return 'LinearMap({0}: {1} -> {2})'.format(
            self._name or 'anonymous', self._domain, self._codomain)


def jordan_residual(T, a, b):
    """
    |T(a o b) - T(a) o T(b)|
    """
    return matcore.distance(
        T(triple.jordan_mul(a, b)), triple.jordan_mul(T(a), T(b)))


def star_residual(T, a):
    """
    |T(a*) - T(a)*| on square-block spaces
    """
    return matcore.distance(T(matcore.adjoint(a)), matcore.adjoint(T(a)))


def triple_residual(T, x, y, z):
    """
    |T{x,y,z} - {Tx,Ty,Tz}|
    """
    return matcore.distance(
        T(triple.triple_product(x, y, z)),
        triple.triple_product(T(x), T(y), T(z)))


def jordan_star_defect(T):
    """
    Worst Jordan and adjoint residual over all pairs of matrix units
    """
    basis = T.domain.basis()
    worst = 0.0
    for p, a in enumerate(basis):
        worst = max(worst, star_residual(T, a))
        for b in basis[p:]:
            worst = max(worst, jordan_residual(T, a, b))
    return worst


def triple_defect(T):
    """
    Worst triple-product residual over basis triples, middle slot also i u_j
    """
    basis = T.domain.basis()
    worst = 0.0
    for p, x in enumerate(basis):
        for y in basis:
            for z in basis[p:]:
                worst = max(worst, triple_residual(T, x, y, z),
                            triple_residual(T, x, 1j * y, z))
    return worst
