import collections
import logging
import math
import numbers

import numpy as np

import jbtk.errors as errors


SVDBlock = collections.namedtuple('SVDBlock', ['u', 'sigma', 'v'])


class Tolerances(object):
    """
    Numerical policy shared by every predicate

    A quantity counts as zero when it is at most zero_tol, scaled by the
    magnitude of the objects involved when that magnitude exceeds one.
    Singular values at or below sv_rel_cutoff times the largest singular
    value of their block are treated as zero.
    """

    DEFAULT_ZERO_TOL = 1e-9
    DEFAULT_SV_REL_CUTOFF = 1e-10

    def __init__(self, zero_tol=None, sv_rel_cutoff=None):
        """
        Args:
            zero_tol: (Optional) Absolute threshold for "is zero"
            sv_rel_cutoff: (Optional) Relative singular-value cutoff for rank
        """
        if zero_tol is None:
            zero_tol = self.DEFAULT_ZERO_TOL
        if sv_rel_cutoff is None:
            sv_rel_cutoff = self.DEFAULT_SV_REL_CUTOFF
        for name, value in (('zero_tol', zero_tol),
                            ('sv_rel_cutoff', sv_rel_cutoff)):
            if not math.isfinite(value) or value < 0:
                raise ValueError(
                    '{0} must be finite and nonnegative, got {1}'.format(
                        name, value))
        self.zero_tol = float(zero_tol)
        self.sv_rel_cutoff = float(sv_rel_cutoff)

    def is_small(self, value, scale=1.0):
        """
        Check a nonnegative residual against the zero threshold

        Args:
            value: The residual
            scale: Magnitude of the objects that produced it

        Returns:
            True if the residual counts as zero
        """
        return value <= self.zero_tol * max(1.0, scale)

    def to_json(self):
        return {'zero_tol': self.zero_tol, 'sv_rel_cutoff': self.sv_rel_cutoff}

    def __repr__(self):
        return 'Tolerances(zero_tol={0!r}, sv_rel_cutoff={1!r})'.format(
            self.zero_tol, self.sv_rel_cutoff)


DEFAULT_TOLERANCES = Tolerances()


def resolve(tol):
    """
    Fill in the default policy for an omitted Tolerances argument
    """
    if tol is None:
        return DEFAULT_TOLERANCES
    return tol


def _dimension(value):
    if isinstance(value, bool) or not isinstance(
            value, (numbers.Integral, float)):
        raise errors.SpaceMismatchError(
            'block dimension {0!r} is not a number'.format(value))
    if not float(value).is_integer():
        raise errors.SpaceMismatchError(
            'block dimension {0!r} is not an integer'.format(value))
    return int(value)


class TripleSpace(object):
    """
    A finite l-infinity direct sum of rectangular complex matrix blocks

    Coordinates run over the matrix units of each block in row-major order,
    block after block.
    """
    def __init__(self, blocks):
        """
        Args:
            blocks: Iterable of (rows, cols) pairs
        """
        blocks = tuple((_dimension(r), _dimension(c)) for r, c in blocks)
        if not blocks:
            raise errors.SpaceMismatchError(
                'a triple space needs at least one block')
        for r, c in blocks:
            if r < 1 or c < 1:
                raise errors.SpaceMismatchError(
                    'block dimensions must be positive, got {0}x{1}'.format(
                        r, c))
        self._blocks = blocks
        self._offsets = [0]
        for r, c in blocks:
            self._offsets.append(self._offsets[-1] + r * c)

    @property
    def blocks(self):
        return self._blocks

    @property
    def dim(self):
        """
        Complex dimension
        """
        return self._offsets[-1]

    @property
    def is_unital_cstar(self):
        return all(r == c for r, c in self._blocks)

    def zero(self):
        return Element(self, [np.zeros(shape) for shape in self._blocks])

    def identity(self):
        """
        Get the unit of a square-block space

        Raises:
            SpaceMismatchError: If some block is not square
        """
        if not self.is_unital_cstar:
            raise errors.SpaceMismatchError(
                '{0} has no unit, some block is not square'.format(self))
        return Element(self, [np.eye(r) for r, _ in self._blocks])

    def locate(self, p):
        """
        Translate a coordinate index into (block, row, col)
        """
        if p < 0 or p >= self.dim:
            raise IndexError('coordinate {0} out of range'.format(p))
        k = 0
        while self._offsets[k + 1] <= p:
            k += 1
        r, c = divmod(p - self._offsets[k], self._blocks[k][1])
        return k, r, c

    def unit(self, p):
        """
        Get the matrix unit for coordinate p
        """
        coords = np.zeros(self.dim, dtype=complex)
        coords[p] = 1.0
        return self.from_coords(coords)

    def basis(self):
        return [self.unit(p) for p in range(self.dim)]

    def hermitian_basis(self):
        """
        Get a real basis of the self-adjoint part of a square-block space

        Returns:
            List of Elements E_jj, E_jk + E_kj and i(E_jk - E_kj), per block
        """
        if not self.is_unital_cstar:
            raise errors.SpaceMismatchError(
                '{0} has no self-adjoint part'.format(self))
        result = []
        for k, (n, _) in enumerate(self._blocks):
            for j in range(n):
                for l in range(j, n):
                    pieces = []
                    if j == l:
                        pieces.append(_unit_matrix(n, j, j))
                    else:
                        sym = _unit_matrix(n, j, l) + _unit_matrix(n, l, j)
                        skew = 1j * (
                            _unit_matrix(n, j, l) - _unit_matrix(n, l, j))
                        pieces.extend([sym, skew])
                    for piece in pieces:
                        data = [np.zeros(shape) for shape in self._blocks]
                        data[k] = piece
                        result.append(Element(self, data))
        return result

    def transposed(self):
        return TripleSpace([(c, r) for r, c in self._blocks])

    def cols_square(self):
        """
        Get the square space whose blocks are cols x cols
        """
        return TripleSpace([(c, c) for _, c in self._blocks])

    def rows_square(self):
        """
        Get the square space whose blocks are rows x rows
        """
        return TripleSpace([(r, r) for r, _ in self._blocks])

    def from_coords(self, coords):
        coords = np.asarray(coords, dtype=complex)
        if coords.shape != (self.dim,):
            raise errors.SpaceMismatchError(
                'expected {0} coordinates, got shape {1}'.format(
                    self.dim, coords.shape))
        data = []
        for k, (r, c) in enumerate(self._blocks):
            start, end = self._offsets[k], self._offsets[k + 1]
            data.append(coords[start:end].reshape(r, c))
        return Element(self, data)

    def from_realified(self, vec):
        vec = np.asarray(vec, dtype=float)
        return self.from_coords(vec[:self.dim] + 1j * vec[self.dim:])

    def to_json(self):
        return {'blocks': [[r, c] for r, c in self._blocks]}

    def __eq__(self, other):
        return isinstance(other, TripleSpace) and self._blocks == other._blocks

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self._blocks)

    def __repr__(self):
        return 'TripleSpace({0})'.format(
            ' + '.join('{0}x{1}'.format(r, c) for r, c in self._blocks))


class Element(object):
    """
    One complex matrix per block of a TripleSpace; immutable
    """

    # numpy scalars defer to Element.__rmul__
    __array_ufunc__ = None

    def __init__(self, space, data):
        """
        Args:
            space: The TripleSpace this element belongs to
            data: Sequence of array-likes matching the block shapes
        """
        if len(data) != len(space.blocks):
            raise errors.SpaceMismatchError(
                '{0} needs {1} blocks, got {2}'.format(
                    space, len(space.blocks), len(data)))
        blocks = []
        for k, (matrix, shape) in enumerate(zip(data, space.blocks)):
            matrix = np.array(matrix, dtype=complex)
            if matrix.shape != shape:
                raise errors.SpaceMismatchError(
                    'block {0} has shape {1}, expected {2}'.format(
                        k, matrix.shape, shape))
            matrix.setflags(write=False)
            blocks.append(matrix)
        self._space = space
        self._data = tuple(blocks)

    @property
    def space(self):
        return self._space

    @property
    def data(self):
        return self._data

    def coords(self):
        return np.concatenate([m.ravel() for m in self._data])

    def realified(self):
        coords = self.coords()
        return np.concatenate([coords.real, coords.imag])

    def norm(self):
        """
        Largest singular value over all blocks
        """
        return max(np.linalg.norm(m, 2) for m in self._data)

    def map_blocks(self, func, space=None):
        """
        Apply a matrix function to every block

        Args:
            func: Function of (block index, matrix) returning a matrix
            space: (Optional) Space of the result, same space by default

        Returns:
            Element
        """
        if space is None:
            space = self._space
        return Element(
            space, [func(k, m) for k, m in enumerate(self._data)])

    def _combine(self, other, op):
        check_same_space(self, other)
        return Element(
            self._space, [op(a, b) for a, b in zip(self._data, other._data)])

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return Element(self._space, [-m for m in self._data])

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            raise TypeError('use triple or Jordan products between elements')
        return Element(self._space, [scalar * m for m in self._data])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Element(self._space, [m / scalar for m in self._data])

    def __repr__(self):
        return 'Element({0}, {1})'.format(
            self._space, format_element(self))


def check_same_space(*elements):
    """
    Raises:
        SpaceMismatchError: If the elements do not share one TripleSpace
    """
    space = elements[0].space
    for x in elements[1:]:
        if x.space != space:
            raise errors.SpaceMismatchError(
                'operands in {0} and {1}'.format(space, x.space))
    return space


def distance(x, y):
    return (x - y).norm()


def adjoint(x):
    """
    Blockwise conjugate transpose

    Returns:
        Element of the transposed space
    """
    return x.map_blocks(
        lambda k, m: m.conj().T, space=x.space.transposed())


def svd(x):
    """
    Full singular value decomposition of every block

    Returns:
        List of SVDBlock(u, sigma, v) with x = u diag(sigma) v*, sigma
        nonincreasing

    Raises:
        NumericalError: If LAPACK fails to converge on some block
    """
    result = []
    for k, m in enumerate(x.data):
        try:
            u, sigma, vh = np.linalg.svd(m, full_matrices=True)
        except np.linalg.LinAlgError as e:
            logging.error('svd failed on block {0}: {1}'.format(k, e))
            raise errors.NumericalError(
                'svd did not converge on block {0}'.format(k), block=k)
        result.append(SVDBlock(u, sigma, vh.conj().T))
    return result


def block_rank(sigma, tol=None):
    """
    Numerical rank of one block from its singular values
    """
    tol = resolve(tol)
    if len(sigma) == 0 or sigma[0] <= tol.zero_tol:
        return 0
    return int(np.sum(sigma > tol.sv_rel_cutoff * sigma[0]))


def rank(x, tol=None):
    """
    Per-block numerical rank

    Returns:
        Tuple of nonnegative integers
    """
    return tuple(block_rank(b.sigma, tol) for b in svd(x))


def compact_svd(x, tol=None):
    """
    Singular triples above the cutoff, per block

    Returns:
        List of SVDBlock whose u and v keep only the supporting columns
    """
    result = []
    for b in svd(x):
        r = block_rank(b.sigma, tol)
        result.append(SVDBlock(b.u[:, :r], b.sigma[:r], b.v[:, :r]))
    return result


def mp_inverse(a, tol=None):
    """
    Moore-Penrose inverse, computed blockwise from the SVD

    Returns:
        Element of the transposed space
    """
    data = []
    for b in compact_svd(a, tol):
        data.append((b.v / b.sigma) @ b.u.conj().T)
    return Element(a.space.transposed(), data)


def penrose_residuals(a, b):
    """
    Residuals of the four Penrose identities for a candidate b = a+

    Returns:
        Tuple (|aba - a|, |bab - b|, |ab - (ab)*|, |ba - (ba)*|)
    """
    aba, bab, ab, ba = [], [], [], []
    for x, y in zip(a.data, b.data):
        aba.append(np.linalg.norm(x @ y @ x - x, 2))
        bab.append(np.linalg.norm(y @ x @ y - y, 2))
        xy, yx = x @ y, y @ x
        ab.append(np.linalg.norm(xy - xy.conj().T, 2))
        ba.append(np.linalg.norm(yx - yx.conj().T, 2))
    return max(aba), max(bab), max(ab), max(ba)


def format_scalar(z, digits=6):
    """
    Render a complex scalar compactly, integers without a decimal point
    """
    z = complex(z)
    re, im = z.real, z.imag
    if abs(re) < 1e-12:
        re = 0.0
    if abs(im) < 1e-12:
        im = 0.0

    def fmt(t):
        if abs(t - round(t)) < 1e-12:
            return str(int(round(t)))
        return '{0:.{1}g}'.format(t, digits)

    if im == 0.0:
        return fmt(re)
    if re == 0.0:
        return '{0}i'.format(fmt(im))
    sign = '+' if im > 0 else '-'
    return '{0}{1}{2}i'.format(fmt(re), sign, fmt(abs(im)))


def format_element(x, digits=6):
    """
    Human-readable rendering

    Elements whose blocks are all 1x1 print as a tuple of scalars, e.g.
    (2,1); others print as nested row lists per block.
    """
    if all(shape == (1, 1) for shape in x.space.blocks):
        return '({0})'.format(
            ','.join(format_scalar(m[0, 0], digits) for m in x.data))
    blocks = []
    for m in x.data:
        rows = ['[' + ','.join(format_scalar(z, digits) for z in row) + ']'
                for row in m]
        blocks.append('[' + ','.join(rows) + ']')
    if len(blocks) == 1:
        return blocks[0]
    return '(' + ', '.join(blocks) + ')'


def _unit_matrix(n, j, k):
    m = np.zeros((n, n), dtype=complex)
    m[j, k] = 1.0
    return m
