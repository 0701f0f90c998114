import logging

import numpy as np

import jbtk.errors as errors
import jbtk.matcore as matcore


class RealLinearOperator(object):
    """
    A real-linear operator between triple spaces

    The action is stored over realified coordinates [Re(coords), Im(coords)],
    which is what lets conjugate-linear maps such as Q(a) be represented.
    """
    def __init__(self, domain, codomain, matrix):
        """
        Args:
            domain: Source TripleSpace
            codomain: Target TripleSpace
            matrix: Real array of shape (2 dim(codomain), 2 dim(domain))
        """
        matrix = np.asarray(matrix, dtype=float)
        expected = (2 * codomain.dim, 2 * domain.dim)
        if matrix.shape != expected:
            raise errors.SpaceMismatchError(
                'operator matrix has shape {0}, expected {1}'.format(
                    matrix.shape, expected))
        matrix.setflags(write=False)
        self._domain = domain
        self._codomain = codomain
        self._matrix = matrix

    @classmethod
    def from_function(cls, domain, codomain, func):
        """
        Tabulate a real-linear function of Elements

        Args:
            domain: Source TripleSpace
            codomain: Target TripleSpace
            func: Real-linear function from domain Elements to codomain Elements

        Returns:
            RealLinearOperator
        """
        columns = []
        for scalar in (1.0, 1j):
            for p in range(domain.dim):
                columns.append(func(scalar * domain.unit(p)).realified())
        return cls(domain, codomain, np.column_stack(columns))

    @classmethod
    def identity(cls, space):
        return cls(space, space, np.eye(2 * space.dim))

    @classmethod
    def zero(cls, domain, codomain):
        return cls(domain, codomain, np.zeros((2 * codomain.dim, 2 * domain.dim)))

    @property
    def domain(self):
        return self._domain

    @property
    def codomain(self):
        return self._codomain

    @property
    def matrix(self):
        return self._matrix

    def apply(self, x):
        if x.space != self._domain:
            raise errors.SpaceMismatchError(
                'operator on {0} applied to an element of {1}'.format(
                    self._domain, x.space))
        return self._codomain.from_realified(self._matrix @ x.realified())

    __call__ = apply

    def compose(self, other):
        """
        Get self after other
        """
        if other.codomain != self._domain:
            raise errors.SpaceMismatchError(
                'cannot compose {0} -> {1} after {2} -> {3}'.format(
                    self._domain, self._codomain, other.domain,
                    other.codomain))
        return RealLinearOperator(
            other.domain, self._codomain, self._matrix @ other.matrix)

    __matmul__ = compose

    def _check_shape(self, other):
        if (other.domain != self._domain or
           other.codomain != self._codomain):
            raise errors.SpaceMismatchError(
                'operators act between different spaces')

    def __add__(self, other):
        self._check_shape(other)
        return RealLinearOperator(
            self._domain, self._codomain, self._matrix + other.matrix)

    def __sub__(self, other):
        self._check_shape(other)
        return RealLinearOperator(
            self._domain, self._codomain, self._matrix - other.matrix)

    def __mul__(self, scalar):
        return RealLinearOperator(
            self._domain, self._codomain, float(scalar) * self._matrix)

    __rmul__ = __mul__

    def norm(self):
        """
        Operator norm over realified (Hilbert-Schmidt) coordinates
        """
        return np.linalg.norm(self._matrix, 2)

    def distance(self, other):
        return (self - other).norm()

    def is_zero(self, tol=None, scale=1.0):
        return matcore.resolve(tol).is_small(self.norm(), scale)

    def complex_rank(self, tol=None):
        """
        Complex dimension of the range of a complex-linear operator
        """
        tol = matcore.resolve(tol)
        sigma = np.linalg.svd(self._matrix, compute_uv=False)
        return matcore.block_rank(sigma, tol) // 2

    def _complex_structure_defect(self, sign):
        n, m = self._codomain.dim, self._domain.dim
        j_in = np.block([[np.zeros((m, m)), -np.eye(m)],
                         [np.eye(m), np.zeros((m, m))]])
        j_out = np.block([[np.zeros((n, n)), -np.eye(n)],
                          [np.eye(n), np.zeros((n, n))]])
        return np.linalg.norm(self._matrix @ j_in - sign * j_out @ self._matrix, 2)

    def is_complex_linear(self, tol=None):
        return matcore.resolve(tol).is_small(
            self._complex_structure_defect(1.0), self.norm())

    def is_conjugate_linear(self, tol=None):
        return matcore.resolve(tol).is_small(
            self._complex_structure_defect(-1.0), self.norm())


def triple_product(x, y, z):
    """
    The triple product {x,y,z} = (x y* z + z y* x) / 2, blockwise
    """
    space = matcore.check_same_space(x, y, z)
    data = []
    for a, b, c in zip(x.data, y.data, z.data):
        bh = b.conj().T
        data.append((a @ bh @ c + c @ bh @ a) / 2)
    return matcore.Element(space, data)


def L_op(a, b):
    """
    The operator L(a,b) x = {a,b,x}; complex-linear
    """
    space = matcore.check_same_space(a, b)
    return RealLinearOperator.from_function(
        space, space, lambda x: triple_product(a, b, x))


def Q_op(a):
    """
    The operator Q(a) y = {a,y,a}; conjugate-linear
    """
    space = a.space
    return RealLinearOperator.from_function(
        space, space, lambda y: triple_product(a, y, a))


def bergmann(x, y):
    """
    The Bergmann operator B(x,y) = I - 2 L(x,y) + Q(x) Q(y)
    """
    space = matcore.check_same_space(x, y)
    return (RealLinearOperator.identity(space) - 2 * L_op(x, y) +
            Q_op(x) @ Q_op(y))


def bergmann_apply(x, y, z):
    """
    Evaluate B(x,y) z = z - 2{x,y,z} + {x,{y,z,y},x} without tabulating
    """
    return z - 2 * triple_product(x, y, z) + triple_product(
        x, triple_product(y, z, y), x)


def bergmann_cstar(a, x):
    """
    B(a,a) x = (1 - a a*) x (1 - a* a), valid in any block shape
    """
    space = matcore.check_same_space(a, x)
    data = []
    for m, z in zip(a.data, x.data):
        r, c = m.shape
        left = np.eye(r) - m @ m.conj().T
        right = np.eye(c) - m.conj().T @ m
        data.append(left @ z @ right)
    return matcore.Element(space, data)


class Tripotent(object):
    """
    An element e with {e,e,e} = e, with its classification
    """
    def __init__(self, element, tol=None):
        """
        Validate and classify

        Args:
            element: Candidate Element
            tol: (Optional) Tolerances

        Raises:
            NotTripotentError: If {e,e,e} differs from e beyond tolerance
        """
        tol = matcore.resolve(tol)
        residual = matcore.distance(
            triple_product(element, element, element), element)
        if not tol.is_small(residual):
            raise errors.NotTripotentError(
                'not a tripotent, |{{e,e,e}} - e| = {0:.3e}'.format(residual),
                residual=residual)
        ranks = matcore.rank(element, tol)
        self._element = element
        self._ranks = ranks
        self._unitary = tuple(
            k == r and k == c
            for k, (r, c) in zip(ranks, element.space.blocks))
        self._complete = all(
            k == r or k == c for k, (r, c) in zip(ranks, element.space.blocks))
        self._peirce2_dim = sum(k * k for k in ranks)

    @property
    def element(self):
        return self._element

    @property
    def space(self):
        return self._element.space

    @property
    def ranks(self):
        return self._ranks

    @property
    def is_complete(self):
        return self._complete

    @property
    def is_minimal(self):
        return self._peirce2_dim == 1

    @property
    def is_unitary(self):
        """
        Per-block unitarity flags
        """
        return self._unitary

    @property
    def is_zero(self):
        return all(k == 0 for k in self._ranks)

    def __repr__(self):
        return 'Tripotent(ranks={0}, complete={1}, minimal={2})'.format(
            self._ranks, self._complete, self.is_minimal)


def as_tripotent(e, tol=None):
    if isinstance(e, Tripotent):
        return e
    return Tripotent(e, tol)


def _sandwich(e, left_complement, right_complement):
    """
    Build x -> l x r with l = ee* or 1-ee*, r = e*e or 1-e*e, per block
    """
    lefts, rights = [], []
    for m in e.data:
        r, c = m.shape
        eeh = m @ m.conj().T
        ehe = m.conj().T @ m
        lefts.append(np.eye(r) - eeh if left_complement else eeh)
        rights.append(np.eye(c) - ehe if right_complement else ehe)

    def func(x):
        return x.map_blocks(lambda k, z: lefts[k] @ z @ rights[k])
    return func


def peirce_projections(e, tol=None):
    """
    The Peirce projections of a tripotent

    Args:
        e: Tripotent, or an Element validated as one
        tol: (Optional) Tolerances

    Returns:
        (P2, P1, P0) as RealLinearOperators
    """
    e = as_tripotent(e, tol).element
    space = e.space
    p2 = RealLinearOperator.from_function(
        space, space, _sandwich(e, False, False))
    p0 = RealLinearOperator.from_function(
        space, space, _sandwich(e, True, True))
    p1 = RealLinearOperator.identity(space) - p2 - p0
    return p2, p1, p0


def peirce_dimensions(e, tol=None):
    """
    Complex dimensions of the Peirce spaces E2(e), E1(e), E0(e)
    """
    return tuple(p.complex_rank(tol) for p in peirce_projections(e, tol))


def peirce_arithmetic_residual(e, samples, tol=None):
    """
    Largest violation of Peirce arithmetic over sampled elements

    For x in E_i, y in E_j, z in E_k the product {x,y,z} must lie in
    E_{i-j+k}, and vanish when i-j+k is not 0, 1 or 2. Additionally
    {E2, E0, E} = {E0, E2, E} = 0.

    Args:
        e: Tripotent
        samples: Elements to project into the Peirce spaces
    """
    e = as_tripotent(e, tol)
    projections = peirce_projections(e, tol)
    ident = RealLinearOperator.identity(e.space)
    index = {2: projections[0], 1: projections[1], 0: projections[2]}
    parts = [dict((i, index[i](x)) for i in index) for x in samples]
    worst = 0.0
    for xs in parts:
        for ys in parts:
            for zs in parts:
                for i in index:
                    for j in index:
                        for k in index:
                            t = triple_product(xs[i], ys[j], zs[k])
                            target = i - j + k
                            proj = index.get(target)
                            if proj is None:
                                off = t.norm()
                            else:
                                off = ((ident - proj)(t)).norm()
                            worst = max(worst, off)
                worst = max(
                    worst,
                    triple_product(xs[2], ys[0], zs[1] + zs[0] + zs[2]).norm(),
                    triple_product(xs[0], ys[2], zs[1] + zs[0] + zs[2]).norm())
    return worst


def odd_calculus(a, f, tol=None):
    """
    Odd functional calculus through the singular value decomposition

    Args:
        a: Element
        f: Real function, vectorized over numpy arrays, with f(0) = 0
        tol: (Optional) Tolerances

    Returns:
        U f(Sigma) V* per block

    Raises:
        ValueError: If f(0) is not zero
        NumericalError: If f is undefined on the singular values of a
    """
    tol = matcore.resolve(tol)
    at_zero = float(np.asarray(f(np.zeros(1)))[0])
    if abs(at_zero) > tol.zero_tol:
        raise ValueError('odd calculus needs f(0) = 0, got {0}'.format(at_zero))
    data = []
    for k, b in enumerate(matcore.compact_svd(a, tol)):
        values = np.asarray(f(b.sigma), dtype=float)
        if not np.all(np.isfinite(values)):
            raise errors.NumericalError(
                'function undefined on the singular values of block {0}'.format(
                    k), block=k)
        data.append((b.u * values) @ b.v.conj().T)
    return matcore.Element(a.space, data)


def odd_power(a, n, tol=None):
    """
    The odd triple power a^[n] through the calculus
    """
    if n < 1 or n % 2 != 1:
        raise ValueError('odd_power needs an odd positive integer, got {0}'.format(n))
    return odd_calculus(a, lambda t: t ** n, tol)


def odd_power_recursive(a, n):
    """
    a^[n] from the recursion a^[2m+1] = {a, a, a^[2m-1]}
    """
    if n < 1 or n % 2 != 1:
        raise ValueError('odd_power needs an odd positive integer, got {0}'.format(n))
    result = a
    for _ in range((n - 1) // 2):
        result = triple_product(a, a, result)
    return result


def cubic_root(a, tol=None):
    """
    The unique y in the subtriple generated by a with {y,y,y} = a
    """
    return odd_calculus(a, np.cbrt, tol)


def triple_spectrum(a, tol=None):
    """
    Triple spectrum as the distinct nonzero singular values

    Returns:
        (tuple of increasing distinct nonzero singular values,
         True if some singular value of a block vanishes)
    """
    tol = matcore.resolve(tol)
    values = []
    has_zero = False
    for m, b in zip(a.data, matcore.svd(a)):
        r = matcore.block_rank(b.sigma, tol)
        if r < min(m.shape):
            has_zero = True
        values.extend(b.sigma[:r])
    distinct = []
    for s in sorted(values):
        if distinct and abs(s - distinct[-1]) <= tol.zero_tol * max(1.0, s):
            continue
        distinct.append(float(s))
    return tuple(distinct), has_zero


def subtriple_dimension(a, tol=None):
    """
    Dimension of the span of the odd powers a, a^[3], a^[5], ...

    This is the complex dimension of the commutative subtriple generated by
    a, which equals the number of distinct nonzero singular values.
    """
    tol = matcore.resolve(tol)
    norm = a.norm()
    if norm <= tol.zero_tol:
        return 0
    b = a / norm
    count = len(triple_spectrum(a, tol)[0]) + 1
    columns = [odd_power(b, 2 * k + 1, tol).coords() for k in range(count)]
    sigma = np.linalg.svd(np.column_stack(columns), compute_uv=False)
    return matcore.block_rank(sigma, tol)


def jordan_identity_residual(a, b, x, y):
    """
    Operator-norm defect of the Jordan triple identity

    L(a,b)L(x,y) - L(x,y)L(a,b) = L(L(a,b)x, y) - L(x, L(b,a)y)
    """
    lab, lxy = L_op(a, b), L_op(x, y)
    left = lab @ lxy - lxy @ lab
    right = (L_op(triple_product(a, b, x), y) -
             L_op(x, triple_product(b, a, y)))
    return left.distance(right)


def polarization_sum(x, y, z):
    """
    Sum over k in 0..3, j in 1..2 of i^k (-1)^j (x + i^k y + (-1)^j z)^[3]

    Returns:
        The sum, which equals 8({x,y,z} + {z,y,x})
    """
    total = matcore.check_same_space(x, y, z).zero()
    for k in range(4):
        phase = 1j ** k
        for j in (1, 2):
            sign = (-1) ** j
            w = x + phase * y + sign * z
            total = total + (phase * sign) * triple_product(w, w, w)
    return total


def polarization_residual(x, y, z):
    return matcore.distance(
        polarization_sum(x, y, z), 16 * triple_product(x, y, z))


def _require_square(space):
    if not space.is_unital_cstar:
        raise errors.SpaceMismatchError(
            'Jordan operations need square blocks, got {0}'.format(space))


def jordan_mul(a, b):
    """
    Jordan product a o b = (ab + ba) / 2, blockwise
    """
    space = matcore.check_same_space(a, b)
    _require_square(space)
    return matcore.Element(
        space, [(x @ y + y @ x) / 2 for x, y in zip(a.data, b.data)])


def U_apply(a, x):
    """
    U_a(x) = 2 a o (a o x) - a^2 o x
    """
    return 2 * jordan_mul(a, jordan_mul(a, x)) - jordan_mul(jordan_mul(a, a), x)


def U_op(a):
    _require_square(a.space)
    return RealLinearOperator.from_function(
        a.space, a.space, lambda x: U_apply(a, x))


def jordan_inverse(a, tol=None):
    """
    Jordan inverse b = U_a^{-1}(a)

    Raises:
        SpaceMismatchError: On a non-square space
        NotInvertibleError: If U_a is singular beyond tolerance
        NumericalError: If the solution misses a o b = 1 or a^2 o b = a
    """
    tol = matcore.resolve(tol)
    space = a.space
    _require_square(space)
    u = U_op(a).matrix
    sigma = np.linalg.svd(u, compute_uv=False)
    if sigma[0] <= tol.zero_tol or sigma[-1] <= tol.sv_rel_cutoff * sigma[0]:
        raise errors.NotInvertibleError(
            'U_a is singular (smallest singular value {0:.3e})'.format(
                sigma[-1]))
    b = space.from_realified(np.linalg.solve(u, a.realified()))
    one = space.identity()
    scale = a.norm() * max(1.0, b.norm()) * max(1.0, a.norm())
    res_unit = matcore.distance(jordan_mul(a, b), one)
    res_square = matcore.distance(jordan_mul(jordan_mul(a, a), b), a)
    if not (tol.is_small(res_unit, scale) and tol.is_small(res_square, scale)):
        logging.warning(
            'jordan inverse residuals {0:.3e}, {1:.3e}'.format(
                res_unit, res_square))
        raise errors.NumericalError(
            'jordan inverse failed validation',
            residual=max(res_unit, res_square))
    return b


def hua_check(a, b, tol=None):
    """
    Residual of Hua's identity (a^-1 - (a - b^-1)^-1)^-1 = a - U_a(b)

    Raises:
        InapplicableError: If a, b, a - b^-1 or the inner difference is not
            invertible
    """
    tol = matcore.resolve(tol)
    try:
        a_inv = jordan_inverse(a, tol)
        b_inv = jordan_inverse(b, tol)
        inner = jordan_inverse(a - b_inv, tol)
        left = jordan_inverse(a_inv - inner, tol)
    except errors.NotInvertibleError as e:
        logging.info('hua identity inapplicable: {0}'.format(e))
        raise errors.InapplicableError(str(e))
    return matcore.distance(left, a - U_apply(a, b))
