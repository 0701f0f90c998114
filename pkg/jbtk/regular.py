import collections
import logging

import numpy as np
import scipy.linalg

import jbtk.errors as errors
import jbtk.matcore as matcore
import jbtk.triple as triple


Decision = collections.namedtuple('Decision', ['value', 'witness', 'checks'])


def generalized_inverse(a, tol=None):
    """
    The generalized inverse a^ = (a+)*

    Args:
        a: Element
        tol: (Optional) Tolerances

    Returns:
        Element b of the same space with Q(a)b = a and Q(b)a = b

    Raises:
        NumericalError: If either regularity identity misses the tolerance
    """
    tol = matcore.resolve(tol)
    b = matcore.adjoint(matcore.mp_inverse(a, tol))
    res_a = matcore.distance(triple.triple_product(a, b, a), a)
    res_b = matcore.distance(triple.triple_product(b, a, b), b)
    scale = max(1.0, a.norm()) * max(1.0, b.norm())
    scale *= max(1.0, a.norm(), b.norm())
    if not (tol.is_small(res_a, scale) and tol.is_small(res_b, scale)):
        logging.error(
            'generalized inverse residuals {0:.3e}, {1:.3e}'.format(
                res_a, res_b))
        raise errors.NumericalError(
            'generalized inverse failed validation',
            residual=max(res_a, res_b))
    return b


def range_tripotent_residuals(a, e, tol=None):
    """
    Operator defects of L(a, a^) = L(r, r) and Q(a)Q(a^) = P2(r)

    Args:
        a: Element
        e: Its range tripotent (Tripotent)

    Returns:
        (L residual, Q residual)
    """
    tol = matcore.resolve(tol)
    b = generalized_inverse(a, tol)
    res_l = triple.L_op(a, b).distance(triple.L_op(e.element, e.element))
    p2 = triple.peirce_projections(e, tol)[0]
    res_q = (triple.Q_op(a) @ triple.Q_op(b)).distance(p2)
    return res_l, res_q


def range_tripotent(a, tol=None, validate=True):
    """
    Range tripotent U V* from the compact SVD of each block

    Args:
        a: Element
        tol: (Optional) Tolerances
        validate: Check the L and Q characterizations

    Returns:
        Tripotent, with is_zero set when a vanishes

    Raises:
        NumericalError: If validation fails
    """
    tol = matcore.resolve(tol)
    data = [b.u @ b.v.conj().T for b in matcore.compact_svd(a, tol)]
    e = triple.Tripotent(matcore.Element(a.space, data), tol)
    if e.is_zero:
        logging.info('range tripotent of a zero element')
        return e
    if validate:
        res_l, res_q = range_tripotent_residuals(a, e, tol)
        scale = a.norm() * generalized_inverse(a, tol).norm()
        if not (tol.is_small(res_l, scale) and tol.is_small(res_q, scale)):
            logging.error(
                'range tripotent residuals {0:.3e}, {1:.3e}'.format(
                    res_l, res_q))
            raise errors.NumericalError(
                'range tripotent failed validation',
                residual=max(res_l, res_q))
    return e


def range_tripotent_by_iteration(a, n=20, tol=None):
    """
    Approximate r(a) by the iterated cubic root a^[1/3^n]
    """
    x = a
    for _ in range(n):
        x = triple.cubic_root(x, tol)
    return x


def peirce2_representative(a, e, tol=None):
    """
    Image of P2(e)(a) in the corner algebra ee* M ee*

    The map x -> x e* is a *-isomorphism from the Peirce-2 space of e, with
    product {x,e,y} and involution {e,x,e}, onto that corner.

    Returns:
        Element of the rows-square space
    """
    e = triple.as_tripotent(e, tol)
    space = a.space.rows_square()
    x = triple.peirce_projections(e, tol)[0](a)
    return matcore.Element(
        space, [m @ f.conj().T for m, f in zip(x.data, e.element.data)])


def peirce2_spectrum(a, e, tol=None):
    """
    Spectrum of a inside the Peirce-2 algebra of e

    Returns:
        (sorted eigenvalues of the Hermitian part over all blocks,
         largest anti-Hermitian defect)
    """
    tol = matcore.resolve(tol)
    e = triple.as_tripotent(e, tol)
    rep = peirce2_representative(a, e, tol)
    eigenvalues = []
    defect = 0.0
    for m, b, k in zip(rep.data, matcore.svd(e.element), e.ranks):
        w = b.u[:, :k]
        compressed = w.conj().T @ m @ w
        if k:
            defect = max(defect, np.linalg.norm(
                compressed - compressed.conj().T, 2))
        eigenvalues.extend(np.linalg.eigvalsh(
            (compressed + compressed.conj().T) / 2))
    return sorted(eigenvalues), defect


def is_positive_invertible_in_peirce2(a, e, tol=None):
    tol = matcore.resolve(tol)
    eigenvalues, defect = peirce2_spectrum(a, e, tol)
    scale = a.norm()
    return (tol.is_small(defect, scale) and bool(eigenvalues) and
            eigenvalues[0] > tol.zero_tol * max(1.0, scale))


def _disagreement(name, x, checks):
    logging.error('{0} characterizations disagree on {1}: {2}'.format(
        name, matcore.format_element(x), checks))
    raise errors.ConsistencyError(
        '{0} characterizations disagree: {1}'.format(name, checks),
        checks=checks)


def _complement_rank_test(v, tol):
    for m in v.data:
        r, c = m.shape
        left = np.eye(r) - m @ m.conj().T
        right = np.eye(c) - m.conj().T @ m
        r_left = matcore.block_rank(np.linalg.svd(left, compute_uv=False), tol)
        r_right = matcore.block_rank(
            np.linalg.svd(right, compute_uv=False), tol)
        if r_left * r_right != 0:
            return False
    return True


def is_extreme_point(v, tol=None):
    """
    Decide whether v is an extreme point of the closed unit ball

    Three characterizations must agree: (i) v is a tripotent and per block
    rank(1-vv*) rank(1-v*v) = 0, (ii) B(v,v) = 0, (iii) v is a complete
    tripotent.

    Args:
        v: Element
        tol: (Optional) Tolerances

    Returns:
        Decision whose witness names the first failing characterization

    Raises:
        ConsistencyError: If the characterizations disagree
    """
    tol = matcore.resolve(tol)
    if v.norm() > 1.0 + tol.zero_tol:
        checks = collections.OrderedDict(
            [('norm', False), ('rank', False), ('bergmann', False),
             ('complete', False)])
        return Decision(False, 'norm', checks)
    try:
        e = triple.Tripotent(v, tol)
    except errors.NotTripotentError:
        e = None
    checks = collections.OrderedDict()
    checks['rank'] = e is not None and _complement_rank_test(v, tol)
    checks['bergmann'] = triple.bergmann(v, v).is_zero(tol)
    checks['complete'] = e is not None and e.is_complete
    values = set(checks.values())
    if len(values) > 1:
        _disagreement('extreme point', v, checks)
    value = values.pop()
    witness = None
    if not value:
        witness = 'tripotent' if e is None else 'rank'
    return Decision(value, witness, checks)


def are_orthogonal(a, b, tol=None):
    """
    Decide L(a,b) = 0, cross-checked against ab* = 0 and b*a = 0

    Raises:
        ConsistencyError: If the operator and matrix tests disagree
    """
    tol = matcore.resolve(tol)
    matcore.check_same_space(a, b)
    scale = a.norm() * b.norm()
    by_operator = triple.L_op(a, b).is_zero(tol, scale)
    matrix_defect = 0.0
    for x, y in zip(a.data, b.data):
        matrix_defect = max(matrix_defect,
                            np.linalg.norm(x @ y.conj().T, 2),
                            np.linalg.norm(y.conj().T @ x, 2))
    by_matrix = tol.is_small(matrix_defect, scale)
    if by_operator != by_matrix:
        _disagreement('orthogonality', a,
                      {'operator': by_operator, 'matrix': by_matrix})
    return by_operator


def orthogonal_annihilator(a, tol=None):
    """
    Basis of {a}^perp = {x : x a* = 0 and a* x = 0}

    Blocks at or below zero_tol in norm count as zero, as in matcore.rank,
    so their whole block is annihilated.

    Returns:
        List of Elements spanning the annihilator
    """
    tol = matcore.resolve(tol)
    space = a.space
    offsets = np.cumsum([0] + [r * c for r, c in space.blocks])
    result = []
    for k, m in enumerate(a.data):
        r, c = m.shape
        if np.linalg.norm(m, 2) <= tol.zero_tol:
            kernel = np.eye(r * c, dtype=complex)
        else:
            mh = m.conj().T
            system = np.vstack([np.kron(np.eye(r), mh.T),
                                np.kron(mh, np.eye(c))])
            kernel = scipy.linalg.null_space(system, rcond=tol.sv_rel_cutoff)
        for column in kernel.T:
            coords = np.zeros(space.dim, dtype=complex)
            coords[offsets[k]:offsets[k + 1]] = column
            result.append(space.from_coords(coords))
    return result


def is_bp_quasi_invertible(a, tol=None):
    """
    Decide Brown-Pedersen quasi-invertibility

    Three characterizations must agree: (i) the range tripotent is an extreme
    point, (ii) B(a, a^) = 0, (iii) the orthogonal annihilator is trivial.

    Returns:
        Decision whose witness is the quasi-inverse a^ when true

    Raises:
        ConsistencyError: If the characterizations disagree
    """
    tol = matcore.resolve(tol)
    b = generalized_inverse(a, tol)
    e = range_tripotent(a, tol, validate=False)
    checks = collections.OrderedDict()
    checks['range_extreme'] = is_extreme_point(e.element, tol).value
    scale = (a.norm() * b.norm()) ** 2
    checks['bergmann'] = triple.bergmann(a, b).is_zero(tol, scale)
    checks['annihilator'] = not orthogonal_annihilator(a, tol)
    values = set(checks.values())
    if len(values) > 1:
        _disagreement('BP quasi-invertibility', a, checks)
    value = values.pop()
    return Decision(value, b if value else None, checks)


def bergmann_zero_consequences(x, y):
    """
    Operator norms of B(y,x) and B(x, Q(y)x) for a pair with B(x,y) = 0

    Both vanish whenever B(x,y) does, so Q(y)x is another quasi-inverse.
    """
    return (triple.bergmann(y, x).norm(),
            triple.bergmann(x, triple.triple_product(y, x, y)).norm())


def bergmann_defect(x, y):
    """
    Norm of B(x,y) as an operator on the triple, from the factored form
    B(x,y)z = (1 - xy*) z (1 - y*x)
    """
    matcore.check_same_space(x, y)
    worst = 0.0
    for a, b in zip(x.data, y.data):
        r, c = a.shape
        left = np.linalg.norm(np.eye(r) - a @ b.conj().T, 2)
        right = np.linalg.norm(np.eye(c) - b.conj().T @ a, 2)
        worst = max(worst, left * right)
    return worst
