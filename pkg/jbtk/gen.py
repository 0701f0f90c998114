"""
Seeded generators for elements, tripotents, homomorphisms and the two
counterexample maps

Every function taking `rng` accepts a numpy Generator or an integer seed.
"""
import collections
import logging

import numpy as np
import scipy.linalg

import jbtk.errors as errors
import jbtk.linearmap as linearmap
import jbtk.matcore as matcore


Construction = collections.namedtuple(
    'Construction', ['domain', 'codomain', 'map', 'named'])

CERTIFY_TOL = 1e-9


def _rng(rng):
    return np.random.default_rng(rng)


def _gaussian(rng, shape):
    return (rng.standard_normal(shape) +
            1j * rng.standard_normal(shape)) / np.sqrt(2)


def haar_unitary(n, rng):
    """
    Haar-random n x n unitary from the QR factorization of a complex Gaussian

    The phases of the diagonal of R are moved into Q.
    """
    rng = _rng(rng)
    q, r = np.linalg.qr(_gaussian(rng, (n, n)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_isometry(rows, cols, rng):
    """
    rows x cols matrix with orthonormal columns (rows >= cols)
    """
    if rows < cols:
        raise errors.InfeasibleRecipeError(
            'no {0}x{1} isometry'.format(rows, cols))
    return haar_unitary(rows, rng)[:, :cols]


def _resolve_ranks(space, ranks, rng):
    if ranks is None:
        return [int(rng.integers(0, min(r, c) + 1)) for r, c in space.blocks]
    ranks = list(ranks)
    if len(ranks) != len(space.blocks):
        raise errors.InfeasibleRecipeError(
            '{0} ranks given for {1} blocks'.format(len(ranks), space))
    for k, (rank, (r, c)) in enumerate(zip(ranks, space.blocks)):
        if rank < 0 or rank > min(r, c):
            raise errors.InfeasibleRecipeError(
                'rank {0} impossible in {1}x{2} block {3}'.format(
                    rank, r, c, k))
    return ranks


def random_element(space, ranks=None, rng=None, low=0.25, high=2.0):
    """
    Random element with an exact rank profile

    Each block is a product of rank-k factors, L diag(s) R with L, R* having
    orthonormal columns and singular values s drawn from [low, high].

    Args:
        space: TripleSpace
        ranks: (Optional) Per-block ranks, random when omitted
        rng: numpy Generator or seed
        low: Smallest singular value
        high: Largest singular value

    Raises:
        InfeasibleRecipeError: If a rank exceeds its block
    """
    rng = _rng(rng)
    ranks = _resolve_ranks(space, ranks, rng)
    data = []
    for k, (r, c) in zip(ranks, space.blocks):
        left = random_isometry(r, k, rng) if k else np.zeros((r, 0))
        right = random_isometry(c, k, rng) if k else np.zeros((c, 0))
        s = rng.uniform(low, high, size=k)
        data.append((left * s) @ right.conj().T)
    return matcore.Element(space, data)


def random_regular_element(space, rng=None):
    return random_element(space, None, rng)


def random_bp_element(space, rng=None):
    """
    Random element of full rank in every block
    """
    return random_element(space, [min(r, c) for r, c in space.blocks], rng)


def random_tripotent(space, ranks=None, rng=None):
    """
    Random partial isometry with the given rank profile
    """
    return random_element(space, ranks, rng, low=1.0, high=1.0)


def random_extreme(space, rng=None):
    """
    Random maximal partial isometry, U [I;0] V or U [I,0] V per block
    """
    rng = _rng(rng)
    data = []
    for r, c in space.blocks:
        u, v = haar_unitary(r, rng), haar_unitary(c, rng)
        if r >= c:
            data.append(u[:, :c] @ v)
        else:
            data.append(u @ v[:r, :])
    return matcore.Element(space, data)


def random_unitary(space, rng=None):
    if not space.is_unital_cstar:
        raise errors.SpaceMismatchError(
            '{0} has no unitaries'.format(space))
    return random_extreme(space, rng)


def random_hermitian(space, low=-1.0, high=1.0, rng=None):
    """
    Random self-adjoint element with spectrum in [low, high]
    """
    rng = _rng(rng)
    if not space.is_unital_cstar:
        raise errors.SpaceMismatchError(
            '{0} has no self-adjoint part'.format(space))
    data = []
    for n, _ in space.blocks:
        u = haar_unitary(n, rng)
        data.append((u * rng.uniform(low, high, size=n)) @ u.conj().T)
    return matcore.Element(space, data)


def random_orthogonal_pair(space, rng=None, low=0.25, high=2.0):
    """
    Random a, b with a b* = 0 and b* a = 0

    The singular directions of each block are split between a and b.
    """
    rng = _rng(rng)
    first, second = [], []
    for r, c in space.blocks:
        u, v = haar_unitary(r, rng), haar_unitary(c, rng)
        n = min(r, c)
        s = rng.uniform(low, high, size=n)
        mask = rng.integers(0, 2, size=n).astype(bool)
        core_a = np.zeros((r, c), dtype=complex)
        core_b = np.zeros((r, c), dtype=complex)
        for j in range(n):
            if mask[j]:
                core_a[j, j] = s[j]
            else:
                core_b[j, j] = s[j]
        first.append(u @ core_a @ v)
        second.append(u @ core_b @ v)
    return matcore.Element(space, first), matcore.Element(space, second)


def probe_elements(space):
    """
    Deterministic elements tried ahead of random samples

    Returns:
        [canonical extreme point, staircase element]; the canonical extreme
        carries an identity in the top-left corner of every block, the
        staircase places descending integers P..1 along the block diagonals
        ((2,1) in C + C)
    """
    extreme = []
    for r, c in space.blocks:
        extreme.append(np.eye(r, c))
    positions = [(k, j) for k, (r, c) in enumerate(space.blocks)
                 for j in range(min(r, c))]
    stairs = [np.zeros(shape, dtype=complex) for shape in space.blocks]
    for value, (k, j) in zip(range(len(positions), 0, -1), positions):
        stairs[k][j, j] = value
    return [matcore.Element(space, extreme), matcore.Element(space, stairs)]


def _fill(target, sizes, rng):
    """
    Random sequence of indices into sizes summing exactly to target

    Returns:
        List of indices, or None when target is not representable
    """
    reachable = [False] * (target + 1)
    reachable[0] = True
    for total in range(1, target + 1):
        reachable[total] = any(
            s <= total and reachable[total - s] for s in sizes)
    if not reachable[target]:
        return None
    chosen = []
    remaining = target
    while remaining:
        options = [i for i, s in enumerate(sizes)
                   if s <= remaining and reachable[remaining - s]]
        pick = options[int(rng.integers(0, len(options)))]
        chosen.append(pick)
        remaining -= sizes[pick]
    return chosen


def _certify(T, defect, name):
    residual = defect(T)
    if residual > CERTIFY_TOL * max(1.0, T.norm()):
        logging.error('generated {0} has defect {1:.3e}'.format(
            name, residual))
        raise errors.NumericalError(
            'generated {0} failed certification'.format(name),
            residual=residual)
    return T


def random_jordan_star_hom(domain, codomain, rng=None, recipe=None,
                           certify=True):
    """
    Random unital Jordan *-homomorphism between square-block spaces

    Every codomain block receives W diag(pieces) W*, each piece a domain
    block or its transpose, the pieces filling the block exactly.

    Args:
        domain: Square-block TripleSpace
        codomain: Square-block TripleSpace
        rng: numpy Generator or seed
        recipe: (Optional) Per codomain block, a list of
            (domain block index, transposed) pairs
        certify: Check the Jordan and adjoint identities on all basis pairs

    Raises:
        InfeasibleRecipeError: If some codomain block cannot be filled
    """
    rng = _rng(rng)
    if not (domain.is_unital_cstar and codomain.is_unital_cstar):
        raise errors.InfeasibleRecipeError(
            'Jordan *-homomorphisms need square blocks')
    sizes = [n for n, _ in domain.blocks]
    if recipe is None:
        recipe = []
        for m, _ in codomain.blocks:
            picks = _fill(m, sizes, rng)
            if picks is None:
                raise errors.InfeasibleRecipeError(
                    'cannot fill a {0}x{0} block with blocks of sizes '
                    '{1}'.format(m, sizes))
            recipe.append([(k, bool(rng.integers(0, 2))) for k in picks])
    if len(recipe) != len(codomain.blocks):
        raise errors.InfeasibleRecipeError(
            'recipe covers {0} of {1} codomain blocks'.format(
                len(recipe), len(codomain.blocks)))
    for pieces, (m, _) in zip(recipe, codomain.blocks):
        if sum(sizes[k] for k, _ in pieces) != m:
            raise errors.InfeasibleRecipeError(
                'pieces {0} do not fill a {1}x{1} block'.format(pieces, m))
    unitaries = [haar_unitary(m, rng) for m, _ in codomain.blocks]

    def func(x):
        data = []
        for pieces, w in zip(recipe, unitaries):
            parts = [x.data[k].T if flip else x.data[k] for k, flip in pieces]
            data.append(w @ scipy.linalg.block_diag(*parts) @ w.conj().T)
        return matcore.Element(codomain, data)

    T = linearmap.LinearMap.from_function(
        domain, codomain, func, name='jordan-star-hom')
    if certify:
        _certify(T, linearmap.jordan_star_defect, 'Jordan *-homomorphism')
    return T


def _triple_recipe(domain, rows, cols, rng, complete):
    """
    Pieces for one codomain block as (domain block, transposed) pairs
    """
    shapes = list(domain.blocks)
    if not complete:
        recipe = []
        used_r = used_c = 0
        for k in rng.permutation(len(shapes)):
            flip = bool(rng.integers(0, 2))
            r, c = shapes[k][::-1] if flip else shapes[k]
            if used_r + r <= rows and used_c + c <= cols:
                recipe.append((int(k), flip))
                used_r += r
                used_c += c
        return recipe
    tall = rows >= cols
    # pieces in isometric orientation: long side along the long side of the block
    oriented = []
    for r, c in shapes:
        if tall:
            oriented.append((max(r, c), min(r, c), r < c))
        else:
            oriented.append((min(r, c), max(r, c), r > c))
    target, room = (cols, rows) if tall else (rows, cols)
    short = [o[1] if tall else o[0] for o in oriented]
    long_ = [o[0] if tall else o[1] for o in oriented]
    # least long-side usage for each exact short-side total
    least = [0] + [None] * target
    for total in range(1, target + 1):
        best = None
        for s, l in zip(short, long_):
            if s <= total and least[total - s] is not None:
                cand = least[total - s] + l
                if best is None or cand < best:
                    best = cand
        least[total] = best
    if least[target] is None or least[target] > room:
        return None
    recipe = []
    remaining, used = target, 0
    while remaining:
        options = [i for i in range(len(shapes))
                   if short[i] <= remaining and
                   least[remaining - short[i]] is not None and
                   used + long_[i] + least[remaining - short[i]] <= room]
        pick = options[int(rng.integers(0, len(options)))]
        recipe.append((pick, oriented[pick][2]))
        remaining -= short[pick]
        used += long_[pick]
    return recipe


def random_triple_hom(domain, codomain, rng=None, recipe=None, complete=True,
                      certify=True):
    """
    Random triple homomorphism x -> u diag(pieces of x) w*

    Args:
        domain: TripleSpace
        codomain: TripleSpace
        rng: numpy Generator or seed
        recipe: (Optional) Per codomain block, a list of
            (domain block index, transposed) pairs
        complete: Fill the short side of every codomain block exactly, so
            extreme points map to extreme points
        certify: Check the triple identity on all basis triples

    Raises:
        InfeasibleRecipeError: If the pieces do not fit
    """
    rng = _rng(rng)
    if recipe is None:
        recipe = []
        for rows, cols in codomain.blocks:
            pieces = _triple_recipe(domain, rows, cols, rng, complete)
            if pieces is None:
                raise errors.InfeasibleRecipeError(
                    'cannot fill a {0}x{1} block from {2}'.format(
                        rows, cols, domain))
            recipe.append(pieces)
    if len(recipe) != len(codomain.blocks):
        raise errors.InfeasibleRecipeError(
            'recipe covers {0} of {1} codomain blocks'.format(
                len(recipe), len(codomain.blocks)))
    for pieces, (rows, cols) in zip(recipe, codomain.blocks):
        shapes = [domain.blocks[k][::-1] if flip else domain.blocks[k]
                  for k, flip in pieces]
        if (sum(s[0] for s in shapes) > rows or
           sum(s[1] for s in shapes) > cols):
            raise errors.InfeasibleRecipeError(
                'pieces {0} overflow a {1}x{2} block'.format(
                    pieces, rows, cols))
    frames = [(haar_unitary(r, rng), haar_unitary(c, rng))
              for r, c in codomain.blocks]

    def func(x):
        data = []
        for pieces, (u, w), (rows, cols) in zip(
                recipe, frames, codomain.blocks):
            core = np.zeros((rows, cols), dtype=complex)
            if pieces:
                parts = [x.data[k].T if flip else x.data[k]
                         for k, flip in pieces]
                diag = scipy.linalg.block_diag(*parts)
                core[:diag.shape[0], :diag.shape[1]] = diag
            data.append(u @ core @ w.conj().T)
        return matcore.Element(codomain, data)

    T = linearmap.LinearMap.from_function(
        domain, codomain, func, name='triple-hom')
    if certify:
        _certify(T, linearmap.triple_defect, 'triple homomorphism')
    return T


def random_extreme_preserver(domain, codomain, rng=None):
    """
    Random map T = v S (tall blocks) or T = S v (wide blocks)

    S is a random unital Jordan *-homomorphism into the square space on the
    short side and v a random extreme point of the codomain.

    Returns:
        (T, v, S)
    """
    rng = _rng(rng)
    tall = all(r >= c for r, c in codomain.blocks)
    wide = all(r <= c for r, c in codomain.blocks)
    if not (tall or wide):
        raise errors.InfeasibleRecipeError(
            'codomain {0} mixes tall and wide blocks'.format(codomain))
    v = random_extreme(codomain, rng)
    if tall:
        S = random_jordan_star_hom(domain, codomain.cols_square(), rng)
        T = S.left_product(v, codomain)
    else:
        S = random_jordan_star_hom(domain, codomain.rows_square(), rng)
        T = S.right_product(v, codomain)
    return linearmap.LinearMap(domain, codomain, T.matrix,
                               name='extreme-preserver'), v, S


def random_map(domain, codomain, rng=None):
    """
    Random linear map with Gaussian coordinates, scaled to unit norm
    """
    rng = _rng(rng)
    m = _gaussian(rng, (codomain.dim, domain.dim))
    return linearmap.LinearMap(domain, codomain, m / np.linalg.norm(m, 2),
                               name='random')


def perturb(T, eps=1e-3, rng=None):
    """
    T plus a random map of norm eps
    """
    rng = _rng(rng)
    noise = random_map(T.domain, T.codomain, rng)
    return linearmap.LinearMap(T.domain, T.codomain,
                               T.matrix + eps * noise.matrix,
                               name='perturbed')


def remark_nonunitary():
    """
    The map lambda -> lambda v from C into 3x2 matrices

    v is an isometry that is not unitary; the map preserves extreme points.
    """
    domain = matcore.TripleSpace([(1, 1)])
    codomain = matcore.TripleSpace([(3, 2)])
    v = matcore.Element(codomain, [np.eye(3, 2)])
    T = linearmap.LinearMap.from_function(
        domain, codomain, lambda x: x.data[0][0, 0] * v,
        name='remark-nonunitary')
    return Construction(domain, codomain, T, {'v': v})


def remark_two_isometries():
    """
    The map (l, m) -> l/2 (v + w) + m/2 (v - w) from C + C into 4x2 matrices

    v and w are isometries with orthogonal ranges. The map preserves
    extreme points and Bergmann-zero pairs but not generalized inverses.
    """
    domain = matcore.TripleSpace([(1, 1), (1, 1)])
    codomain = matcore.TripleSpace([(4, 2)])
    v_block = np.zeros((4, 2))
    v_block[:2, :] = np.eye(2)
    w_block = np.zeros((4, 2))
    w_block[2:, :] = np.eye(2)
    v = matcore.Element(codomain, [v_block])
    w = matcore.Element(codomain, [w_block])

    def func(x):
        lam, mu = x.data[0][0, 0], x.data[1][0, 0]
        return (lam / 2) * (v + w) + (mu / 2) * (v - w)

    T = linearmap.LinearMap.from_function(
        domain, codomain, func, name='remark-two-isometries')
    return Construction(domain, codomain, T, {'v': v, 'w': w})


KINDS = ('jordan_star_hom', 'triple_hom', 'extreme_preserver', 'random',
         'remark_nonunitary', 'remark_two_isometries')


def from_spec(spec):
    """
    Build a map from a generator spec such as
    {"kind": "triple_hom", "seed": 3, "domain": {...}, "codomain": {...}}

    Raises:
        InputError: On an unknown kind or missing spaces
    """
    kind = spec.get('kind')
    if kind == 'remark_nonunitary':
        return remark_nonunitary().map
    if kind == 'remark_two_isometries':
        return remark_two_isometries().map
    if kind not in KINDS:
        raise errors.InputError('unknown generator kind {0!r}'.format(kind))
    try:
        domain = matcore.TripleSpace(spec['domain']['blocks'])
        codomain = matcore.TripleSpace(spec['codomain']['blocks'])
    except (KeyError, TypeError) as e:
        raise errors.InputError(
            'generator spec needs domain and codomain blocks ({0})'.format(e))
    except errors.SpaceMismatchError as e:
        raise errors.InputError(str(e))
    seed = spec.get('seed', 0)
    if kind == 'jordan_star_hom':
        return random_jordan_star_hom(domain, codomain, seed)
    if kind == 'triple_hom':
        return random_triple_hom(domain, codomain, seed,
                                 complete=spec.get('complete', True))
    if kind == 'extreme_preserver':
        return random_extreme_preserver(domain, codomain, seed)[0]
    return random_map(domain, codomain, seed)
