"""
Predicates on linear maps between triple spaces

Decisive checks sweep a finite spanning family and are exact up to tolerance
because the underlying identities are multilinear. Sampled checks quantify
over nonlinear sets (extreme points, quasi-invertible elements), so a pass is
evidence and a fail is a certificate.
"""
import collections
import logging

import numpy as np

import jbtk.errors as errors
import jbtk.gen as gen
import jbtk.linearmap as linearmap
import jbtk.matcore as matcore
import jbtk.regular as regular
import jbtk.report as report
import jbtk.trialexec as trialexec
import jbtk.triple as triple


DEFAULT_TRIALS = 100
DEFAULT_SEED = 0

Factorization = collections.namedtuple(
    'Factorization', ['v', 'S', 'S1', 'report'])

# Short verdict names, also the keys accepted by --expect
JORDAN_STAR_HOM = 'jordan-star-hom'
TRIPLE_HOM = 'triple-hom'
EXTREME_PRESERVER = 'extreme-preserver'
BP_PRESERVER = 'bp-preserver'
STRONG_BP = 'strong-bp'
STRONG_REGULARITY = 'strong-regularity'
BERGMANN_ZERO = 'bergmann-zero'
UNITARY_IDENTITIES = 'unitary-identities'
FACTORIZATION = 'factorization'
CUBES = 'cubes'
ORTHOGONALITY = 'orthogonality'


def _defaults(trials, seed, tol):
    if trials is None:
        trials = DEFAULT_TRIALS
    if seed is None:
        seed = DEFAULT_SEED
    return trials, seed, matcore.resolve(tol)


def _run(executor, name, check, count, seed, mode):
    if executor is not None:
        return executor.run(name, check, count, seed, mode)
    with trialexec.TrialExecutor() as owned:
        return owned.run(name, check, count, seed, mode)


def _scale(T, power):
    return max(1.0, T.norm()) ** power


def _inapplicable(name, mode, detail, trials=None, seed=None):
    logging.info('{0} inapplicable: {1}'.format(name, detail))
    return report.Verdict(name, report.INAPPLICABLE, mode, trials=trials,
                          seed=seed, detail=detail)


def _jordan_sweep(space):
    """
    Matrix units followed by u_p + u_q, u_p - u_q, u_p + i u_q, each scaled
    to norm one
    """
    units = space.basis()
    items = list(units)
    for p in range(len(units)):
        for q in range(p + 1, len(units)):
            for combo in (units[p] + units[q], units[p] - units[q],
                          units[p] + 1j * units[q]):
                items.append(combo / combo.norm())
    return items


def is_jordan_star_hom(T, trials=None, seed=None, tol=None, executor=None):
    """
    Decide whether T is a Jordan *-homomorphism

    A sweep checking T(a^2) = T(a)^2 and T(a*) = T(a)* on matrix units and
    their pairwise combinations decides the question, since it covers the
    polarized identity on all basis pairs. Random unit-norm elements are
    then checked as well; a random failure after a passing sweep is a
    consistency error.

    Returns:
        Verdict, witness the failing input with the largest residual
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    if not (T.domain.is_unital_cstar and T.codomain.is_unital_cstar):
        return _inapplicable(JORDAN_STAR_HOM, report.DECISIVE,
                             'non-square domain or codomain')
    items = _jordan_sweep(T.domain)
    scale = _scale(T, 2)

    def residual(a):
        return max(linearmap.jordan_residual(T, a, a),
                   linearmap.star_residual(T, a))

    def sweep(rng, index):
        a = items[index]
        value = residual(a)
        return tol.is_small(value, scale), value, a

    def sample(rng, index):
        a = gen.random_element(T.domain, rng=rng)
        if a.norm() > 0:
            a = a / a.norm()
        value = residual(a)
        return tol.is_small(value, scale), value, a

    verdict = _run(executor, JORDAN_STAR_HOM, sweep, len(items), seed,
                   report.DECISIVE)
    if trials and verdict.passed:
        sampled = _run(executor, JORDAN_STAR_HOM, sample, trials, seed,
                       report.SAMPLED)
        if sampled.failed:
            logging.error('Jordan sweep passed but sample failed at {0}'.format(
                sampled.witness))
            raise errors.ConsistencyError(
                'Jordan *-homomorphism sweep and samples disagree',
                checks={'sweep': True, 'samples': False})
        verdict.residual = max(verdict.residual, sampled.residual or 0.0)
    return verdict


def is_triple_hom(T, tol=None, executor=None):
    """
    Decide whether T preserves the triple product

    Every basis triple is checked with the middle slot taken both as u_j
    and as i u_j, which spans the real-linear middle variable.

    Returns:
        Verdict, witness the (x, y, z) with the largest residual, or just x
        when the triple is (x, x, x)
    """
    tol = matcore.resolve(tol)
    basis = T.domain.basis()
    items = []
    for p, x in enumerate(basis):
        for q, y in enumerate(basis):
            for r, z in enumerate(basis[p:], p):
                items.append(((x, y, z), x if p == q == r else (x, y, z)))
                items.append(((x, 1j * y, z), (x, 1j * y, z)))
    scale = _scale(T, 3)

    def sweep(rng, index):
        (x, y, z), witness = items[index]
        value = linearmap.triple_residual(T, x, y, z)
        return tol.is_small(value, scale), value, witness

    return _run(executor, TRIPLE_HOM, sweep, len(items), 0, report.DECISIVE)


def _probe_then(space, probes, sampler):
    def draw(rng, index):
        if index < len(probes):
            return probes[index]
        return sampler(space, rng)
    return draw


def preserves_extreme_points(T, trials=None, seed=None, tol=None,
                             executor=None):
    """
    Check T(e) is extreme for sampled extreme points e of the domain

    The canonical extreme point of the domain is tried first.
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    draw = _probe_then(T.domain, gen.probe_elements(T.domain)[:1],
                       gen.random_extreme)

    def check(rng, index):
        e = draw(rng, index)
        image = T(e)
        decision = regular.is_extreme_point(image, tol)
        return decision.value, regular.bergmann_defect(image, image), e

    return _run(executor, EXTREME_PRESERVER, check, trials, seed,
                report.SAMPLED)


def preserves_bp(T, trials=None, seed=None, tol=None, executor=None):
    """
    Check T(x) is BP quasi-invertible for sampled BP quasi-invertible x
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    draw = _probe_then(T.domain, gen.probe_elements(T.domain),
                       gen.random_bp_element)

    def check(rng, index):
        x = draw(rng, index)
        image = T(x)
        decision = regular.is_bp_quasi_invertible(image, tol)
        defect = regular.bergmann_defect(
            image, regular.generalized_inverse(image, tol))
        return decision.value, defect, x

    return _run(executor, BP_PRESERVER, check, trials, seed, report.SAMPLED)


def _inverse_check(T, x, tol):
    """
    Relative residual of T(x^) against T(x)^
    """
    image = T(x)
    target = regular.generalized_inverse(image, tol)
    value = matcore.distance(T(regular.generalized_inverse(x, tol)), target)
    return value / max(1.0, target.norm()), image


def strongly_preserves_bp(T, trials=None, seed=None, tol=None,
                          executor=None):
    """
    Check T(x^) = T(x)^ and T(x) quasi-invertible for sampled BP x

    The canonical extreme point and the staircase element are tried first.

    Returns:
        Verdict, witness the first failing x
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    draw = _probe_then(T.domain, gen.probe_elements(T.domain),
                       gen.random_bp_element)

    def check(rng, index):
        x = draw(rng, index)
        value, image = _inverse_check(T, x, tol)
        member = regular.is_bp_quasi_invertible(image, tol).value
        scale = x.norm() * regular.generalized_inverse(x, tol).norm()
        return member and tol.is_small(value, scale), value, x

    return _run(executor, STRONG_BP, check, trials, seed, report.SAMPLED)


def strongly_preserves_regularity(T, trials=None, seed=None, tol=None,
                                  executor=None):
    """
    Check T(x^) = T(x)^ for sampled x of every rank
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    draw = _probe_then(T.domain, gen.probe_elements(T.domain),
                       gen.random_regular_element)

    def check(rng, index):
        x = draw(rng, index)
        value, _ = _inverse_check(T, x, tol)
        scale = x.norm() * regular.generalized_inverse(x, tol).norm()
        return tol.is_small(value, scale), value, x

    return _run(executor, STRONG_REGULARITY, check, trials, seed,
                report.SAMPLED)


def preserves_bergmann_zero(T, trials=None, seed=None, tol=None,
                            executor=None):
    """
    Check B(T(x), T(y)) = 0 on sampled Bergmann-zero pairs

    Pairs alternate between (e, e) for extreme e and (x, x^) for BP
    quasi-invertible x; the canonical extreme and the staircase come first.

    Returns:
        Verdict, witness the first failing pair
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    canonical, stairs = gen.probe_elements(T.domain)

    def draw(rng, index):
        if index == 0:
            return canonical, canonical
        if index == 1:
            return stairs, regular.generalized_inverse(stairs, tol)
        if index % 2 == 0:
            e = gen.random_extreme(T.domain, rng)
            return e, e
        x = gen.random_bp_element(T.domain, rng)
        return x, regular.generalized_inverse(x, tol)

    def check(rng, index):
        x, y = draw(rng, index)
        tx, ty = T(x), T(y)
        value = triple.bergmann(tx, ty).norm()
        scale = max(1.0, tx.norm() * ty.norm()) ** 2
        return tol.is_small(value, scale), value, (x, y)

    return _run(executor, BERGMANN_ZERO, check, trials, seed, report.SAMPLED)


def cubes_preserved(T, trials=None, seed=None, tol=None, executor=None):
    """
    Check T(x^[3]) = T(x)^[3] on sampled BP quasi-invertible x
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    draw = _probe_then(T.domain, gen.probe_elements(T.domain),
                       gen.random_bp_element)

    def check(rng, index):
        x = draw(rng, index)
        image = T(x)
        value = matcore.distance(T(triple.triple_product(x, x, x)),
                                 triple.triple_product(image, image, image))
        scale = max(1.0, image.norm()) ** 3
        return tol.is_small(value, scale), value, x

    return _run(executor, CUBES, check, trials, seed, report.SAMPLED)


def preserves_orthogonality(T, trials=None, seed=None, tol=None,
                            executor=None):
    """
    Check sampled orthogonal pairs map to orthogonal pairs
    """
    trials, seed, tol = _defaults(trials, seed, tol)

    def check(rng, index):
        a, b = gen.random_orthogonal_pair(T.domain, rng)
        ta, tb = T(a), T(b)
        value = 0.0
        for x, y in zip(ta.data, tb.data):
            value = max(value, np.linalg.norm(x @ y.conj().T, 2),
                        np.linalg.norm(y.conj().T @ x, 2))
        return regular.are_orthogonal(ta, tb, tol), value, (a, b)

    return _run(executor, ORTHOGONALITY, check, trials, seed, report.SAMPLED)


def _blockwise(*factors):
    """
    Product of per-block matrices; factors are Elements or lists of arrays
    """
    blocks = [f.data if isinstance(f, matcore.Element) else f for f in factors]
    result = []
    for parts in zip(*blocks):
        m = parts[0]
        for p in parts[1:]:
            m = m @ p
        result.append(m)
    return result


def _adj(x):
    return [m.conj().T for m in x.data]


def _identity_residuals(T, v, a):
    """
    Residuals of the three unitary identities at a self-adjoint a
    """
    ta = T(a)
    ta2 = T(triple.jordan_mul(a, a))
    vh = _adj(v)
    linear = [x - (y + z - w) for x, y, z, w in zip(
        ta.data, _blockwise(ta, vh, v), _blockwise(v, vh, ta),
        _blockwise(v, _adj(ta), v))]
    quadratic = [x - (t1 + t2 - 2 * t3 - 2 * t4 + 2 * t5 + t6)
                 for x, t1, t2, t3, t4, t5, t6 in zip(
                     ta2.data,
                     _blockwise(ta2, vh, v),
                     _blockwise(v, vh, ta2),
                     _blockwise(ta, _adj(ta), v),
                     _blockwise(v, _adj(ta), ta),
                     _blockwise(ta, vh, ta),
                     _blockwise(v, _adj(ta2), v))]
    corner = [x - y for x, y in zip(
        _blockwise(vh, ta, vh), _blockwise(vh, v, _adj(ta), v, vh))]

    def size(blocks):
        return max(np.linalg.norm(m, 2) for m in blocks)

    return size(linear), size(quadratic), size(corner)


def check_unitary_identities(T, tol=None):
    """
    Evaluate the identities every extreme-point preserver satisfies

    With v = T(1) a tripotent and a self-adjoint:
        linear:    T(a) = T(a)v*v + vv*T(a) - vT(a)*v
        quadratic: T(a^2) = T(a^2)v*v + vv*T(a^2) - 2T(a)T(a)*v
                   - 2vT(a)*T(a) + 2T(a)v*T(a) + vT(a^2)*v
        corner:    v*T(a)v* = v*v T(a)* vv*
    The linear and corner identities are checked on the Hermitian basis,
    the quadratic one also on sums of pairs of basis elements.

    Returns:
        Verdict with per-identity worst residuals in `parts`
    """
    tol = matcore.resolve(tol)
    if not T.domain.is_unital_cstar:
        return _inapplicable(UNITARY_IDENTITIES, report.DECISIVE,
                             'non-square domain')
    v = T(T.domain.identity())
    try:
        triple.Tripotent(v, tol)
    except errors.NotTripotentError as e:
        return _inapplicable(UNITARY_IDENTITIES, report.DECISIVE,
                             'T(1) is not a tripotent: {0}'.format(e))
    basis = T.domain.hermitian_basis()
    items = list(basis)
    for p in range(len(basis)):
        for q in range(p + 1, len(basis)):
            items.append(basis[p] + basis[q])
    scale = _scale(T, 3)
    worst = {'linear': 0.0, 'quadratic': 0.0, 'corner': 0.0}
    failing = None
    for index, a in enumerate(items):
        linear, quadratic, corner = _identity_residuals(T, v, a)
        if index >= len(basis):
            linear = corner = 0.0
        for name, value in (('linear', linear), ('quadratic', quadratic),
                            ('corner', corner)):
            worst[name] = max(worst[name], value)
            if not tol.is_small(value, scale):
                if failing is None or value > failing[0]:
                    failing = (value, a)
    overall = max(worst.values())
    if failing is None:
        return report.Verdict(UNITARY_IDENTITIES, report.PASS,
                              report.DECISIVE, residual=overall, parts=worst)
    return report.Verdict(UNITARY_IDENTITIES, report.FAIL, report.DECISIVE,
                          residual=overall, witness=failing[1], parts=worst)


def _max_over_basis(T, func):
    return max(func(u) for u in T.domain.basis())


def factorize(T, tol=None, executor=None):
    """
    Factor T = v S with v = T(1) and S = v* T

    Every condition is reported on its own; nothing beyond the computed
    residuals is asserted.

    Args:
        T: LinearMap with a square-block domain
        tol: (Optional) Tolerances
        executor: (Optional) TrialExecutor for the Jordan sweeps

    Returns:
        Factorization(v, S, S1, report) where S maps into the cols-square
        space of the codomain and S1 = T v* into the rows-square space

    Raises:
        SpaceMismatchError: If the domain is not square
        NotTripotentError: If T(1) is not a tripotent
    """
    tol = matcore.resolve(tol)
    if not T.domain.is_unital_cstar:
        raise errors.SpaceMismatchError(
            'factorization needs a unital domain, got {0}'.format(T.domain))
    codomain = T.codomain
    v = T(T.domain.identity())
    try:
        e = triple.Tripotent(v, tol)
    except errors.NotTripotentError as err:
        logging.warning('factorization refused: {0}'.format(err))
        raise
    vh = matcore.adjoint(v)
    S = T.left_product(vh, codomain.cols_square())
    S1 = T.right_product(vh, codomain.rows_square())
    vS = S.left_product(v, codomain)
    S1v = S1.right_product(v, codomain)
    left = [m @ m.conj().T for m in v.data]
    right = [m.conj().T @ m for m in v.data]

    def range_t(u):
        tu = T(u)
        return matcore.distance(
            tu, matcore.Element(codomain, _blockwise(left, tu, right)))

    def range_s(u):
        su = S(u)
        return matcore.distance(
            su, matcore.Element(su.space, _blockwise(right, su, right)))

    def left_absorb(u):
        tu = T(u)
        return matcore.distance(
            tu, matcore.Element(codomain, _blockwise(left, tu)))

    def right_absorb(u):
        tu = T(u)
        return matcore.distance(
            tu, matcore.Element(codomain, _blockwise(tu, right)))

    def twist(u):
        return matcore.distance(
            T(matcore.adjoint(u)),
            matcore.Element(codomain, _blockwise(v, _adj(T(u)), v)))

    extreme = regular.is_extreme_point(v, tol).value
    unitary = codomain.is_unital_cstar and all(e.is_unitary)
    self_adjoint = unitary and matcore.distance(
        matcore.Element(codomain, _adj(v)), v) <= tol.zero_tol
    node = {
        'v': matcore.format_element(v),
        'v_extreme': extreme,
        'v_unitary': unitary,
        'v_self_adjoint_unitary': bool(self_adjoint),
        'S_jordan_star_hom': is_jordan_star_hom(
            S, trials=0, tol=tol, executor=executor).to_json(),
        'reconstruction': T.distance(vS),
        'range_T': _max_over_basis(T, range_t),
        'range_S': _max_over_basis(T, range_s),
        'S1_jordan_star_hom': is_jordan_star_hom(
            S1, trials=0, tol=tol, executor=executor).to_json(),
        'reconstruction_S1': T.distance(S1v),
        'left_absorption': _max_over_basis(T, left_absorb),
        'right_absorption': _max_over_basis(T, right_absorb),
        'adjoint_twist': _max_over_basis(T, twist),
    }
    if len(codomain.blocks) == 1:
        r, c = codomain.blocks[0]
        isometry = e.ranks[0] == c
        coisometry = e.ranks[0] == r
        node['isometry'] = isometry
        node['coisometry'] = coisometry
        node['alternative'] = ('a' if isometry else
                               'b' if coisometry else None)
    if self_adjoint:
        symmetric = max(linearmap.star_residual(T, u)
                        for u in T.domain.basis())
        node['symmetric_residual'] = symmetric
        if tol.is_small(symmetric, _scale(T, 1)):
            vT = T.left_product(v, codomain)
            node['symmetric_S_jordan_star_hom'] = is_jordan_star_hom(
                vT, trials=0, tol=tol, executor=executor).to_json()
    logging.debug('factorization of {0}: {1}'.format(T, node))
    return Factorization(v, S, S1, node)


def factorization_verdict(T, tol=None, executor=None):
    """
    Summarize factorize as a Verdict

    Pass when S is a Jordan *-homomorphism and T = vS; inapplicable when
    T(1) is not a tripotent or the domain is not square.

    Returns:
        (Verdict, Factorization or None)
    """
    tol = matcore.resolve(tol)
    try:
        result = factorize(T, tol, executor)
    except (errors.NotTripotentError, errors.SpaceMismatchError) as e:
        return _inapplicable(FACTORIZATION, report.DECISIVE, str(e)), None
    node = result.report
    residual = node['reconstruction']
    ok = (node['S_jordan_star_hom']['outcome'] == report.PASS and
          tol.is_small(residual, _scale(T, 1)))
    verdict = report.Verdict(
        FACTORIZATION, report.PASS if ok else report.FAIL, report.DECISIVE,
        residual=residual,
        witness=None if ok else node['S_jordan_star_hom']['witness'])
    return verdict, result


def classify(T, trials=None, seed=None, tol=None, executor=None):
    """
    Run every predicate on T and collect a classification report

    Alarms are raised in the report when verdicts contradict each other:
    an extreme-point preserver failing the unitary identities, a triple
    homomorphism failing strong regularity, or a strong BP preserver
    failing to preserve cubes.

    Returns:
        Report dictionary (see report.get_empty_report)
    """
    trials, seed, tol = _defaults(trials, seed, tol)
    node = report.get_empty_report(T.name or 'map')
    node['meta'] = {'domain': T.domain.to_json(),
                    'codomain': T.codomain.to_json(),
                    'trials': trials, 'seed': seed,
                    'tolerances': tol.to_json()}
    verdicts = [
        is_jordan_star_hom(T, trials, seed, tol, executor),
        is_triple_hom(T, tol, executor),
        preserves_extreme_points(T, trials, seed, tol, executor),
        preserves_bp(T, trials, seed, tol, executor),
        strongly_preserves_bp(T, trials, seed, tol, executor),
        strongly_preserves_regularity(T, trials, seed, tol, executor),
        preserves_bergmann_zero(T, trials, seed, tol, executor),
        cubes_preserved(T, trials, seed, tol, executor),
        preserves_orthogonality(T, trials, seed, tol, executor),
        check_unitary_identities(T, tol),
    ]
    factor, result = factorization_verdict(T, tol, executor)
    if result is not None:
        node['factorization'] = result.report
    verdicts.append(factor)
    by_name = dict((v.name, v) for v in verdicts)
    for v in verdicts:
        node['verdicts'][v.name] = v.to_json()
    node['alarms'] = alarms(by_name)
    for alarm in node['alarms']:
        logging.error('consistency alarm on {0}: {1}'.format(
            node['id'], alarm))
    return node


def alarms(by_name):
    """
    List contradictions between verdicts, keyed by short name
    """
    found = []

    def outcome(name):
        v = by_name.get(name)
        return v.outcome if v is not None else None

    if (outcome(EXTREME_PRESERVER) == report.PASS and
       outcome(UNITARY_IDENTITIES) == report.FAIL):
        found.append('extreme-preserver passes but unitary identities fail')
    if (outcome(TRIPLE_HOM) == report.PASS and
       outcome(STRONG_REGULARITY) == report.FAIL):
        found.append('triple homomorphism fails strong regularity')
    if (outcome(STRONG_BP) == report.PASS and
       outcome(CUBES) == report.FAIL):
        found.append('strong BP preserver fails to preserve cubes')
    return found
