import math

import numpy as np

import jbtk.errors as errors
import jbtk.gen as gen
import jbtk.maps as maps
import jbtk.matcore as matcore
import jbtk.regular as regular
import jbtk.report as report
import jbtk.suite as suite
import jbtk.triple as triple


def _space(*blocks):
    return matcore.TripleSpace(blocks)


M1 = _space((1, 1))
M2 = _space((2, 2))
M3 = _space((3, 3))
M4 = _space((4, 4))
C2 = _space((1, 1), (1, 1))


class IdentitySuite(suite.Suite):
    """
    Algebraic identities of the triple product and the Jordan layer
    """

    NAME = 'identities'
    SPACES = (M4, _space((3, 3), (2, 2)))
    PRESERVER_COUNT = 20
    PRESERVER_CONFIGS = ((M2, _space((4, 2))),
                         (C2, _space((3, 2))),
                         (_space((1, 1), (2, 2)), M3))

    def _instances(self):
        for space in self.SPACES:
            for _ in range(self.trials):
                yield space

    @suite.assertion('Jordan triple identity: L(a,b)L(x,y) - L(x,y)L(a,b) '
                     '= L(L(a,b)x,y) - L(x,L(b,a)y)', 1e-8)
    def assert_jordan_triple_identity(self):
        rng = self.rng('jordan-triple-identity')
        worst, count = 0.0, 0
        for space in self._instances():
            a, b, x, y = [gen.random_element(space, rng=rng) for _ in 'abxy']
            worst = max(worst, triple.jordan_identity_residual(a, b, x, y))
            count += 1
        return {'residual': worst, 'count': count}

    @suite.assertion('operator norm |L(a,a)| = |a|^2, relative', 1e-6)
    def assert_norm_of_l(self):
        rng = self.rng('norm-of-l')
        worst = 0.0
        for space in self._instances():
            a = gen.random_bp_element(space, rng)
            expected = a.norm() ** 2
            worst = max(worst,
                        abs(triple.L_op(a, a).norm() - expected) / expected)
        return {'residual': worst}

    @suite.assertion('polarization: sum of i^k (-1)^j (x + i^k y + (-1)^j z)^[3] '
                     '= 8({x,y,z} + {z,y,x})', 1e-8)
    def assert_polarization(self):
        rng = self.rng('polarization')
        worst = 0.0
        for space in self._instances():
            x, y, z = [gen.random_element(space, rng=rng) for _ in 'xyz']
            worst = max(worst, triple.polarization_residual(x, y, z))
        return {'residual': worst}

    @suite.assertion("Hua's identity (a^-1 - (a - b^-1)^-1)^-1 = a - U_a(b)",
                     1e-8)
    def assert_hua_identity(self):
        rng = self.rng('hua-identity')
        worst, skipped = 0.0, 0
        for space in self._instances():
            a = gen.random_hermitian(space, 1.0, 2.0, rng)
            b = gen.random_hermitian(space, -2.0, -1.0, rng)
            try:
                worst = max(worst, triple.hua_check(a, b, self.tol))
            except errors.InapplicableError:
                skipped += 1
        return {'residual': worst,
                'detail': '{0} inapplicable pairs'.format(skipped)}

    @suite.assertion('B(e,e) = P0(e) for every tripotent e', 1e-8)
    def assert_bergmann_of_tripotent(self):
        rng = self.rng('bergmann-of-tripotent')
        worst = 0.0
        for space in self._instances():
            e = gen.random_tripotent(space, None, rng)
            p0 = triple.peirce_projections(e, self.tol)[2]
            worst = max(worst, triple.bergmann(e, e).distance(p0))
        return {'residual': worst}

    @suite.assertion('B(u,u) = 0 for every unitary u', 1e-8)
    def assert_bergmann_of_unitary(self):
        rng = self.rng('bergmann-of-unitary')
        worst = 0.0
        for space in self._instances():
            u = gen.random_unitary(space, rng)
            worst = max(worst, triple.bergmann(u, u).norm())
        return {'residual': worst}

    @suite.assertion('B(x,y)z = z - 2{x,y,z} + {x,{y,z,y},x} and '
                     'B(a,a)z = (1-aa*)z(1-a*a)', 1e-8)
    def assert_bergmann_paths(self):
        rng = self.rng('bergmann-paths')
        worst = 0.0
        for space in self._instances():
            x, y, z = [gen.random_element(space, rng=rng) for _ in 'xyz']
            direct = triple.bergmann(x, y)(z)
            worst = max(worst,
                        matcore.distance(direct,
                                         triple.bergmann_apply(x, y, z)),
                        matcore.distance(triple.bergmann(x, x)(z),
                                         triple.bergmann_cstar(x, z)))
        return {'residual': worst}

    @suite.assertion('U_a(a^-1) = a for positive definite a', 1e-8)
    def assert_jordan_inverse(self):
        rng = self.rng('jordan-inverse')
        worst = 0.0
        for space in self._instances():
            a = gen.random_hermitian(space, 1.0, 2.0, rng)
            b = triple.jordan_inverse(a, self.tol)
            worst = max(worst, matcore.distance(triple.U_apply(a, b), a))
        return {'residual': worst}

    @suite.assertion('Peirce arithmetic {E_i,E_j,E_k} in E_(i-j+k) and '
                     '{E2,E0,E} = 0', 1e-8)
    def assert_peirce_arithmetic(self):
        rng = self.rng('peirce-arithmetic')
        worst = 0.0
        count = max(1, min(self.trials, 10))
        for space in self.SPACES:
            for _ in range(count):
                e = gen.random_tripotent(space, None, rng)
                samples = [gen.random_element(space, rng=rng) for _ in 'xy']
                worst = max(worst, triple.peirce_arithmetic_residual(
                    e, samples, self.tol))
        return {'residual': worst}

    @suite.assertion('odd powers by calculus equal odd powers by recursion, '
                     'and the cubic root cubes back', 1e-8)
    def assert_odd_calculus(self):
        rng = self.rng('odd-calculus')
        worst = 0.0
        for space in self._instances():
            a = gen.random_element(space, rng=rng)
            y = triple.cubic_root(a, self.tol)
            worst = max(
                worst,
                matcore.distance(triple.odd_power(a, 3, self.tol),
                                 triple.triple_product(a, a, a)),
                matcore.distance(triple.odd_power(a, 5, self.tol),
                                 triple.odd_power_recursive(a, 5)),
                matcore.distance(triple.triple_product(y, y, y), a))
        return {'residual': worst}

    @suite.assertion('the subtriple generated by a has dimension equal to the '
                     'number of distinct nonzero singular values', 0)
    def assert_subtriple_dimension(self):
        rng = self.rng('subtriple-dimension')
        mismatches = 0
        witness = None
        for space in self._instances():
            a = gen.random_element(space, rng=rng)
            spectrum, _ = triple.triple_spectrum(a, self.tol)
            if triple.subtriple_dimension(a, self.tol) != len(spectrum):
                mismatches += 1
                witness = witness or a
        return {'residual': mismatches, 'witness': witness}

    @suite.assertion('extreme-point preservers satisfy the linear, quadratic '
                     'and corner identities in T(1)', 1e-8)
    def assert_unitary_identities(self):
        rng = self.rng('unitary-identities')
        worst = 0.0
        witness = None
        for i in range(self.PRESERVER_COUNT):
            domain, codomain = self.PRESERVER_CONFIGS[
                i % len(self.PRESERVER_CONFIGS)]
            T, _, _ = gen.random_extreme_preserver(domain, codomain, rng)
            verdict = maps.check_unitary_identities(T, self.tol)
            if not verdict.passed:
                witness = witness or '{0} #{1}'.format(T.name, i)
                worst = max(worst, verdict.residual or math.inf)
            else:
                worst = max(worst, verdict.residual)
        return {'residual': worst, 'witness': witness,
                'count': self.PRESERVER_COUNT}


class RegularitySuite(suite.Suite):
    """
    Agreement of the characterizations of regularity, extreme points and
    quasi-invertibility
    """

    NAME = 'regularity'
    SPACES = (M3, _space((2, 2), (2, 2)), _space((4, 2)),
              _space((3, 2), (2, 2)))
    SQUARE_SPACES = (M3, _space((2, 2), (2, 2)))

    def samples(self):
        """
        Elements per space for the agreement checks
        """
        return 5 * self.trials

    def per_space(self):
        """
        Elements per space for the identity checks
        """
        return max(1, self.trials // 5)

    @suite.assertion('extreme points: rank test, B(v,v) = 0 and completeness '
                     'agree', 0)
    def assert_extreme_point_agreement(self):
        rng = self.rng('extreme-point-agreement')
        positives, total = 0, 0
        for space in self.SPACES:
            for i in range(self.samples()):
                if i % 3 == 0:
                    v = gen.random_extreme(space, rng)
                elif i % 3 == 1:
                    v = gen.random_tripotent(space, None, rng)
                else:
                    v = gen.random_element(space, rng=rng)
                    v = v / max(1.0, v.norm())
                positives += regular.is_extreme_point(v, self.tol).value
                total += 1
        return {'residual': 0, 'count': total,
                'detail': '{0} extreme of {1}'.format(positives, total)}

    @suite.assertion('BP quasi-invertibility: extreme range tripotent, '
                     'B(a,a^) = 0 and trivial annihilator agree', 0)
    def assert_bp_agreement(self):
        rng = self.rng('bp-agreement')
        positives, total = 0, 0
        for space in self.SPACES:
            for i in range(self.samples()):
                if i % 3 == 0:
                    a = gen.random_bp_element(space, rng)
                elif i % 3 == 1:
                    a = gen.random_tripotent(space, None, rng)
                else:
                    a = gen.random_element(space, rng=rng)
                positives += regular.is_bp_quasi_invertible(a, self.tol).value
                total += 1
        return {'residual': 0, 'count': total,
                'detail': '{0} quasi-invertible of {1}'.format(
                    positives, total)}

    @suite.assertion('L(a,a^) = L(r(a),r(a)) and Q(a)Q(a^) = P2(r(a))', 1e-9)
    def assert_range_tripotent_identities(self):
        rng = self.rng('range-tripotent-identities')
        worst = 0.0
        for space in self.SPACES:
            for _ in range(self.per_space()):
                a = gen.random_element(space, rng=rng)
                e = regular.range_tripotent(a, self.tol, validate=False)
                if e.is_zero:
                    continue
                worst = max(worst, *regular.range_tripotent_residuals(
                    a, e, self.tol))
        return {'residual': worst}

    @suite.assertion('Q(a)a^ = a and Q(a^)a = a^', 1e-10)
    def assert_generalized_inverse(self):
        rng = self.rng('generalized-inverse')
        worst = 0.0
        for space in self.SPACES:
            for _ in range(self.per_space()):
                a = gen.random_element(space, rng=rng)
                b = regular.generalized_inverse(a, self.tol)
                worst = max(
                    worst,
                    matcore.distance(triple.triple_product(a, b, a), a),
                    matcore.distance(triple.triple_product(b, a, b), b))
        return {'residual': worst}

    @suite.assertion('a is fixed by P2(r(a)) and positive invertible in its '
                     'Peirce-2 algebra', 1e-9)
    def assert_range_fixed_point(self):
        rng = self.rng('range-fixed-point')
        worst = 0.0
        for space in self.SPACES:
            for _ in range(self.per_space()):
                a = gen.random_element(space, rng=rng)
                e = regular.range_tripotent(a, self.tol)
                if e.is_zero:
                    continue
                p2 = triple.peirce_projections(e, self.tol)[0]
                worst = max(worst, matcore.distance(p2(a), a))
                if not regular.is_positive_invertible_in_peirce2(
                        a, e, self.tol):
                    return {'residual': math.inf, 'witness': a}
        return {'residual': worst}

    @suite.assertion('iterated cubic roots a^[1/3^20] approach r(a)', 1e-6)
    def assert_range_tripotent_by_iteration(self):
        rng = self.rng('range-tripotent-by-iteration')
        worst = 0.0
        count = self.per_space() * len(self.SPACES)
        for i in range(count):
            space = self.SPACES[i % len(self.SPACES)]
            a = gen.random_element(space, rng=rng)
            e = regular.range_tripotent(a, self.tol)
            worst = max(worst, matcore.distance(
                regular.range_tripotent_by_iteration(a, 20, self.tol),
                e.element))
        return {'residual': worst, 'count': count}

    @suite.assertion('a orthogonal to b gives (a + t b)^ = a^ + b^/t for '
                     't in 1, -2, 1/2', 1e-9)
    def assert_orthogonal_inverse(self):
        rng = self.rng('orthogonal-inverse')
        worst = 0.0
        for i in range(self.per_space() * len(self.SPACES)):
            space = self.SPACES[i % len(self.SPACES)]
            a, b = gen.random_orthogonal_pair(space, rng)
            if not regular.are_orthogonal(a, b, self.tol):
                return {'residual': math.inf, 'witness': (a, b)}
            a_inv = regular.generalized_inverse(a, self.tol)
            b_inv = regular.generalized_inverse(b, self.tol)
            for t in (1.0, -2.0, 0.5):
                worst = max(worst, matcore.distance(
                    regular.generalized_inverse(a + t * b, self.tol),
                    a_inv + b_inv / t))
        return {'residual': worst}

    @suite.assertion('extreme points are BP quasi-invertible with themselves '
                     'as quasi-inverse', 1e-9)
    def assert_extremes_quasi_invertible(self):
        rng = self.rng('extremes-quasi-invertible')
        worst = 0.0
        for space in self.SPACES:
            for _ in range(self.per_space()):
                e = gen.random_extreme(space, rng)
                if not regular.is_bp_quasi_invertible(e, self.tol).value:
                    return {'residual': math.inf, 'witness': e}
                worst = max(
                    worst,
                    matcore.distance(regular.generalized_inverse(e, self.tol),
                                     e),
                    triple.bergmann(e, e).norm())
        return {'residual': worst}

    @suite.assertion('x is BP quasi-invertible when P2(e)x is invertible in '
                     'the Peirce-2 algebra of a complete tripotent e', 0)
    def assert_peirce2_criterion(self):
        rng = self.rng('peirce2-criterion')
        failures = 0
        witness = None
        for space in self.SPACES:
            for _ in range(self.per_space()):
                e = gen.random_extreme(space, rng)
                data = []
                for m, (r, c) in zip(e.data, space.blocks):
                    n = min(r, c)
                    core = gen.random_bp_element(_space((n, n)), rng).data[0]
                    data.append(m @ core if r >= c else core @ m)
                inner = matcore.Element(space, data)
                p1 = triple.peirce_projections(e, self.tol)[1]
                x = inner + p1(gen.random_element(space, rng=rng))
                if not regular.is_bp_quasi_invertible(x, self.tol).value:
                    failures += 1
                    witness = witness or x
        return {'residual': failures, 'witness': witness}

    @suite.assertion('B(x,y) = 0 gives B(y,x) = 0 and B(x,Q(y)x) = 0', 1e-8)
    def assert_quasi_inverse_family(self):
        rng = self.rng('quasi-inverse-family')
        worst = 0.0
        for space in self.SPACES:
            for _ in range(self.per_space()):
                x = gen.random_bp_element(space, rng)
                y = regular.generalized_inverse(x, self.tol)
                worst = max(worst, triple.bergmann(x, y).norm(),
                            *regular.bergmann_zero_consequences(x, y))
        return {'residual': worst}

    @suite.assertion('in square blocks BP quasi-invertible means every block '
                     'is invertible', 0)
    def assert_square_bp_is_invertible(self):
        rng = self.rng('square-bp-is-invertible')
        mismatches = 0
        witness = None
        for space in self.SQUARE_SPACES:
            for _ in range(self.per_space()):
                a = gen.random_element(space, rng=rng)
                invertible = all(
                    r == n for r, (n, _) in zip(matcore.rank(a, self.tol),
                                                space.blocks))
                if regular.is_bp_quasi_invertible(a, self.tol).value != invertible:
                    mismatches += 1
                    witness = witness or a
        return {'residual': mismatches, 'witness': witness}


class PreserverSuite(suite.Suite):
    """
    Consistency of the preserver predicates with the structure theorems
    """

    NAME = 'preservers'
    TRIPLE_CONFIGS = ((M2, _space((4, 2))),
                      (_space((1, 1), (2, 2)), M3),
                      (_space((2, 1), (1, 1)), _space((3, 2))),
                      (C2, _space((2, 2), (3, 2))))
    EXTREME_CONFIGS = ((M2, _space((4, 2))),
                       (C2, _space((3, 2))),
                       (_space((1, 1), (2, 2)), M3),
                       (M2, _space((2, 2), (4, 2))))
    UNITARY_CONFIGS = ((_space((1, 1), (2, 2)), M3),
                       (M2, _space((2, 2), (2, 2))),
                       (C2, M2))

    MAX_FAMILY = 12
    MAX_LATTICE_FAMILY = 50

    def family_size(self):
        """
        Maps per family for checks that sweep the triple product
        """
        return max(1, min(self.MAX_FAMILY, self.trials // 8))

    def lattice_size(self):
        return max(1, min(self.MAX_LATTICE_FAMILY, self.trials // 2))

    def per_map_trials(self):
        return max(2, min(10, self.trials // 10))

    def _triple_homs(self, label, size=None):
        rng = self.rng(label)
        for i in range(size or self.family_size()):
            domain, codomain = self.TRIPLE_CONFIGS[
                i % len(self.TRIPLE_CONFIGS)]
            yield i, gen.random_triple_hom(domain, codomain, rng)

    def _extreme_preservers(self, label, configs=None, size=None):
        rng = self.rng(label)
        configs = configs or self.EXTREME_CONFIGS
        for i in range(size or self.family_size()):
            domain, codomain = configs[i % len(configs)]
            yield i, gen.random_extreme_preserver(domain, codomain, rng)

    def _verdict(self, predicate, T, index):
        return predicate(T, self.per_map_trials(), self.seed + index,
                         self.tol, self.executor)

    @suite.assertion('triple homomorphisms strongly preserve regularity and '
                     'BP quasi-invertibility and preserve extreme points', 0)
    def assert_triple_homs_strongly_preserve(self):
        failures = 0
        witness = None
        for i, T in self._triple_homs('triple-homs-strongly-preserve'):
            for predicate in (maps.strongly_preserves_regularity,
                              maps.strongly_preserves_bp,
                              maps.preserves_extreme_points):
                verdict = self._verdict(predicate, T, i)
                if not verdict.passed:
                    failures += 1
                    witness = witness or '{0} #{1}: {2}'.format(
                        T.name, i, verdict.name)
        return {'residual': failures, 'witness': witness,
                'count': self.family_size()}

    @suite.assertion('T = vS recovers S = v*T as a Jordan *-homomorphism with '
                     'T(A) in vv*Bv*v', 1e-9)
    def assert_factorization_round_trip(self):
        worst = 0.0
        for i, (T, v, S) in self._extreme_preservers(
                'factorization-round-trip'):
            result = maps.factorize(T, self.tol, self.executor)
            node = result.report
            if node['S_jordan_star_hom']['outcome'] != report.PASS:
                return {'residual': math.inf,
                        'witness': '{0} #{1}'.format(T.name, i)}
            worst = max(worst, node['reconstruction'], node['range_T'],
                        node['range_S'], S.distance(result.S),
                        matcore.distance(result.v, v))
        return {'residual': worst, 'count': self.family_size()}

    @suite.assertion('Bergmann-zero preservers preserve BP quasi-invertibility '
                     'and extreme points; strong BP preservers preserve '
                     'extreme points', 0)
    def assert_implication_lattice(self):
        violations = 0
        witness = None
        size = self.lattice_size()
        families = [T for _, T in self._triple_homs('lattice-triple', size)]
        families += [T for _, (T, _, _) in self._extreme_preservers(
            'lattice-extreme', size=size)]
        families.append(gen.remark_two_isometries().map)
        for i, T in enumerate(families):
            bz = self._verdict(maps.preserves_bergmann_zero, T, i)
            bp = self._verdict(maps.preserves_bp, T, i)
            ext = self._verdict(maps.preserves_extreme_points, T, i)
            sbp = self._verdict(maps.strongly_preserves_bp, T, i)
            broken = ((bz.passed and not (bp.passed and ext.passed)) or
                      (sbp.passed and not ext.passed))
            if broken:
                violations += 1
                witness = witness or '{0} #{1}'.format(T.name, i)
        return {'residual': violations, 'witness': witness,
                'count': len(families)}

    @suite.assertion('maps strongly preserving regularity are triple '
                     'homomorphisms', 0)
    def assert_strong_regularity_gives_triple_hom(self):
        rng = self.rng('strong-regularity-gives-triple-hom')
        family = [T for _, T in self._triple_homs('strong-regularity-triple')]
        family += [gen.perturb(T, 1e-3, rng) for T in family]
        for i in range(self.family_size()):
            domain, codomain = self.TRIPLE_CONFIGS[
                i % len(self.TRIPLE_CONFIGS)]
            family.append(gen.random_map(domain, codomain, rng))
        family.append(gen.remark_two_isometries().map)
        violations = 0
        witness = None
        for i, T in enumerate(family):
            hom = maps.is_triple_hom(T, self.tol, self.executor)
            sreg = self._verdict(maps.strongly_preserves_regularity, T, i)
            if sreg.passed and not hom.passed:
                violations += 1
                witness = witness or '{0} #{1}'.format(T.name, i)
        return {'residual': violations, 'witness': witness,
                'count': len(family)}

    @suite.assertion('strong BP preservers satisfy T(x^[3]) = T(x)^[3]', 0)
    def assert_cubes_preserved(self):
        failures = 0
        witness = None
        family = [T for _, T in self._triple_homs('cubes-triple')]
        family += [T for _, (T, _, _) in self._extreme_preservers(
            'cubes-extreme')]
        for i, T in enumerate(family):
            if not self._verdict(maps.strongly_preserves_bp, T, i).passed:
                continue
            if not self._verdict(maps.cubes_preserved, T, i).passed:
                failures += 1
                witness = witness or '{0} #{1}'.format(T.name, i)
        return {'residual': failures, 'witness': witness}

    @suite.assertion('maps strongly preserving regularity preserve '
                     'orthogonality', 0)
    def assert_orthogonality_preserved(self):
        failures = 0
        witness = None
        for i, T in self._triple_homs('orthogonality-triple'):
            if not self._verdict(maps.strongly_preserves_regularity,
                                 T, i).passed:
                continue
            if not self._verdict(maps.preserves_orthogonality, T, i).passed:
                failures += 1
                witness = witness or '{0} #{1}'.format(T.name, i)
        return {'residual': failures, 'witness': witness}

    @suite.assertion('T = vS with v unitary and S a unital Jordan '
                     '*-homomorphism preserves extreme points', 0)
    def assert_unitary_times_hom_preserves_extremes(self):
        failures = 0
        witness = None
        for i, (T, _, _) in self._extreme_preservers(
                'unitary-times-hom', self.UNITARY_CONFIGS):
            if not self._verdict(maps.preserves_extreme_points, T, i).passed:
                failures += 1
                witness = witness or '{0} #{1}'.format(T.name, i)
        return {'residual': failures, 'witness': witness}


class RemarkSuite(suite.Suite):
    """
    The two maps that preserve extreme points without factoring through a
    unitary or a Jordan homomorphism
    """

    NAME = 'remarks'
    SAMPLES = 50
    QUASI_INVERSE_SAMPLES = 20

    def _two_isometries(self):
        construction = gen.remark_two_isometries()
        return construction.map, construction.named['v'], \
            construction.named['w']

    @suite.assertion('|T(1,0)| = 1/sqrt(2), T(2,1)^ = 3/5 v + 1/5 w and '
                     'T((2,1)^) = 3/4 v - 1/4 w', 1e-12)
    def assert_two_isometries_values(self):
        T, v, w = self._two_isometries()
        x = matcore.Element(C2, [[[2]], [[1]]])
        residuals = [
            abs(T(matcore.Element(C2, [[[1]], [[0]]])).norm() -
                1 / math.sqrt(2)),
            matcore.distance(regular.generalized_inverse(T(x), self.tol),
                             0.6 * v + 0.2 * w),
            matcore.distance(T(regular.generalized_inverse(x, self.tol)),
                             0.75 * v - 0.25 * w),
            matcore.distance(T(regular.generalized_inverse(x, self.tol)),
                             T(matcore.Element(C2, [[[0.5]], [[1]]])))]
        return {'residual': max(residuals)}

    @suite.assertion('T(a^)*T(a) = 1 whenever both coordinates of a are '
                     'nonzero', 1e-12)
    def assert_two_isometries_quasi_inverse(self):
        T, _, _ = self._two_isometries()
        rng = self.rng('two-isometries-quasi-inverse')
        worst = 0.0
        for _ in range(self.QUASI_INVERSE_SAMPLES):
            radius = rng.uniform(0.5, 2.0, size=2)
            phase = np.exp(2j * np.pi * rng.uniform(size=2))
            a = matcore.Element(C2, [[[z]] for z in radius * phase])
            ta = T(a)
            tb = T(regular.generalized_inverse(a, self.tol))
            product = tb.data[0].conj().T @ ta.data[0]
            worst = max(worst, np.linalg.norm(product - np.eye(2), 2))
        return {'residual': worst}

    @suite.assertion('the two-isometries map preserves extreme points and '
                     'Bergmann-zero pairs but not generalized inverses, is '
                     'no triple homomorphism and v*T is no Jordan '
                     'homomorphism', 0)
    def assert_two_isometries_verdicts(self):
        T, _, _ = self._two_isometries()
        expected = {
            maps.EXTREME_PRESERVER: (maps.preserves_extreme_points(
                T, self.SAMPLES, self.seed, self.tol, self.executor),
                report.PASS, None),
            maps.BERGMANN_ZERO: (maps.preserves_bergmann_zero(
                T, self.SAMPLES, self.seed, self.tol, self.executor),
                report.PASS, None),
            maps.STRONG_BP: (maps.strongly_preserves_bp(
                T, self.SAMPLES, self.seed, self.tol, self.executor),
                report.FAIL, '(2,1)'),
            maps.TRIPLE_HOM: (maps.is_triple_hom(T, self.tol, self.executor),
                              report.FAIL, '(1,0)'),
            maps.JORDAN_STAR_HOM: (maps.is_jordan_star_hom(
                maps.factorize(T, self.tol, self.executor).S,
                self.SAMPLES, self.seed, self.tol, self.executor),
                report.FAIL, '(1,-1)'),
        }
        mismatches = []
        for name in sorted(expected):
            verdict, outcome, witness = expected[name]
            rendered = report.render_witness(verdict.witness)
            if verdict.outcome != outcome or (
                    witness is not None and rendered != witness):
                mismatches.append('{0}: {1}'.format(name, verdict.describe()))
        return {'residual': len(mismatches),
                'detail': '; '.join(mismatches) or None}

    @suite.assertion('the two-isometries map satisfies the unitary '
                     'identities in T(1)', 1e-10)
    def assert_two_isometries_identities(self):
        T, _, _ = self._two_isometries()
        verdict = maps.check_unitary_identities(T, self.tol)
        return {'residual': verdict.residual}

    @suite.assertion('lambda -> lambda v preserves extreme points with v '
                     'an isometry that is not unitary', 0)
    def assert_nonunitary(self):
        construction = gen.remark_nonunitary()
        T = construction.map
        problems = []
        verdict = maps.preserves_extreme_points(
            T, self.SAMPLES, self.seed, self.tol, self.executor)
        if not verdict.passed:
            problems.append('extreme-preserver ' + verdict.describe())
        node = maps.factorize(T, self.tol, self.executor).report
        if not node['v_extreme']:
            problems.append('v not extreme')
        if node['v_unitary'] or node.get('alternative') != 'a':
            problems.append('v should be an isometry only')
        image = T(matcore.Element(M1, [[[1j]]]))
        sigma = np.linalg.svd(image.data[0], compute_uv=False)
        if np.max(np.abs(sigma - 1.0)) > 1e-12:
            problems.append('T(i) singular values {0}'.format(sigma))
        return {'residual': len(problems),
                'detail': '; '.join(problems) or None}


SUITES = dict((cls.NAME, cls) for cls in (
    IdentitySuite, RegularitySuite, PreserverSuite, RemarkSuite))


def get_suite(name, trials=None, seed=None, tol=None, executor=None):
    """
    Instantiate a suite by name

    Raises:
        KeyError: If the name is unknown
    """
    return SUITES[name](trials, seed, tol, executor)
