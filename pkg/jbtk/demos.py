import fractions
import logging

import numpy as np

import jbtk.gen as gen
import jbtk.maps as maps
import jbtk.matcore as matcore
import jbtk.regular as regular


SAMPLES = 50


def _fraction(z, max_denominator=1000):
    """
    Render a real scalar as an exact fraction when one is close enough
    """
    z = complex(z)
    if abs(z.imag) > 1e-12:
        return matcore.format_scalar(z)
    exact = fractions.Fraction(z.real).limit_denominator(max_denominator)
    if abs(float(exact) - z.real) > 1e-12:
        return matcore.format_scalar(z)
    return str(exact)


def _combination(y, named):
    """
    Coefficients of y on the top-left entries of the named isometries
    """
    terms = []
    for label, basis in sorted(named.items()):
        i, j = np.argwhere(np.abs(basis.data[0]) > 0.5)[0]
        coefficient = y.data[0][i, j] / basis.data[0][i, j]
        if abs(coefficient) > 1e-12:
            terms.append('{0} {1}'.format(_fraction(coefficient), label))
    text = ' + '.join(terms) or '0'
    return text.replace('+ -', '- ')


def _line(stream, text=''):
    stream.write(text + '\n')


def _certify(stream, label, verdict):
    _line(stream, '{0}: {1}'.format(label, verdict.describe()))


def remark_two_isometries(stream, seed=0, tol=None, executor=None):
    """
    Walk through the two-isometries map, which preserves extreme points and
    Bergmann-zero pairs but not generalized inverses
    """
    tol = matcore.resolve(tol)
    construction = gen.remark_two_isometries()
    T = construction.map
    v, w = construction.named['v'], construction.named['w']
    _line(stream, 'T(l, m) = l/2 (v + w) + m/2 (v - w) from C + C into '
                  '4x2 matrices')
    _line(stream, 'v = {0}'.format(matcore.format_element(v)))
    _line(stream, 'w = {0}'.format(matcore.format_element(w)))
    _line(stream)
    _certify(stream, 'preserves-extreme-points',
             maps.preserves_extreme_points(T, SAMPLES, seed, tol, executor))
    _certify(stream, 'preserves-Bergmann-zero-pairs',
             maps.preserves_bergmann_zero(T, SAMPLES, seed, tol, executor))
    _certify(stream, 'unitary-identities',
             maps.check_unitary_identities(T, tol))
    _line(stream)
    x = matcore.Element(T.domain, [[[2]], [[1]]])
    x_inv = regular.generalized_inverse(x, tol)
    image = T(x)
    named = {'v': v, 'w': w}
    _line(stream, 'x = {0}, x^ = ({1},{2})'.format(
        matcore.format_element(x), _fraction(x_inv.data[0][0, 0]),
        _fraction(x_inv.data[1][0, 0])))
    _line(stream, 'T(x) = {0}'.format(_combination(image, named)))
    _line(stream, 'T(x)^ = {0}'.format(_combination(
        regular.generalized_inverse(image, tol), named)))
    _line(stream, 'T(x^) = {0}'.format(_combination(T(x_inv), named)))
    _line(stream)
    _certify(stream, 'strongly-preserves-BP',
             maps.strongly_preserves_bp(T, SAMPLES, seed, tol, executor))
    _certify(stream, 'triple-homomorphism',
             maps.is_triple_hom(T, tol, executor))
    S = maps.factorize(T, tol, executor).S
    _certify(stream, 'v*T is a Jordan *-homomorphism',
             maps.is_jordan_star_hom(S, SAMPLES, seed, tol, executor))
    logging.info('two-isometries walkthrough done')


def remark_nonunitary(stream, seed=0, tol=None, executor=None):
    """
    Walk through lambda -> lambda v with v an isometry that is not unitary
    """
    tol = matcore.resolve(tol)
    construction = gen.remark_nonunitary()
    T = construction.map
    v = construction.named['v']
    m = v.data[0]
    _line(stream, 'T(l) = l v from C into 3x2 matrices')
    _line(stream, 'v = {0}'.format(matcore.format_element(v)))
    vhv = m.conj().T @ m
    vvh = m @ m.conj().T
    _line(stream, 'v*v = {0} = I2'.format(matcore.format_element(
        matcore.Element(matcore.TripleSpace([(2, 2)]), [vhv]))))
    _line(stream, 'vv* = {0} != I3'.format(matcore.format_element(
        matcore.Element(matcore.TripleSpace([(3, 3)]), [vvh]))))
    _line(stream)
    _certify(stream, 'preserves-extreme-points',
             maps.preserves_extreme_points(T, SAMPLES, seed, tol, executor))
    node = maps.factorize(T, tol, executor).report
    _line(stream, 'T(1) extreme: {0}'.format(node['v_extreme']))
    _line(stream, 'T(1) unitary: {0}'.format(node['v_unitary']))
    _line(stream, 'T(1) isometry: {0}, coisometry: {1}'.format(
        node['isometry'], node['coisometry']))
    image = T(matcore.Element(T.domain, [[[1j]]]))
    sigma = np.linalg.svd(image.data[0], compute_uv=False)
    _line(stream, 'T(i) = {0}, singular values {1}'.format(
        matcore.format_element(image),
        ', '.join(matcore.format_scalar(s) for s in sigma)))
    logging.info('nonunitary walkthrough done')


DEMOS = {
    'remark-nonunitary': remark_nonunitary,
    'remark-two-isometries': remark_two_isometries,
}

DEMO_ALIASES = {
    'remark-5-8': 'remark-nonunitary',
    'remark-5-9': 'remark-two-isometries',
}


def run_demo(name, stream, seed=0, tol=None, executor=None):
    """
    Print a walkthrough

    Args:
        name: A key of DEMOS or DEMO_ALIASES

    Raises:
        KeyError: If no demo has this name
    """
    DEMOS[DEMO_ALIASES.get(name, name)](stream, seed, tol, executor)
