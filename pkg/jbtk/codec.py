import json
import logging
import traceback

import numpy as np

import jbtk.errors as errors
import jbtk.gen as gen
import jbtk.linearmap as linearmap
import jbtk.matcore as matcore


def _complex_list(values, what):
    """
    Decode a list of [re, im] pairs
    """
    try:
        pairs = np.asarray(values, dtype=float)
    except (TypeError, ValueError):
        raise errors.InputError('{0} must be a list of [re, im] pairs'.format(
            what))
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise errors.InputError(
            '{0} must be a list of [re, im] pairs, got shape {1}'.format(
                what, pairs.shape))
    return pairs[:, 0] + 1j * pairs[:, 1]


def _pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.ravel(values)]


def space_from_json(node):
    """
    Decode {"blocks": [[rows, cols], ...]}

    Raises:
        InputError: On a malformed node
    """
    try:
        blocks = node['blocks']
        return matcore.TripleSpace([(r, c) for r, c in blocks])
    except (KeyError, TypeError, ValueError) as e:
        raise errors.InputError('bad triple space {0!r} ({1})'.format(node, e))
    except errors.SpaceMismatchError as e:
        raise errors.InputError(str(e))


def element_from_json(node, space=None):
    """
    Decode {"space": ..., "blocks": [[[re, im], ...], ...]}, entries row-major

    Args:
        node: Parsed JSON object
        space: (Optional) Space to use when the node carries none
    """
    if space is None:
        space = space_from_json(node.get('space'))
    blocks = node.get('blocks')
    if not isinstance(blocks, list) or len(blocks) != len(space.blocks):
        raise errors.InputError(
            'element needs {0} blocks'.format(len(space.blocks)))
    data = []
    for k, (values, (r, c)) in enumerate(zip(blocks, space.blocks)):
        entries = _complex_list(values, 'block {0}'.format(k))
        if entries.size != r * c:
            raise errors.InputError(
                'block {0} has {1} entries, expected {2}'.format(
                    k, entries.size, r * c))
        data.append(entries.reshape(r, c))
    return matcore.Element(space, data)


def element_to_json(x):
    return {'space': x.space.to_json(),
            'blocks': [_pairs(m) for m in x.data]}


def map_from_json(node):
    """
    Decode a map, or build one from a generator spec carrying "kind"

    Map nodes look like {"domain": ..., "codomain": ..., "matrix": [...]}
    with the dim(codomain) x dim(domain) matrix given row-major as
    [re, im] pairs.

    Raises:
        InputError: On schema or dimension errors
    """
    if not isinstance(node, dict):
        raise errors.InputError('a map must be a JSON object')
    if 'kind' in node:
        return gen.from_spec(node)
    for field in ('domain', 'codomain', 'matrix'):
        if field not in node:
            raise errors.InputError('map is missing "{0}"'.format(field))
    domain = space_from_json(node['domain'])
    codomain = space_from_json(node['codomain'])
    entries = _complex_list(node['matrix'], 'matrix')
    if entries.size != domain.dim * codomain.dim:
        raise errors.InputError(
            'matrix has {0} entries, expected {1} x {2}'.format(
                entries.size, codomain.dim, domain.dim))
    return linearmap.LinearMap(
        domain, codomain, entries.reshape(codomain.dim, domain.dim),
        name=node.get('name'))


def map_to_json(T):
    node = {'domain': T.domain.to_json(), 'codomain': T.codomain.to_json(),
            'matrix': _pairs(T.matrix)}
    if T.name:
        node['name'] = T.name
    return node


def loads(text):
    """
    Parse JSON text

    Raises:
        InputError: With the line and column of a syntax error
    """
    try:
        return json.loads(text)
    except ValueError as e:
        line = getattr(e, 'lineno', None)
        column = getattr(e, 'colno', None)
        raise errors.InputError(
            'malformed JSON: {0}'.format(getattr(e, 'msg', e)),
            line=line, column=column)


def load_map(path):
    """
    Read a map file

    Args:
        path: Path to a map JSON file or generator spec

    Returns:
        LinearMap, named after the file when the JSON carries no name
    """
    try:
        with open(path) as f:
            text = f.read()
    except (IOError, OSError) as e:
        logging.error('cannot read {0}: {1}'.format(path, e))
        raise errors.InputError('cannot read {0}: {1}'.format(path, e))
    T = map_from_json(loads(text))
    if T.name is None:
        T = linearmap.LinearMap(T.domain, T.codomain, T.matrix, name=path)
    logging.info('loaded {0}'.format(T))
    return T


def dumps(node):
    return json.dumps(node, indent=2, sort_keys=True)


def dump_report(node, path=None, stream=None):
    """
    Write a report as sorted, indented JSON

    Args:
        node: Report dictionary
        path: (Optional) File to write
        stream: (Optional) Stream to write when no path is given

    Returns:
        True if successful, False otherwise
    """
    text = dumps(node)
    if path is None:
        stream.write(text + '\n')
        return True
    try:
        with open(path, 'w') as f:
            f.write(text + '\n')
        logging.info('wrote report to {0}'.format(path))
        return True
    except (IOError, OSError):
        logging.error(path)
        logging.error(traceback.format_exc())
    return False
