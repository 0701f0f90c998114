import math

import jbtk.matcore as matcore


PASS = 'pass'
FAIL = 'fail'
INAPPLICABLE = 'inapplicable'

DECISIVE = 'decisive'
SAMPLED = 'sampled'


def get_empty_report(report_id):
    """
    Get an empty classification report with headers filled.

    Args:
        report_id: String that identifies the map or suite

    Returns:
        A dictionary with 'id', 'meta', 'verdicts' and 'alarms'
    """
    return {'id': report_id, 'meta': {}, 'verdicts': {}, 'alarms': []}


def render_witness(witness):
    """
    Make a witness JSON-friendly; Elements are printed, tuples recurse
    """
    if witness is None:
        return None
    if isinstance(witness, matcore.Element):
        return matcore.format_element(witness)
    if isinstance(witness, (tuple, list)):
        return [render_witness(w) for w in witness]
    if isinstance(witness, float):
        return render_residual(witness)
    return witness if isinstance(witness, (int, str, bool)) else str(witness)


def render_residual(value):
    if value is None:
        return None
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return str(value)
    return value


class Verdict(object):
    """
    Outcome of one predicate on one map
    """
    def __init__(self, name, outcome, mode, residual=None, witness=None,
                 trials=None, seed=None, detail=None, parts=None):
        """
        Args:
            name: Predicate name
            outcome: PASS, FAIL or INAPPLICABLE
            mode: DECISIVE or SAMPLED
            residual: (Optional) Worst residual seen
            witness: (Optional) Counterexample input, or the worst input
            trials: (Optional) Number of trials for sampled checks
            seed: (Optional) Seed for sampled checks
            detail: (Optional) Free-form explanation
            parts: (Optional) Residuals of the individual identities checked
        """
        self.name = name
        self.outcome = outcome
        self.mode = mode
        self.residual = residual
        self.witness = witness
        self.trials = trials
        self.seed = seed
        self.detail = detail
        self.parts = parts

    @property
    def passed(self):
        return self.outcome == PASS

    @property
    def failed(self):
        return self.outcome == FAIL

    def to_json(self):
        node = {'outcome': self.outcome, 'mode': self.mode,
                'residual': render_residual(self.residual),
                'witness': render_witness(self.witness)}
        if self.mode == SAMPLED:
            node['trials'] = self.trials
            node['seed'] = self.seed
        if self.detail:
            node['detail'] = self.detail
        if self.parts:
            node['parts'] = dict(
                (k, render_residual(v)) for k, v in self.parts.items())
        return node

    def describe(self):
        """
        One line such as 'FAIL (witness x=(2,1))'
        """
        text = self.outcome.upper()
        if self.failed and self.witness is not None:
            text += ' (witness x={0})'.format(
                _witness_text(render_witness(self.witness)))
        elif self.outcome == INAPPLICABLE and self.detail:
            text += ' ({0})'.format(self.detail)
        return text

    def __repr__(self):
        return 'Verdict({0}: {1})'.format(self.name, self.describe())


def _witness_text(rendered):
    if isinstance(rendered, list):
        return '(' + ', '.join(_witness_text(w) for w in rendered) + ')'
    return str(rendered)


def get_empty_suite_report(suite_id):
    """
    Get an empty verification report with headers filled.

    Args:
        suite_id: Name of the suite

    Returns:
        A dictionary with 'id', 'meta', 'assertions' and 'failures'
    """
    return {'id': suite_id, 'meta': {}, 'assertions': {}, 'failures': []}
