"""
State families with closed-form values for golden checks.

Recipes have a one-line text form, "family:params", where a parameter is a
float or rN meaning 1/sqrt(N):

    gsd3:0.5,0.5,r6,r6,r6     λ0|000> + λ1 e^{iφ}|100> + λ2|101> + λ3|110>
                              + λ4|111>, optional sixth parameter φ
    w3                        (|100> + |010> + |001>)/sqrt(3)
    w4_weighted:a,b,c,d       a|1000> + b|0100> + c|0010> + d|0001>
    ghz:n,d                   Σ_k |k...k>/sqrt(d), defaults n=3, d=2
    haar:2,2,3                Haar random state of the given dimensions
    product:2,3               |0...0> of the given dimensions
    file:path.json            state file {"dims": [...], "amps": [[re, im]]}

Presets: "gsd3" alone is the worked example (1/2, 1/2, r6, r6, r6), "w4b"
and "w4c" the weighted W states with the heavy amplitude 1/sqrt(2) on B
and on C, "ghz3" the three-qubit GHZ state.
"""
import json
import math

import numpy as np

from .exceptions import ArgumentError
from .linalg import PureState, haar_random_pure, label
from .policy import get_policy


FAMILIES = ('gsd3', 'w3', 'w4_weighted', 'ghz', 'haar', 'product', 'file',)
R2, R3, R6 = 1 / math.sqrt(2), 1 / math.sqrt(3), 1 / math.sqrt(6)
PRESETS = {
    'gsd3': ('gsd3', (0.5, 0.5, R6, R6, R6)),
    'w4b': ('w4_weighted', (R6, R2, R6, R6)),
    'w4c': ('w4_weighted', (R6, R6, R2, R6)),
    'ghz3': ('ghz', (3, 2)),
}


class StateRecipe(object):
    def __init__(self, family, params=(), seed=None, path=None):
        if family not in FAMILIES:
            raise ArgumentError('Unknown state family "%s", choose from %s.'
                                % (family, ', '.join(FAMILIES),))
        self.family = family
        self.params = tuple(params)
        self.seed = seed
        self.path = path

    def __repr__(self):
        return 'StateRecipe(%s)' % self.text

    @property
    def text(self):
        if self.family == 'file':
            return 'file:%s' % self.path
        return ('%s:%s' % (self.family, ','.join('%.12g' % i
                                                  for i in self.params))
                if self.params else self.family)


def _number(token):
    token = token.strip()
    try:
        if token[:1] in 'rR':
            return 1 / math.sqrt(float(token[1:]))
        return float(token)
    except ValueError:
        raise ArgumentError('Bad recipe parameter "%s".' % token)


def parse_recipe(text, seed=None):
    text = text.strip()
    if text in PRESETS:
        family, params = PRESETS[text]
        return StateRecipe(family, params, seed)

    family, _, params = text.partition(':')
    if family == 'file' or (not params and text.endswith('.json')):
        return StateRecipe('file', path=params or text)
    params = [_number(i) for i in params.split(',')] if params else []
    return StateRecipe(family, params, seed)


def _check_norm(values, name):
    total = sum(i * i for i in values)
    if abs(total - 1) > 1e-10:
        raise ArgumentError('%s amplitudes should satisfy Σ x² = 1, got'
                            ' %.12g.' % (name, total,))


def _int_params(recipe, defaults):
    values = list(recipe.params) or list(defaults)
    if any(i != int(i) or i < 1 for i in values):
        raise ArgumentError('%s expects positive integers, got %s.'
                            % (recipe.family, values,))
    return [int(i) for i in values]


def build(recipe, policy=None):
    family, params = recipe.family, list(recipe.params)

    if family == 'gsd3':
        if len(params) not in (5, 6) or min(params[:5]) < 0:
            raise ArgumentError('gsd3 expects five nonnegative λ and an'
                                ' optional phase.')
        _check_norm(params[:5], 'gsd3')
        phase = params[5] if len(params) == 6 else 0.0
        amps = np.zeros(8, dtype=complex)
        amps[[0, 4, 5, 6, 7]] = params[:5]
        amps[4] *= np.exp(1j * phase)
        return PureState(amps, (2, 2, 2), policy)

    elif family == 'w3':
        amps = np.zeros(8)
        amps[[4, 2, 1]] = R3
        return PureState(amps, (2, 2, 2), policy)

    elif family == 'w4_weighted':
        if len(params) != 4:
            raise ArgumentError('w4_weighted expects four amplitudes.')
        _check_norm(params, 'w4_weighted')
        amps = np.zeros(16)
        amps[[8, 4, 2, 1]] = params
        return PureState(amps, (2, 2, 2, 2), policy)

    elif family == 'ghz':
        n, d = (_int_params(recipe, (3, 2)) + [2])[:2]
        amps = np.zeros(d ** n)
        amps[[sum(k * d ** i for i in range(n)) for k in range(d)]] = (
            1 / math.sqrt(d))
        return PureState(amps, (d,) * n, policy)

    elif family == 'haar':
        dims = _int_params(recipe, (2, 2, 2))
        return haar_random_pure(dims, 0 if recipe.seed is None
                                else recipe.seed, policy)

    elif family == 'product':
        dims = _int_params(recipe, (2, 2))
        amps = np.zeros(int(np.prod(dims)))
        amps[0] = 1
        return PureState(amps, dims, policy)

    return load_state_file(recipe.path, policy)


def expected_values(recipe):
    """
    Closed-form values keyed by (measure, cut), measure ids as in
    measures.measure; empty for families without closed forms.
    """
    p = list(recipe.params)

    if recipe.family == 'gsd3':
        l0, l1, l2, l3, l4 = p[:5]
        return {
            ('concurrence', 'A|BC'): 2 * l0 * math.sqrt(l2**2 + l3**2 + l4**2),
            ('tau_a', 'A|BC'): 2 * l0 * (l2 + l3 + l4),
            # λ3 sits on |110>, so the B pair carries λ3 and λ4
            ('ca', 'A|B'): 2 * l0 * math.sqrt(l3**2 + l4**2),
            ('ca', 'A|C'): 2 * l0 * math.sqrt(l2**2 + l4**2),
        }
    elif recipe.family == 'w3':
        return {
            ('concurrence', 'A|BC'): 2 * math.sqrt(2) / 3,
            ('entropy', 'A|BC'): math.log2(3) - 2 / 3,
            ('ea', 'A|BC'): math.log2(3) - 2 / 3,
            ('ca', 'A|B'): 2 / 3,
            ('ca', 'A|C'): 2 / 3,
            ('ea', 'A|B'): 2 / 3,
            ('ea', 'A|C'): 2 / 3,
        }
    elif recipe.family == 'w4_weighted':
        a, b, c, d = p
        return {
            ('concurrence', 'A|BCD'): 2 * a * math.sqrt(1 - a**2),
            ('ca', 'A|B'): 2 * a * b,
            ('ca', 'A|C'): 2 * a * c,
            ('ca', 'A|D'): 2 * a * d,
        }
    elif recipe.family == 'ghz':
        n, d = (_int_params(recipe, (3, 2)) + [2])[:2]
        rest = ''.join(label(i) for i in range(1, n))
        values = {
            ('concurrence', 'A|%s' % rest): math.sqrt(2 * (d - 1) / d),
            ('entropy', 'A|%s' % rest): math.log2(d),
        }
        if d == 2 and n == 3:
            values.update({
                ('concurrence', 'A|B'): 0.0,
                ('concurrence', 'A|C'): 0.0,
                ('ca', 'A|B'): 1.0,
                ('ca', 'A|C'): 1.0,
            })
        return values
    return {}


# State files
# -----------
def load_state_file(path, policy=None):
    policy = get_policy(policy)
    with open(path, encoding='utf-8') as f:
        try:
            data = json.load(f)
        except ValueError as e:
            raise ArgumentError('State file "%s" is not valid JSON: %s.'
                                % (path, e,))

    try:
        dims = [int(i) for i in data['dims']]
        amps = np.array([complex(re, im) for re, im in data['amps']])
    except (KeyError, TypeError, ValueError):
        raise ArgumentError('State file "%s" should hold {"dims": [...],'
                            ' "amps": [[re, im], ...]}.' % path)

    norm = np.linalg.norm(amps)
    if abs(norm - 1) > policy.state_file:
        raise ArgumentError('State file "%s" amplitudes have norm %.12g.'
                            % (path, norm,))
    return PureState(amps / norm, dims, policy)


def dump_state_file(psi, path):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump({'dims': list(psi.dims),
                   'amps': [[float(i.real), float(i.imag)]
                            for i in psi.amps]}, f, indent=1)
