"""
Polygamy inequality checks.

Every check compares a global-cut measure M(A|B_0...B_{N-1}) raised to an
exponent with a weighted sum over the pairwise terms M(AB_j):

    th1          τ_a^α ≤ Σ_j (2^{α/2} - 1)^{w(j)} τ_a^α(AB_j),   0 ≤ α ≤ 2
    th2          τ_a^α ≤ Σ_j (2^{α/2} - 1)^j τ_a^α(AB_j)        (ordering)
    th3          E_a^β ≤ Σ_j (2^β - 1)^{w(j)} E_a^β(AB_j),       0 ≤ β ≤ 1
    th4          E_a^β ≤ Σ_j (2^β - 1)^j E_a^β(AB_j)            (ordering)
    eq19         E_a^β ≤ Σ_j β^{w(j)} E_a^β(AB_j)
    eq19_linear  E_a^β ≤ Σ_j β^j E_a^β(AB_j)                    (ordering)
    cor1, cor2   unweighted α and β power sums
    ckw_eq1      C² ≥ Σ_j C²(ρ_AB_j)                            (qubits)
    dual_ca_eq2  C² ≤ Σ_j C_a²(ρ_AB_j)                          (qubits)
    tau_sq_eq4   τ_a² ≤ Σ_j τ_a²(AB_j)
    ea_eq18      E_a ≤ Σ_j E_a(AB_j)

w(j) is the Hamming weight of j. Hamming-weighted bounds bind weights to
the terms sorted in descending order; ordering bounds carry a condition
on the partner order (given order by default).
"""
import json
from collections import namedtuple

import numpy as np
from django.utils.functional import cached_property

from .exceptions import ArgumentError
from .linalg import PureState, PartitionSpec, reduce_to, tensor, label
from .measures import (EXACT, BLOCK_SUM, OPTIMIZER, PURE_CONCURRENCE,
                       LHS_MODES, MeasureResult, tau_a, tau_a_global,
                       concurrence_pure, concurrence_two_qubit, ca_two_qubit,
                       entanglement_pure, entanglement_of_assistance)
from .policy import get_policy
from .roof import OptimizerSettings
from .utils import ReportEncoder


TH1, TH2, TH3, TH4 = 'th1', 'th2', 'th3', 'th4'
EQ19, EQ19_LINEAR = 'eq19', 'eq19_linear'
COR1, COR2 = 'cor1', 'cor2'
CKW_EQ1, DUAL_CA_EQ2 = 'ckw_eq1', 'dual_ca_eq2'
TAU_SQ_EQ4, EA_EQ18 = 'tau_sq_eq4', 'ea_eq18'

BASELINES = (CKW_EQ1, DUAL_CA_EQ2, TAU_SQ_EQ4, EA_EQ18,)
ALIASES = {'eq1': CKW_EQ1, 'eq2': DUAL_CA_EQ2, 'eq4': TAU_SQ_EQ4,
           'eq18': EA_EQ18, 'eq19_prior': EQ19}

HAMMING, LINEAR = 'hamming', 'linear'
UPPER, LOWER = 'upper', 'lower'
GIVEN, SORTED = 'given', 'sorted'
INJECTED = 'injected'

ALPHAS = (0.5, 1.0, 1.5, 2.0)
BETAS = (0.25, 0.5, 0.75, 1.0)

Term = namedtuple('Term', 'label value mode')


# Hamming weight machinery
# ------------------------
def hamming_weight(j):
    if j < 0:
        raise ArgumentError('Hamming weight needs j >= 0, got %s.' % j)
    return bin(int(j)).count('1')


class BinaryIndexVector(object):
    """j = Σ j_i 2^i, bits least significant first."""
    def __init__(self, j, length=None):
        if j < 0:
            raise ArgumentError('Binary index needs j >= 0, got %s.' % j)
        self.j = int(j)
        length = max(length or 0, self.j.bit_length(), 1)
        self.bits = tuple((self.j >> i) & 1 for i in range(length))
        self.weight = sum(self.bits)

    def __repr__(self):
        return 'BinaryIndexVector(%s, %s)' % (self.j, self.bits,)

    def __int__(self):
        return sum(b << i for i, b in enumerate(self.bits))


def weight_coeff(x, j, scheme=HAMMING):
    """(2^x - 1)^{w(j)} or (2^x - 1)^j; coefficient of j = 0 is 1."""
    if not 0 <= x <= 1:
        raise ArgumentError('Weight exponent should lie in [0, 1], got %s.'
                            % x)
    if scheme not in (HAMMING, LINEAR):
        raise ArgumentError('Unknown weight scheme "%s".' % scheme)
    if j == 0:
        return 1.0
    return (2.0 ** x - 1) ** (hamming_weight(j) if scheme == HAMMING else j)


def power(value, exponent, zero=1e-12):
    # measure powers with 0^0 := 0
    return 0.0 if value <= zero else float(value) ** exponent


def lemma1_holds(x, t, tol=1e-12):
    """(1 + t)^x <= 1 + (2^x - 1) t^x on [0, 1]², returns (holds, residual)."""
    if not (0 <= x <= 1 and 0 <= t <= 1):
        raise ArgumentError('Lemma domain is [0, 1]², got (%s, %s).'
                            % (x, t,))
    residual = 1 + (2.0 ** x - 1) * t ** x - (1 + t) ** x
    return residual >= -tol, residual


def lemma1_grid(points=101):
    """
    Residuals on a points x points grid over [0, 1]²: minimum residual and
    the largest deviation from equality on the x = 1 and t = 1 lines.
    """
    x, t = np.meshgrid(np.linspace(0, 1, points), np.linspace(0, 1, points),
                       indexing='ij')
    residual = 1 + (2.0 ** x - 1) * t ** x - (1 + t) ** x
    return {
        'points': points,
        'min_residual': float(residual.min()),
        'x_equality': float(np.abs(residual[-1, :]).max()),
        't_equality': float(np.abs(residual[:, -1]).max()),
    }


# Report
# ------
class PolygamyReport(object):
    fields = ('inequality_id', 'cut', 'exponent', 'lhs', 'terms', 'rhs',
              'slack', 'holds', 'direction', 'permutation',
              'condition_status', 'mode_flags', 'tentative', 'escalated',
              'tolerance',)

    def __init__(self, **kwargs):
        for key in self.fields:
            setattr(self, key, kwargs.get(key))
        self.escalated = bool(self.escalated)

    def __repr__(self):
        return 'PolygamyReport(%s, %s, slack=%.6g, %s)' % (
            self.inequality_id, self.cut, self.slack,
            'holds' if self.holds else 'violated')

    @property
    def status(self):
        # a failed ordering precondition voids the bound
        if self.holds:
            return 'held'
        if self.condition_status is False:
            return 'condition-failed'
        return 'tentative' if self.tentative else 'confirmed'

    def to_dict(self):
        return dict((i, getattr(self, i)) for i in self.fields)

    @classmethod
    def from_dict(cls, data):
        return cls(**dict((i, data.get(i)) for i in cls.fields))

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), cls=ReportEncoder, sort_keys=True,
                          indent=indent, ensure_ascii=False)


def _report(inequality_id, part, exponent, lhs, terms, weights, sort=True,
            direction=UPPER, condition=None, policy=None):
    """
    Weighted report: terms are sorted descending (stable) when `sort`,
    weights[j] then binds to the j-th term, each term value is raised to
    `exponent` with 0^0 = 0. `condition` maps the ordered values to a
    boolean.
    """
    policy = get_policy(policy)
    order = list(range(len(terms)))
    if sort:
        order.sort(key=lambda i: -terms[i].value)
    ordered = [terms[i] for i in order]

    rows = [{'label': t.label, 'value': float(t.value),
             'powered': power(t.value, exponent), 'weight': float(w)}
            for t, w in zip(ordered, weights(len(ordered)))]
    rhs = float(sum(i['weight'] * i['powered'] for i in rows))
    lhs_value = power(lhs.value, exponent)
    slack = rhs - lhs_value if direction == UPPER else lhs_value - rhs
    modes = sorted(set([lhs.mode] + [t.mode for t in terms]))

    return PolygamyReport(
        inequality_id=inequality_id, cut=part.cut, exponent=float(exponent),
        lhs=lhs_value, terms=rows, rhs=rhs, slack=slack,
        holds=bool(slack >= -policy.slack), direction=direction,
        permutation=order,
        condition_status=(None if condition is None else
                          bool(condition([t.value for t in ordered]))),
        mode_flags=modes, tentative=any(t.mode == OPTIMIZER for t in terms),
        escalated=False, tolerance=policy.slack)


def _weights(x, scheme):
    return lambda n: [weight_coeff(x, j, scheme) for j in range(n)]


def _base_weights(base, scheme):
    # β^{w(j)} or β^j, j = 0 coefficient 1
    def weights(n):
        return [1.0 if j == 0 else
                base ** (hamming_weight(j) if scheme == HAMMING else j)
                for j in range(n)]
    return weights


def _unit_weights(n):
    return [1.0] * n


def ordering_condition(squared, tol):
    """v_i >= Σ_{j>i} v_j for every i (on squares when `squared`)."""
    def condition(values):
        values = [v * v for v in values] if squared else list(values)
        return all(values[i] - sum(values[i + 1:]) >= -tol
                   for i in range(len(values) - 1))
    return condition


# Measure inputs
# --------------
class CheckInputs(object):
    """
    Lazily computed global-cut and pairwise measures of one state, shared
    by every check run on it.
    """
    def __init__(self, psi, part=None, lhs_mode=PURE_CONCURRENCE,
                 settings=None, policy=None):
        if lhs_mode not in LHS_MODES:
            raise ArgumentError('Unknown LHS mode "%s", choose from %s.'
                                % (lhs_mode, ', '.join(LHS_MODES),))
        self.psi = psi
        self.part = (part or PartitionSpec.default(psi.nsub)).validate(
            psi.nsub)
        self.lhs_mode = lhs_mode
        self.settings = settings or OptimizerSettings.default()
        self.policy = get_policy(policy)
        # pairs whose optimizer stopped on max_iters
        self.warnings = []

    def escalated(self, factor=4):
        inputs = type(self)(self.psi, self.part, self.lhs_mode,
                            self.settings.escalated(factor), self.policy)
        for name in ('tau_lhs', 'tau_terms', 'concurrence_lhs',
                     'concurrence_terms', 'ca_terms'):
            if name in self.__dict__:
                inputs.__dict__[name] = self.__dict__[name]
        return inputs

    def pairs(self):
        return [(label(self.part.focus) + label(p),
                 reduce_to(self.psi, [self.part.focus, p]))
                for p in self.part.partners]

    def require_cover(self, name):
        if not self.part.covers(self.psi.nsub):
            raise ArgumentError('%s needs partners covering every other'
                                ' subsystem, got %s.' % (name, self.part.cut))

    def require_qubits(self, name):
        if any(self.psi.dims[i] != 2 for i in
               (self.part.focus,) + self.part.partners):
            raise ArgumentError('%s is defined for qubits only, got'
                                ' dimensions %s.' % (name, self.psi.dims,))

    @cached_property
    def tau_lhs(self):
        mode = self.lhs_mode if self.part.covers(self.psi.nsub) else BLOCK_SUM
        return tau_a_global(self.psi, self.part, mode, self.policy)

    @cached_property
    def tau_terms(self):
        return [Term(name, tau_a(rho, self.policy).value, BLOCK_SUM)
                for name, rho in self.pairs()]

    @cached_property
    def concurrence_lhs(self):
        self.require_cover('Concurrence of the global cut')
        return concurrence_pure(self.psi, self.part, self.policy)

    @cached_property
    def concurrence_terms(self):
        return [Term(name, concurrence_two_qubit(rho, self.policy).value,
                     EXACT) for name, rho in self.pairs()]

    @cached_property
    def ca_terms(self):
        return [Term(name, ca_two_qubit(rho, self.policy).value, EXACT)
                for name, rho in self.pairs()]

    @cached_property
    def ea_lhs(self):
        self.require_cover('Entanglement of assistance of the global cut')
        return MeasureResult(entanglement_pure(self.psi, self.part,
                                               self.policy), EXACT)

    @cached_property
    def ea_terms(self):
        terms = []
        for name, rho in self.pairs():
            result = entanglement_of_assistance(rho, self.settings,
                                                policy=self.policy)
            terms.append(Term(name, result.value, result.mode))
            if not result.diagnostics.get('converged', True):
                self.warnings.append(name)
        return terms


def _inputs(psi, part, lhs_mode=PURE_CONCURRENCE, settings=None,
            policy=None, inputs=None):
    return inputs or CheckInputs(psi, part, lhs_mode, settings, policy)


def _injected(inputs, terms):
    # plain numbers in partner order, or Term values
    if terms is None:
        return None
    names = [label(inputs.part.focus) + label(p) for p in inputs.part.partners]
    if len(terms) != len(names):
        raise ArgumentError('Expected %s injected terms, got %s.'
                            % (len(names), len(terms),))
    return [t if isinstance(t, Term) else Term(n, float(t), INJECTED)
            for n, t in zip(names, terms)]


def _check_alpha(alpha):
    if not 0 <= alpha <= 2:
        raise ArgumentError('Exponent α should lie in [0, 2], got %s.'
                            % alpha)


def _check_beta(beta):
    if not 0 <= beta <= 1:
        raise ArgumentError('Exponent β should lie in [0, 1], got %s.'
                            % beta)


def _check_order(order):
    if order not in (GIVEN, SORTED):
        raise ArgumentError('Order should be "given" or "sorted", got "%s".'
                            % order)
    return order == SORTED


# Checks
# ------
def check_theorem1(psi, part=None, alpha=1.0, lhs_mode=PURE_CONCURRENCE,
                   terms=None, policy=None, inputs=None):
    _check_alpha(alpha)
    inputs = _inputs(psi, part, lhs_mode, policy=policy, inputs=inputs)
    return _report(TH1, inputs.part, alpha, inputs.tau_lhs,
                   _injected(inputs, terms) or inputs.tau_terms,
                   _weights(alpha / 2, HAMMING), policy=inputs.policy)


def check_theorem2(psi, part=None, alpha=1.0, lhs_mode=PURE_CONCURRENCE,
                   order=GIVEN, terms=None, policy=None, inputs=None):
    _check_alpha(alpha)
    sort = _check_order(order)
    inputs = _inputs(psi, part, lhs_mode, policy=policy, inputs=inputs)
    return _report(TH2, inputs.part, alpha, inputs.tau_lhs,
                   _injected(inputs, terms) or inputs.tau_terms,
                   _weights(alpha / 2, LINEAR), sort=sort,
                   condition=ordering_condition(True,
                                                inputs.policy.condition),
                   policy=inputs.policy)


def check_theorem3(psi, part=None, beta=0.5, ea_settings=None, terms=None,
                   policy=None, inputs=None):
    _check_beta(beta)
    inputs = _inputs(psi, part, settings=ea_settings, policy=policy,
                     inputs=inputs)
    return _report(TH3, inputs.part, beta, inputs.ea_lhs,
                   _injected(inputs, terms) or inputs.ea_terms,
                   _weights(beta, HAMMING), policy=inputs.policy)


def check_theorem4(psi, part=None, beta=0.5, ea_settings=None, order=GIVEN,
                   terms=None, policy=None, inputs=None):
    _check_beta(beta)
    sort = _check_order(order)
    inputs = _inputs(psi, part, settings=ea_settings, policy=policy,
                     inputs=inputs)
    return _report(TH4, inputs.part, beta, inputs.ea_lhs,
                   _injected(inputs, terms) or inputs.ea_terms,
                   _weights(beta, LINEAR), sort=sort,
                   condition=ordering_condition(True,
                                                inputs.policy.condition),
                   policy=inputs.policy)


def check_eq19_prior(psi, part=None, beta=0.5, ea_settings=None, terms=None,
                     policy=None, inputs=None):
    """Prior EOA bound with coefficients β^{w(j)} on the sorted terms."""
    _check_beta(beta)
    inputs = _inputs(psi, part, settings=ea_settings, policy=policy,
                     inputs=inputs)
    return _report(EQ19, inputs.part, beta, inputs.ea_lhs,
                   _injected(inputs, terms) or inputs.ea_terms,
                   _base_weights(beta, HAMMING), policy=inputs.policy)


def check_eq19_linear(psi, part=None, beta=0.5, ea_settings=None,
                      order=GIVEN, terms=None, policy=None, inputs=None):
    """Prior EOA bound with coefficients β^j under E_a,i >= Σ_{j>i} E_a,j."""
    _check_beta(beta)
    sort = _check_order(order)
    inputs = _inputs(psi, part, settings=ea_settings, policy=policy,
                     inputs=inputs)
    return _report(EQ19_LINEAR, inputs.part, beta, inputs.ea_lhs,
                   _injected(inputs, terms) or inputs.ea_terms,
                   _base_weights(beta, LINEAR), sort=sort,
                   condition=ordering_condition(False,
                                                inputs.policy.condition),
                   policy=inputs.policy)


def check_corollary1(psi, part=None, alpha=1.0, lhs_mode=PURE_CONCURRENCE,
                     terms=None, policy=None, inputs=None):
    _check_alpha(alpha)
    inputs = _inputs(psi, part, lhs_mode, policy=policy, inputs=inputs)
    return _report(COR1, inputs.part, alpha, inputs.tau_lhs,
                   _injected(inputs, terms) or inputs.tau_terms,
                   _unit_weights, policy=inputs.policy)


def check_corollary2(psi, part=None, beta=0.5, ea_settings=None, terms=None,
                     policy=None, inputs=None):
    _check_beta(beta)
    inputs = _inputs(psi, part, settings=ea_settings, policy=policy,
                     inputs=inputs)
    return _report(COR2, inputs.part, beta, inputs.ea_lhs,
                   _injected(inputs, terms) or inputs.ea_terms,
                   _unit_weights, policy=inputs.policy)


def check_baseline(psi, part=None, which=TAU_SQ_EQ4,
                   lhs_mode=PURE_CONCURRENCE, ea_settings=None, terms=None,
                   policy=None, inputs=None):
    which = ALIASES.get(which, which)
    inputs = _inputs(psi, part, lhs_mode, ea_settings, policy, inputs)
    injected = _injected(inputs, terms)

    if which == CKW_EQ1:
        inputs.require_qubits('CKW inequality')
        lhs, pairs, exponent = (inputs.concurrence_lhs,
                                inputs.concurrence_terms, 2)
    elif which == DUAL_CA_EQ2:
        inputs.require_qubits('Dual assistance inequality')
        lhs, pairs, exponent = inputs.concurrence_lhs, inputs.ca_terms, 2
    elif which == TAU_SQ_EQ4:
        lhs, pairs, exponent = inputs.tau_lhs, inputs.tau_terms, 2
    elif which == EA_EQ18:
        lhs, pairs, exponent = inputs.ea_lhs, inputs.ea_terms, 1
    else:
        raise ArgumentError('Unknown baseline "%s", choose from %s.'
                            % (which, ', '.join(BASELINES),))

    return _report(which, inputs.part, exponent, lhs, injected or pairs,
                   _unit_weights, sort=False,
                   direction=LOWER if which == CKW_EQ1 else UPPER,
                   policy=inputs.policy)


# Padding
# -------
def padding_report(psi, part=None, extra_dims=(2,), policy=None):
    """
    Append |0...0> on extra_dims as new partners and recompute the global
    cut in both modes, its entropy and the new pairwise terms.
    """
    policy = get_policy(policy)
    part = (part or PartitionSpec.default(psi.nsub)).validate(psi.nsub)
    extra_dims = [int(i) for i in extra_dims]
    zero = np.zeros(int(np.prod(extra_dims)))
    zero[0] = 1
    padded = tensor(psi, PureState(zero, extra_dims))
    extra = list(range(psi.nsub, padded.nsub))
    wide = PartitionSpec(part.focus, part.partners + tuple(extra),
                         padded.nsub)

    modes = LHS_MODES if part.covers(psi.nsub) else (BLOCK_SUM,)
    before = dict((m, tau_a_global(psi, part, m, policy).value)
                  for m in modes)
    after = dict((m, tau_a_global(padded, wide, m, policy).value)
                 for m in modes)
    new_terms = [tau_a(reduce_to(padded, [part.focus, i]), policy).value
                 for i in extra]
    entropy = (entanglement_pure(psi, part, policy),
               entanglement_pure(padded, wide, policy))
    return {'before': before, 'after': after, 'new_terms': new_terms,
            'entropy': entropy}


def padding_invariance_test(psi, part=None, extra_dims=(2,), tol=1e-9,
                            policy=None):
    report = padding_report(psi, part, extra_dims, policy)
    return (all(abs(report['before'][m] - report['after'][m]) <= tol
                for m in report['before']) and
            abs(report['entropy'][0] - report['entropy'][1]) <= tol and
            all(i <= tol for i in report['new_terms']))


# Sweep
# -----
def sweep_beta(psi, part=None, start=0.0, stop=1.0, steps=11, terms=None,
               ea_settings=None, policy=None, inputs=None):
    """
    Rows of beta, lhs_ea, rhs_th3, rhs_eq19, marginal_th3, marginal_eq19,
    margins measured against the unpowered E_a of the global cut.
    """
    if not 0 <= start < stop <= 1:
        raise ArgumentError('Sweep range should satisfy 0 <= from < to <= 1,'
                            ' got %s..%s.' % (start, stop,))
    if steps < 2:
        raise ArgumentError('Sweep needs at least two steps.')

    inputs = _inputs(psi, part, settings=ea_settings, policy=policy,
                     inputs=inputs)
    terms = _injected(inputs, terms) or inputs.ea_terms
    lhs = inputs.ea_lhs.value

    rows = []
    for beta in np.linspace(start, stop, steps):
        th3 = check_theorem3(psi, beta=beta, terms=terms, inputs=inputs)
        eq19 = check_eq19_prior(psi, beta=beta, terms=terms, inputs=inputs)
        rows.append({
            'beta': float(beta), 'lhs_ea': lhs,
            'rhs_th3': th3.rhs, 'rhs_eq19': eq19.rhs,
            'marginal_th3': th3.rhs - lhs, 'marginal_eq19': eq19.rhs - lhs,
        })
    return rows


# Registry
# --------
CHECKS = {
    TH1: (check_theorem1, 'alpha'),
    TH2: (check_theorem2, 'alpha'),
    TH3: (check_theorem3, 'beta'),
    TH4: (check_theorem4, 'beta'),
    EQ19: (check_eq19_prior, 'beta'),
    EQ19_LINEAR: (check_eq19_linear, 'beta'),
    COR1: (check_corollary1, 'alpha'),
    COR2: (check_corollary2, 'beta'),
    CKW_EQ1: (check_baseline, None),
    DUAL_CA_EQ2: (check_baseline, None),
    TAU_SQ_EQ4: (check_baseline, None),
    EA_EQ18: (check_baseline, None),
}
DEFAULT_EXPONENTS = {'alpha': 1.0, 'beta': 0.5}
DEFAULT_GRIDS = {'alpha': ALPHAS, 'beta': (0.5,)}


def resolve(inequality_id):
    name = ALIASES.get(inequality_id, inequality_id)
    if name not in CHECKS:
        raise ArgumentError('Unknown inequality "%s", choose from %s.'
                            % (inequality_id, ', '.join(sorted(CHECKS)),))
    return name


def run_check(inequality_id, psi, part=None, exponent=None,
              lhs_mode=PURE_CONCURRENCE, settings=None, order=GIVEN,
              terms=None, policy=None, inputs=None, escalate=True):
    """
    Run one check by id (aliases eq1, eq2, eq4, eq18 accepted). A violated
    report resting on optimizer lower bounds is recomputed once with four
    times the restarts.
    """
    name = resolve(inequality_id)
    func, kind = CHECKS[name]
    inputs = _inputs(psi, part, lhs_mode, settings, policy, inputs)

    def run(inputs):
        kwargs = {'terms': terms, 'inputs': inputs}
        if kind is None:
            return func(psi, which=name, **kwargs)
        kwargs[kind] = (DEFAULT_EXPONENTS[kind] if exponent is None
                        else float(exponent))
        if name in (TH2, TH4, EQ19_LINEAR):
            kwargs['order'] = order
        return func(psi, **kwargs)

    report = run(inputs)
    if escalate and report.status == 'tentative':
        report = run(inputs.escalated())
        report.escalated = True
    return report
