"""
Entanglement quantities consumed by the inequality checks.

Concurrence-type values use the antisymmetric local generators
L = -|i><j| + |j><i| on every pair of local basis states; the "tilde" of a
block is (L_A ⊗ L_B) ρ* (L_A ⊗ L_B)^T. Entropies are in bits.
"""
from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.special import entr

from .exceptions import ArgumentError, NumericError
from .linalg import (PureState, DensityMatrix, PartitionSpec, reduce_to,
                     psd_sqrt, clamped_spectrum)
from .policy import get_policy
from . import roof


EXACT = 'exact-closed-form'
BLOCK_SUM = 'block-sum'
OPTIMIZER = 'optimizer-lower-bound'
PURE_CONCURRENCE = 'pure-concurrence'

LHS_MODES = (PURE_CONCURRENCE, BLOCK_SUM,)
MEASURES = ('concurrence', 'ca', 'tau_a', 'entropy', 'ea',)


class MeasureResult(object):
    def __init__(self, value, mode, diagnostics=None, cap=None, policy=None):
        policy = get_policy(policy)
        value = float(value)

        if value < 0 or not np.isfinite(value):
            raise NumericError('Measure value %r is not a nonnegative'
                               ' number.' % value)
        if cap is not None and value > cap + policy.dual_form:
            raise NumericError('Measure value %.12g exceeds its maximum'
                               ' %.12g.' % (value, cap,))

        self.value = value
        self.mode = mode
        self.diagnostics = diagnostics or {}

    def __repr__(self):
        return 'MeasureResult(%.9g, %s)' % (self.value, self.mode)

    def __float__(self):
        return self.value

    @property
    def tentative(self):
        return self.mode == OPTIMIZER

    def to_dict(self):
        return {'value': self.value, 'mode': self.mode,
                'diagnostics': self.diagnostics}


def concurrence_cap(d):
    return np.sqrt(2 * (d - 1) / d)


def entropy_cap(d):
    return np.log2(d)


# Local subspace operators
# ------------------------
class SubspacePairOps(object):
    def __init__(self, pair_indices, l_a, l_b):
        self.pair_indices = pair_indices
        self.l_a = l_a
        self.l_b = l_b
        self.operator = np.kron(l_a, l_b)
        for i in (l_a, l_b, self.operator):
            i.flags.writeable = False

    def __repr__(self):
        return 'SubspacePairOps(%s)' % (self.pair_indices,)


def generator(d, i, j):
    """-|i><j| + |j><i| on a d-dimensional space."""
    op = np.zeros((d, d))
    op[i, j], op[j, i] = -1, 1
    return op


@lru_cache(maxsize=None)
def build_subspace_ops(d_a, d_b):
    """All D1*D2 subspace pairs in lexicographic order, D = d(d-1)/2."""
    if d_a < 2 or d_b < 2:
        raise ArgumentError('Subspace operators need local dimensions >= 2,'
                            ' got (%s, %s).' % (d_a, d_b,))
    return tuple(SubspacePairOps((a, b), generator(d_a, *a),
                                 generator(d_b, *b))
                 for a in combinations(range(d_a), 2)
                 for b in combinations(range(d_b), 2))


# Concurrence
# -----------
def _bipartite(rho, name):
    if rho.nsub != 2:
        raise ArgumentError('%s needs a bipartite state, got dimensions %s.'
                            % (name, rho.dims,))
    return rho.dims


def _focus(psi, part):
    part = part or PartitionSpec.default(psi.nsub)
    return part.validate(psi.nsub).focus


def concurrence_pure(psi, part=None, policy=None):
    """
    Concurrence of psi across focus|rest: sqrt(2(1 - Tr ρ_A²)), cross
    checked against 4 Σ_{i<j} Σ_{k<l} |a_ik a_jl - a_il a_jk|².
    """
    policy = get_policy(policy)
    amat = psi.matrix(_focus(psi, part))
    rho_a = amat @ amat.conj().T

    squared = 2 * (1 - (np.abs(rho_a) ** 2).sum())
    # ordered (i, j), (k, l) sums count each 2x2 minor four times
    minors = (np.einsum('ik,jl->ijkl', amat, amat) -
              np.einsum('il,jk->ijkl', amat, amat))
    determinant = (np.abs(minors) ** 2).sum()

    if abs(squared - determinant) > policy.dual_form:
        raise NumericError('Concurrence forms disagree: %.12g != %.12g.'
                           % (squared, determinant,))

    return MeasureResult(
        np.sqrt(max(squared, 0)), EXACT,
        {'purity': float((np.abs(rho_a) ** 2).sum()),
         'squared': float(squared), 'determinant_form': float(determinant)},
        cap=concurrence_cap(min(amat.shape)), policy=policy)


def _tilde_roots(rho, operator, root, policy):
    tilde = operator @ rho.mat.conj() @ operator.T
    values = clamped_spectrum(root @ tilde @ root, policy)
    return np.sqrt(values)


def ca_block(rho, ops, policy=None, root=None):
    """Σ_i sqrt(μ_i), μ_i the eigenvalues of ρ·ρ̃ for one subspace pair."""
    policy = get_policy(policy)
    d_a, d_b = _bipartite(rho, 'ca_block')
    if (d_a, d_b) != (len(ops.l_a), len(ops.l_b)):
        raise ArgumentError('Operators %sx%s do not match state dimensions'
                            ' %s.' % (len(ops.l_a), len(ops.l_b), rho.dims,))

    root = psd_sqrt(rho.mat, policy) if root is None else root
    return float(_tilde_roots(rho, ops.operator, root, policy).sum())


def ca_two_qubit(rho, policy=None):
    """Two-qubit concurrence of assistance, also for unnormalized blocks."""
    if _bipartite(rho, 'ca_two_qubit') != (2, 2):
        raise ArgumentError('Two-qubit state expected, got dimensions %s.'
                            % (rho.dims,))
    value = ca_block(rho, build_subspace_ops(2, 2)[0], policy)
    return MeasureResult(value, EXACT, policy=policy)


def concurrence_two_qubit(rho, policy=None):
    """Mixed two-qubit concurrence max(0, s1 - s2 - s3 - s4)."""
    policy = get_policy(policy)
    if _bipartite(rho, 'concurrence_two_qubit') != (2, 2):
        raise ArgumentError('Two-qubit state expected, got dimensions %s.'
                            % (rho.dims,))

    root = psd_sqrt(rho.mat, policy)
    roots = np.sort(_tilde_roots(rho, build_subspace_ops(2, 2)[0].operator,
                                 root, policy))[::-1]
    return MeasureResult(max(0.0, roots[0] - roots[1:].sum()), EXACT,
                         {'roots': roots.tolist()}, cap=1, policy=policy)


# Block sum
# ---------
def tau_a(rho, policy=None):
    """Sum of ca_block over every local subspace pair of a bipartite rho."""
    policy = get_policy(policy)
    d_a, d_b = _bipartite(rho, 'tau_a')
    root = psd_sqrt(rho.mat, policy)

    blocks = [(i.pair_indices, ca_block(rho, i, policy, root))
              for i in build_subspace_ops(d_a, d_b)]
    return MeasureResult(
        sum(i[1] for i in blocks), BLOCK_SUM,
        {'blocks': [{'pair': i, 'value': v} for i, v in blocks]},
        policy=policy)


def _pure_blocks(amps, d_a, d_b):
    # |<φ|L_A⊗L_B|φ*>| per block, φ a vector on d_a ⊗ d_b
    return [(i.pair_indices, abs(amps.conj() @ i.operator @ amps.conj()))
            for i in build_subspace_ops(d_a, d_b)]


def tau_a_global(psi, part=None, mode=BLOCK_SUM, policy=None):
    """
    τ_a across focus|partners of a pure state. With partners covering
    every other subsystem the cut state is pure: `pure-concurrence` gives
    C(ψ) and `block-sum` the literal sum of block terms. Otherwise the cut
    state is mixed and only `block-sum` is defined.
    """
    policy = get_policy(policy)
    part = (part or PartitionSpec.default(psi.nsub)).validate(psi.nsub)
    if mode not in LHS_MODES:
        raise ArgumentError('Unknown global-cut mode "%s".' % mode)

    if not part.covers(psi.nsub):
        if mode != BLOCK_SUM:
            raise ArgumentError('Cut %s leaves a mixed state, only the'
                                ' block-sum mode applies.' % part.cut)
        return tau_a(reduce_to(psi, (part.focus,) + part.partners)
                     .grouped(1), policy)

    if mode == PURE_CONCURRENCE:
        result = concurrence_pure(psi, part, policy)
        return MeasureResult(result.value, PURE_CONCURRENCE,
                             result.diagnostics, policy=policy)

    ordered = psi.reorder((part.focus,) + part.partners)
    d_a = ordered.dims[0]
    blocks = _pure_blocks(ordered.amps, d_a, ordered.amps.size // d_a)
    return MeasureResult(
        sum(i[1] for i in blocks), BLOCK_SUM,
        {'blocks': [{'pair': i, 'value': float(v)} for i, v in blocks]},
        policy=policy)


# Entropies
# ---------
def von_neumann_entropy(rho, policy=None):
    """-Σ λ log2 λ with 0 log 0 = 0."""
    mat = rho.mat if isinstance(rho, DensityMatrix) else rho
    values = clamped_spectrum(mat, policy)
    return max(float(entr(values).sum() / np.log(2)), 0.0)


def entanglement_pure(psi, part=None, policy=None):
    """Entropy of the focus marginal, also E_a of the pure global state."""
    return von_neumann_entropy(reduce_to(psi, [_focus(psi, part)]), policy)


def entanglement_of_assistance(rho, settings=None, split=1, policy=None):
    """
    E_a of rho across its first `split` subsystems: exact for pure rho,
    otherwise the optimizer lower bound.
    """
    policy = get_policy(policy)
    result = roof.maximize_assistance(rho, roof.OBJECTIVE_ENTROPY, settings,
                                      split, policy)
    cap = entropy_cap(min(int(np.prod(rho.dims[:split])),
                          int(np.prod(rho.dims[split:]))))
    return MeasureResult(
        min(result.value, cap), EXACT if result.exact else OPTIMIZER,
        result.diagnostics(), policy=policy)


def concurrence_of_assistance(rho, settings=None, split=1, policy=None):
    """C_a closed form for two qubits, optimizer lower bound otherwise."""
    if rho.dims == (2, 2) and split == 1:
        return ca_two_qubit(rho, policy)
    result = roof.maximize_assistance(rho, roof.OBJECTIVE_CONCURRENCE,
                                      settings, split, policy)
    return MeasureResult(result.value, EXACT if result.exact else OPTIMIZER,
                         result.diagnostics(), policy=policy)


# Dispatch
# --------
def measure(psi, measure_id, part=None, lhs_mode=PURE_CONCURRENCE,
            settings=None, policy=None):
    """
    One named measure of psi across `part`. When the partners cover every
    other subsystem the cut state is pure, otherwise the measure is taken
    on the reduced state of focus and partners (partners grouped).
    """
    policy = get_policy(policy)
    part = (part or PartitionSpec.default(psi.nsub)).validate(psi.nsub)
    pure = part.covers(psi.nsub)
    reduced = (None if pure else
               reduce_to(psi, (part.focus,) + part.partners).grouped(1))

    if measure_id == 'concurrence':
        if pure:
            return concurrence_pure(psi, part, policy)
        return concurrence_two_qubit(reduced, policy)
    elif measure_id == 'ca':
        if pure:
            return concurrence_pure(psi, part, policy)
        return concurrence_of_assistance(reduced, settings, policy=policy)
    elif measure_id == 'tau_a':
        return tau_a_global(psi, part, lhs_mode if pure else BLOCK_SUM,
                            policy)
    elif measure_id == 'entropy':
        marginal = reduce_to(psi, [part.focus])
        return MeasureResult(von_neumann_entropy(marginal, policy), EXACT,
                             cap=entropy_cap(marginal.dims[0]), policy=policy)
    elif measure_id == 'ea':
        if pure:
            return MeasureResult(entanglement_pure(psi, part, policy), EXACT,
                                 policy=policy)
        return entanglement_of_assistance(reduced, settings, policy=policy)
    raise ArgumentError('Unknown measure "%s", choose from %s.'
                        % (measure_id, ', '.join(MEASURES),))
