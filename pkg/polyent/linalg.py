"""
Dense complex-matrix kernel shared by every other module.

Subsystem ordering is big-endian: subsystem 0 is the most significant tensor
factor, so ``amps.reshape(dims)[i0, i1, ...]`` is the amplitude of
|i0 i1 ...>. Values are immutable after construction.
"""
import string
from functools import reduce

import numpy as np
from scipy import linalg as spla
from scipy.stats import unitary_group

from .exceptions import ArgumentError, NumericError
from .policy import get_policy


LABELS = string.ascii_uppercase


def _dims(dims):
    dims = tuple(int(i) for i in dims)
    if not dims or any(i < 1 for i in dims):
        raise ArgumentError('Subsystem dimensions should be positive'
                            ' integers, got %s.' % (dims,))
    return dims


def _frozen(array):
    array.flags.writeable = False
    return array


# Domain types
# ------------
class PureState(object):
    def __init__(self, amps, dims, policy=None):
        policy = get_policy(policy)
        amps = np.array(amps, dtype=complex).reshape(-1)
        dims = _dims(dims)

        if int(np.prod(dims)) != amps.size:
            raise ArgumentError('Amplitudes length %s does not match'
                                ' dimensions %s.' % (amps.size, dims,))
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > policy.norm:
            raise ArgumentError('State is not normalized (norm %.12g).'
                                % norm)

        self.amps = _frozen(amps)
        self.dims = dims

    def __repr__(self):
        return 'PureState(dims=%s)' % (self.dims,)

    @property
    def nsub(self):
        return len(self.dims)

    def tensor(self):
        return self.amps.reshape(self.dims)

    def matrix(self, focus=0):
        # amplitude matrix a_{ik}: focus subsystem vs the rest (in order)
        return np.moveaxis(self.tensor(), focus, 0).reshape(
            self.dims[focus], -1)

    def density(self):
        return DensityMatrix(np.outer(self.amps, self.amps.conj()),
                             self.dims)

    def reorder(self, order):
        order = _check_indices(order, self.nsub, complete=True)
        return PureState(np.transpose(self.tensor(), order).reshape(-1),
                         [self.dims[i] for i in order])


class DensityMatrix(object):
    """
    Hermitian PSD matrix with subsystem dimensions. Unit trace unless
    normalized=False, which admits trace <= 1 (projected blocks).
    """
    def __init__(self, mat, dims, normalized=True, policy=None):
        policy = get_policy(policy)
        mat = np.array(mat, dtype=complex)
        dims = _dims(dims)
        size = int(np.prod(dims))

        if mat.shape != (size, size):
            raise ArgumentError('Matrix shape %s does not match dimensions'
                                ' %s.' % (mat.shape, dims,))
        if np.abs(mat - mat.conj().T).max() > policy.hermitian:
            raise ArgumentError('Density matrix is not Hermitian.')

        trace = np.trace(mat).real
        if normalized and abs(trace - 1) > policy.trace:
            raise ArgumentError('Density matrix trace is %.12g.' % trace)
        elif not normalized and trace > 1 + policy.trace:
            raise ArgumentError('Operator trace %.12g exceeds 1.' % trace)

        spectrum = np.linalg.eigvalsh(mat)
        if spectrum.min() < -policy.psd:
            raise ArgumentError('Density matrix has negative eigenvalue'
                                ' %.3g.' % spectrum.min())

        self.mat = _frozen(mat)
        self.dims = dims
        self.normalized = normalized

    def __repr__(self):
        return 'DensityMatrix(dims=%s)' % (self.dims,)

    @property
    def nsub(self):
        return len(self.dims)

    def rank(self, policy=None):
        return int((herm_eig(self.mat)[0] > get_policy(policy).rank).sum())

    def grouped(self, split=1):
        # bipartite view: first `split` subsystems vs the rest
        head = int(np.prod(self.dims[:split]))
        tail = int(np.prod(self.dims[split:]))
        if split < 1 or split >= self.nsub:
            raise ArgumentError('Cannot split %s at %s.' % (self.dims, split))
        return DensityMatrix(self.mat, (head, tail), self.normalized)


class PartitionSpec(object):
    """Focus subsystem A and the ordered partners B_0 ... B_{N-1}."""
    def __init__(self, focus, partners, nsub=None):
        self.focus = int(focus)
        self.partners = tuple(int(i) for i in partners)

        if not self.partners:
            raise ArgumentError('Partition needs at least one partner.')
        if self.focus in self.partners:
            raise ArgumentError('Focus %s is among the partners.'
                                % self.focus)
        if len(set(self.partners)) != len(self.partners):
            raise ArgumentError('Partners are not distinct: %s.'
                                % (self.partners,))
        indices = (self.focus,) + self.partners
        if min(indices) < 0 or (nsub is not None and max(indices) >= nsub):
            raise ArgumentError('Partition %s out of range for %s'
                                ' subsystems.' % (self.cut, nsub,))

    def __repr__(self):
        return 'PartitionSpec(%s)' % self.cut

    @classmethod
    def default(cls, nsub):
        return cls(0, range(1, nsub), nsub)

    @classmethod
    def from_cut(cls, cut, nsub=None):
        # "A|BC" -> focus 0, partners (1, 2)
        try:
            focus, partners = cut.replace(' ', '').split('|')
        except ValueError:
            raise ArgumentError('Cut "%s" should look like "A|BC".' % cut)
        if len(focus) != 1 or not (focus + partners).isalpha():
            raise ArgumentError('Cut "%s" should look like "A|BC".' % cut)
        return cls(LABELS.index(focus.upper()),
                   [LABELS.index(i) for i in partners.upper()], nsub)

    @property
    def cut(self):
        return '%s|%s' % (label(self.focus),
                          ''.join(label(i) for i in self.partners))

    @property
    def labels(self):
        return [label(i) for i in self.partners]

    def covers(self, nsub):
        return len(self.partners) + 1 == nsub

    def validate(self, nsub):
        return type(self)(self.focus, self.partners, nsub)


def label(index):
    return LABELS[index]


def _check_indices(indices, nsub, complete=False):
    indices = [int(i) for i in indices]
    if not indices or len(set(indices)) != len(indices):
        raise ArgumentError('Subsystem indices should be distinct and'
                            ' nonempty: %s.' % (indices,))
    if min(indices) < 0 or max(indices) >= nsub:
        raise ArgumentError('Subsystem indices %s out of range for %s'
                            ' subsystems.' % (indices, nsub,))
    if complete and len(indices) != nsub:
        raise ArgumentError('Order %s should list all %s subsystems.'
                            % (indices, nsub,))
    return indices


# Operations
# ----------
def kron(a, b):
    return np.kron(np.asarray(a), np.asarray(b))


def tensor(*states):
    """Tensor product of PureState or DensityMatrix values, dims concatenate."""
    dims = sum((i.dims for i in states), ())
    if all(isinstance(i, PureState) for i in states):
        return PureState(reduce(kron, [i.amps for i in states]), dims)
    return DensityMatrix(
        reduce(kron, [i.density().mat if isinstance(i, PureState) else i.mat
                      for i in states]), dims)


def partial_trace(rho, keep):
    """Reduced density matrix on `keep`, kept subsystems in original order."""
    if isinstance(rho, PureState):
        return reduce_to(rho, sorted(keep))

    dims, n = list(rho.dims), rho.nsub
    keep = sorted(_check_indices(keep, n))
    trace = [i for i in range(n) if i not in keep]
    perm = keep + trace + [i + n for i in keep] + [i + n for i in trace]
    d_keep = int(np.prod([dims[i] for i in keep]))
    d_trace = int(np.prod([dims[i] for i in trace]))

    mat = rho.mat.reshape(dims + dims).transpose(perm).reshape(
        d_keep, d_trace, d_keep, d_trace)
    return DensityMatrix(np.einsum('aibi->ab', mat),
                         [dims[i] for i in keep], rho.normalized)


def reduce_to(state, order):
    """
    Marginal on the subsystems listed in `order`, arranged in that order
    (e.g. order=(2, 0) gives ρ_CA with C as the first factor).
    """
    order = _check_indices(order, state.nsub)
    if isinstance(state, PureState):
        rest = [i for i in range(state.nsub) if i not in order]
        dims = [state.dims[i] for i in order]
        mat = np.transpose(state.tensor(), order + rest).reshape(
            int(np.prod(dims)), -1)
        return DensityMatrix(mat @ mat.conj().T, dims)

    rho = partial_trace(state, order)
    kept = sorted(order)
    perm = [kept.index(i) for i in order]
    n, dims = len(perm), list(rho.dims)
    mat = rho.mat.reshape(dims + dims).transpose(perm + [i + n for i in perm])
    size = int(np.prod(dims))
    return DensityMatrix(mat.reshape(size, size),
                         [dims[i] for i in perm], rho.normalized)


def herm_eig(m, policy=None):
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ArgumentError('Square matrix expected, got %s.' % (m.shape,))
    if np.abs(m - m.conj().T).max() > get_policy(policy).hermitian:
        raise ArgumentError('Matrix is not Hermitian.')
    values, vectors = spla.eigh((m + m.conj().T) / 2)
    return values[::-1], vectors[:, ::-1]


def psd_sqrt(m, policy=None):
    policy = get_policy(policy)
    values, vectors = herm_eig(m, policy)
    if values.min() < -policy.negative_eig:
        raise NumericError('Matrix is not positive semidefinite (eigenvalue'
                           ' %.3g).' % values.min())
    roots = np.sqrt(np.clip(values, 0, None))
    return (vectors * roots) @ vectors.conj().T


def clamped_spectrum(m, policy=None):
    policy = get_policy(policy)
    values = herm_eig(m, policy)[0]
    return np.where(values < policy.clamp, 0.0, values)


def purify(rho, policy=None):
    """
    Pure state on (system, ancilla) with ancilla dimension rank(ρ) whose
    first-party marginal is ρ (system subsystems grouped as one factor).
    """
    policy = get_policy(policy)
    values, vectors = herm_eig(rho.mat, policy)
    rank = max(int((values > policy.rank).sum()), 1)
    amps = vectors[:, :rank] * np.sqrt(np.clip(values[:rank], 0, None))
    amps = amps.reshape(-1)
    return PureState(amps / np.linalg.norm(amps),
                     (rho.mat.shape[0], rank))


def haar_random_pure(dims, seed, policy=None):
    """
    Haar-distributed pure state. `seed` is an integer or a sequence of
    integers, e.g. (master seed, item index) for campaigns.
    """
    dims = _dims(dims)
    rng = np.random.default_rng(seed)
    size = int(np.prod(dims))
    amps = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return PureState(amps / np.linalg.norm(amps), dims, policy)


def random_isometry(rows, cols, rng):
    """First `cols` columns of a Haar unitary of size `rows`."""
    if rows == 1:
        return np.ones((1, 1), dtype=complex)
    return unitary_group.rvs(rows, random_state=rng)[:, :cols]
