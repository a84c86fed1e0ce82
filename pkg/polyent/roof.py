"""
Assistance (concave roof) maximization over pure-state decompositions.

Every decomposition of ρ with at most M members is an isometry V (M×r)
applied to the eigen-ensemble: the unnormalized members are the rows of
W = V·B, B = (√μ_j e_j)_j. The search mixes pairs of rows of W with
two-angle unitaries, coordinate by coordinate, and keeps only improving
moves, so every visited value is attained by an actual decomposition and
the result is a lower bound on the true assistance.
"""
import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import entr

from .exceptions import ArgumentError
from .linalg import PureState, herm_eig, random_isometry
from .policy import get_policy
from .utils import ThreadedRunner
from . import settings as polyent_settings


OBJECTIVE_ENTROPY = 'entropy-of-marginal'
OBJECTIVE_CONCURRENCE = 'concurrence'
OBJECTIVES = (OBJECTIVE_ENTROPY, OBJECTIVE_CONCURRENCE,)

COARSE_THETAS = np.pi * np.array([-3, -2, -1, 1, 2, 3, 4]) / 8
COARSE_PHIS = np.pi * np.arange(4) / 2
LN2 = np.log(2)


class OptimizerSettings(object):
    ensemble_size = None    # None means 2 * rank
    restarts = 16
    max_iters = 200         # full sweeps per restart
    step_tolerance = 1e-7
    seed = 0
    threads = 1

    def __init__(self, **kwargs):
        for key, value in kwargs.items():
            if not key in self.names():
                raise ArgumentError('Unknown optimizer setting "%s".' % key)
            setattr(self, key, value)

        if self.restarts < 1 or self.max_iters < 1:
            raise ArgumentError('Restarts and max_iters should be positive.')
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ArgumentError('Ensemble size should be positive.')

    def __repr__(self):
        return 'OptimizerSettings(%s)' % ', '.join(
            '%s=%r' % i for i in sorted(self.to_dict().items()))

    @classmethod
    def names(cls):
        return ('ensemble_size', 'restarts', 'max_iters', 'step_tolerance',
                'seed', 'threads',)

    @classmethod
    def default(cls, **kwargs):
        options = {'threads': polyent_settings.THREADS}
        options.update(polyent_settings.OPTIMIZER, **kwargs)
        return cls(**options)

    def replace(self, **kwargs):
        return type(self)(**dict(self.to_dict(), **kwargs))

    def escalated(self, factor=4):
        return self.replace(restarts=self.restarts * factor)

    def to_dict(self):
        return dict((i, getattr(self, i)) for i in self.names())


class EnsembleDecomposition(object):
    """Probabilities and normalized members, zero-weight members omitted."""
    def __init__(self, probs, members, policy=None):
        policy = get_policy(policy)
        probs = np.asarray(probs, dtype=float)

        if len(probs) != len(members) or not len(members):
            raise ArgumentError('Ensemble needs one probability per member.')
        if probs.min() < 0 or abs(probs.sum() - 1) > 1e-9:
            raise ArgumentError('Ensemble probabilities should be'
                                ' nonnegative and sum to 1.')
        if len(set(i.dims for i in members)) != 1:
            raise ArgumentError('Ensemble members should share dimensions.')

        self.probs = probs
        self.members = tuple(members)
        self.dims = members[0].dims

    def __len__(self):
        return len(self.members)

    def density(self):
        return sum(p * np.outer(m.amps, m.amps.conj())
                   for p, m in zip(self.probs, self.members))

    def residual(self, rho):
        return np.linalg.norm(self.density() - rho.mat)

    def check(self, rho, policy=None):
        residual = self.residual(rho)
        if residual > get_policy(policy).reconstruction:
            raise ArgumentError('Ensemble does not reconstruct the state'
                                ' (residual %.3g).' % residual)
        return self

    def average(self, objective, split=1):
        rows = np.array([np.sqrt(p) * m.amps
                         for p, m in zip(self.probs, self.members)])
        d_a, d_b = _bipartition(self.dims, split)
        return float(member_values(rows, d_a, d_b, objective).sum())


class AssistanceResult(object):
    def __init__(self, value, best, objective, settings, converged,
                 history, exact=False):
        self.value = value
        self.best = best
        self.objective = objective
        self.settings = settings
        self.converged = converged
        self.history = history
        self.exact = exact

    def __repr__(self):
        return 'AssistanceResult(%.9g, %s%s)' % (
            self.value, self.objective, '' if self.converged else ', warning')

    def diagnostics(self):
        return {
            'objective': self.objective,
            'converged': self.converged,
            'exact': self.exact,
            'ensemble_size': len(self.best),
            'history': list(self.history),
            'settings': self.settings.to_dict(),
        }


# Objective kernels
# -----------------
def _bipartition(dims, split):
    if split < 1 or split >= len(dims):
        raise ArgumentError('Cannot split %s at %s.' % (dims, split))
    return int(np.prod(dims[:split])), int(np.prod(dims[split:]))


def member_values(rows, d_a, d_b, objective):
    """
    p_i * objective(ψ_i) for unnormalized member rows (..., D) with
    p_i = ‖row‖², evaluated without dividing by p_i.
    """
    mats = rows.reshape(rows.shape[:-1] + (d_a, d_b))
    sigma = mats @ np.conj(np.swapaxes(mats, -1, -2))
    probs = (np.abs(rows) ** 2).sum(axis=-1)

    if objective == OBJECTIVE_ENTROPY:
        # p·S(σ/p) = -Σ ν log ν + p log p
        nu = np.clip(np.linalg.eigvalsh(sigma), 0, None)
        return (entr(nu).sum(axis=-1) - entr(probs)) / LN2
    elif objective == OBJECTIVE_CONCURRENCE:
        # p·C(ψ) = sqrt(2(p² - Tr σ²))
        purity = (np.abs(sigma) ** 2).sum(axis=(-1, -2))
        return np.sqrt(np.clip(2 * (probs ** 2 - purity), 0, None))
    raise ArgumentError('Unknown objective "%s".' % objective)


def _mix(wp, wq, theta, phi):
    c, s = np.cos(theta), np.sin(theta) * np.exp(1j * phi)
    return c * wp + s * wq, -np.conj(s) * wp + c * wq


def _eigen_basis(rho, policy):
    values, vectors = herm_eig(rho.mat, policy)
    rank = max(int((values > policy.rank).sum()), 1)
    return vectors[:, :rank] * np.sqrt(np.clip(values[:rank], 0, None)), rank


# Decompositions
# --------------
def _ensemble(rows, dims, policy):
    probs = (np.abs(rows) ** 2).sum(axis=1)
    keep = probs > 1e-15
    members = [PureState(row / np.sqrt(p), dims, policy)
               for row, p in zip(rows[keep], probs[keep])]
    return EnsembleDecomposition(probs[keep] / probs[keep].sum(), members)


def decomposition_from_isometry(rho, v, policy=None):
    """
    Decomposition √p_i|ψ_i> = Σ_j v_ij √μ_j |e_j> of the eigen-ensemble
    {μ_j, |e_j>} of rho; v is M×r with orthonormal columns, r = rank(rho).
    """
    policy = get_policy(policy)
    v = np.asarray(v, dtype=complex)
    basis, rank = _eigen_basis(rho, policy)

    if v.ndim != 2 or v.shape[1] != rank:
        raise ArgumentError('Isometry should have %s columns (rank), got'
                            ' shape %s.' % (rank, v.shape,))
    if np.abs(v.conj().T @ v - np.eye(rank)).max() > policy.isometry:
        raise ArgumentError('Matrix columns are not orthonormal.')

    return _ensemble(v @ basis.T, rho.dims, policy).check(rho, policy)


# Optimizer
# ---------
class _Search(object):
    """One restart: coordinate-wise pair rotations of the member rows."""
    def __init__(self, rows, d_a, d_b, objective, settings):
        self.rows = rows.copy()
        self.d_a, self.d_b = d_a, d_b
        self.objective = objective
        self.settings = settings
        self.values = member_values(self.rows, d_a, d_b, objective)

    def pair_value(self, wp, wq, theta, phi):
        pair = np.stack(_mix(wp, wq, theta, phi), axis=-2)
        return member_values(pair, self.d_a, self.d_b,
                             self.objective).sum(axis=-1)

    def refine(self, wp, wq, theta, phi, what):
        if what == 'theta':
            bounds = (theta - np.pi / 8, theta + np.pi / 8)
            func = lambda x: -self.pair_value(wp, wq, x, phi)
        else:
            bounds = (phi - np.pi / 4, phi + np.pi / 4)
            func = lambda x: -self.pair_value(wp, wq, theta, x)
        found = minimize_scalar(func, bounds=bounds, method='bounded',
                                options={'xatol': 1e-8})
        return found.x, -found.fun

    def improve_pair(self, p, q):
        wp, wq = self.rows[p], self.rows[q]
        current = self.values[p] + self.values[q]

        thetas, phis = np.meshgrid(COARSE_THETAS, COARSE_PHIS, indexing='ij')
        thetas, phis = thetas.reshape(-1), phis.reshape(-1)
        c = np.cos(thetas)[:, None]
        s = (np.sin(thetas) * np.exp(1j * phis))[:, None]
        pair = np.stack([c * wp + s * wq, -np.conj(s) * wp + c * wq], axis=1)
        scan = member_values(pair, self.d_a, self.d_b,
                             self.objective).sum(axis=-1)

        best = int(np.argmax(scan))
        if scan[best] > current:
            starts = [(thetas[best], phis[best])]
        else:
            starts = [(0.0, 0.0), (0.0, np.pi / 2)]

        choice, value = None, current
        for theta, phi in starts:
            theta, found = self.refine(wp, wq, theta, phi, 'theta')
            phi, found = self.refine(wp, wq, theta, phi, 'phi')
            if found > value:
                choice, value = (theta, phi), found
        if scan[best] > value:
            choice, value = (thetas[best], phis[best]), scan[best]

        if choice is None:
            return 0.0
        self.rows[p], self.rows[q] = _mix(wp, wq, *choice)
        self.values[[p, q]] = member_values(self.rows[[p, q]], self.d_a,
                                            self.d_b, self.objective)
        return value - current

    def run(self):
        pairs = [(p, q) for p in range(len(self.rows))
                 for q in range(p + 1, len(self.rows))]
        converged = False
        for sweep in range(self.settings.max_iters):
            gain = sum(self.improve_pair(p, q) for p, q in pairs)
            if gain < self.settings.step_tolerance:
                converged = True
                break
        return float(self.values.sum()), self.rows, converged


def _restart(basis, size, index, d_a, d_b, objective, settings):
    rng = np.random.default_rng([int(settings.seed), index])
    rank = basis.shape[1]
    v = (np.eye(size, rank, dtype=complex) if index == 0 else
         random_isometry(size, rank, rng))
    return _Search(v @ basis.T, d_a, d_b, objective, settings).run()


def maximize_assistance(rho, objective=OBJECTIVE_ENTROPY, settings=None,
                        split=1, policy=None):
    """
    Best average objective over decompositions of rho, treated as a
    bipartite state (first `split` subsystems vs the rest). Deterministic
    given settings.seed; restart k draws its own stream from (seed, k).
    """
    policy = get_policy(policy)
    settings = settings or OptimizerSettings.default()
    d_a, d_b = _bipartition(rho.dims, split)
    basis, rank = _eigen_basis(rho, policy)

    if objective not in OBJECTIVES:
        raise ArgumentError('Unknown objective "%s".' % objective)

    if rank == 1:
        best = _ensemble(basis.T, rho.dims, policy)
        value = float(member_values(basis.T, d_a, d_b, objective).sum())
        return AssistanceResult(value, best, objective, settings, True,
                                [value], exact=True)

    size = settings.ensemble_size or 2 * rank
    if size < rank:
        raise ArgumentError('Ensemble size %s is below rank %s.'
                            % (size, rank,))

    runner = ThreadedRunner(threads=settings.threads)
    for index in range(settings.restarts):
        runner.add(_restart, basis, size, index, d_a, d_b, objective,
                   settings)

    value, rows, converged, history = -np.inf, None, False, []
    for task in runner.run():
        if task.error:
            raise task.error
        if task.result[0] > value:
            value, rows, converged = task.result
        history.append(value)

    best = _ensemble(rows, rho.dims, policy)
    return AssistanceResult(value, best, objective, settings, converged,
                            history)


def grid_oracle(rho, objective=OBJECTIVE_CONCURRENCE, resolution=60,
                split=1, policy=None):
    """
    Exhaustive grid over two-member decompositions of a rank <= 2 state,
    rows (cos θ, e^{iφ} sin θ) and (sin θ, -e^{iφ} cos θ) of the mixing
    unitary with θ in [0, π/2] and φ in [0, 2π).
    """
    policy = get_policy(policy)
    d_a, d_b = _bipartition(rho.dims, split)
    basis, rank = _eigen_basis(rho, policy)

    if rank > 2:
        raise ArgumentError('Grid oracle needs rank <= 2, got %s.' % rank)
    if rank == 1:
        return float(member_values(basis.T, d_a, d_b, objective).sum())

    thetas = np.linspace(0, np.pi / 2, resolution + 1)
    phis = np.linspace(0, 2 * np.pi, resolution, endpoint=False)
    thetas, phis = [i.reshape(-1, 1) for i in
                    np.meshgrid(thetas, phis, indexing='ij')]
    c, s, e = np.cos(thetas), np.sin(thetas), np.exp(1j * phis)
    first = c * basis[:, 0] + e * s * basis[:, 1]
    second = s * basis[:, 0] - e * c * basis[:, 1]

    values = member_values(np.stack([first, second], axis=1), d_a, d_b,
                           objective).sum(axis=-1)
    return float(values.max())
