from .exceptions import ArgumentError
from . import settings


class NumericPolicy(object):
    """
    All tolerances in one record. Class attributes are the defaults,
    instances override them by keyword:

        policy = NumericPolicy(slack=1e-9)
        policy.slack, policy.norm  # -> 1e-09, 1e-10
    """
    norm = 1e-10            # |‖amps‖ - 1| of a pure state
    hermitian = 1e-10       # max-abs entrywise |m - m†|
    trace = 1e-10           # |Tr ρ - 1|
    psd = 1e-9              # smallest admitted eigenvalue is -psd
    negative_eig = 1e-6     # psd_sqrt fails below -negative_eig
    clamp = 1e-12           # eigenvalues below are zero before logs/roots
    rank = 1e-10            # eigenvalues above count towards the rank
    isometry = 1e-9         # max-abs |v†v - I|
    dual_form = 1e-9        # purity vs determinant concurrence forms
    reconstruction = 1e-8   # ensemble reconstruction, Frobenius
    slack = 1e-8            # inequality holds when slack >= -slack tol
    condition = 1e-12       # ordering conditions of the tighter theorems
    state_file = 1e-6       # state files renormalized within this

    def __init__(self, **kwargs):
        for key, value in kwargs.items():
            if not key in self.names():
                raise ArgumentError('Unknown tolerance "%s".' % key)
            setattr(self, key, float(value))

    @classmethod
    def names(cls):
        return sorted(k for k, v in vars(NumericPolicy).items()
                      if isinstance(v, float))

    @classmethod
    def default(cls):
        global _default
        if _default is None:
            _default = cls(**settings.TOLERANCES)
        return _default

    def replace(self, **kwargs):
        return type(self)(**dict(self.to_dict(), **kwargs))

    def to_dict(self):
        return dict((i, getattr(self, i)) for i in self.names())


_default = None


def get_policy(policy=None):
    return policy if policy is not None else NumericPolicy.default()
