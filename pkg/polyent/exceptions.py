class PolyentException(Exception):
    pass


class ArgumentError(PolyentException, ValueError):
    """Invalid argument or broken invariant of a constructed value."""


class NumericError(PolyentException, ArithmeticError):
    """Numerical breakdown: significantly negative spectrum, forms disagree."""


class LockedCampaignException(PolyentException):
    pass
