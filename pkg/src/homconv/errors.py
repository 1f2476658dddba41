"""Exception hierarchy shared by the exact and numerical backends."""


class HomconvError(Exception):
    """Base class for every error raised by this package."""


class GroupConstructionError(HomconvError):
    pass


class SubgroupError(HomconvError):
    pass


class MeasureError(HomconvError):
    """A rho map fails the axioms needed by the requested construction."""


class DomainError(HomconvError):
    """An operation received a function outside the subspace it is defined on."""


class HypothesisError(HomconvError):
    """An operation needs a G-invariant measure and got something else."""


class NormError(HomconvError):
    pass


class GridError(HomconvError):
    pass


class InvariantError(HomconvError):
    """An identity that must hold by construction was observed to fail."""


class FormatError(HomconvError):
    """Malformed JSON payload or value string."""
