"""Exception types raised by sierpdist."""


class SierpError(Exception):
    """Base class for all library errors."""


class GraphParseError(SierpError, ValueError):
    """Malformed edge-list document."""


class GraphValidationError(SierpError, ValueError):
    """Edge list parsed but describes an invalid simple graph."""


class UnreachableError(SierpError):
    """Two vertices lie in different components."""


class ApplicabilityError(SierpError):
    """No distance formula applies to the given base graph / words."""


class BudgetExceededError(SierpError):
    """An explicit construction or search would exceed its configured budget."""
