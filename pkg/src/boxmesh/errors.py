"""Exception types shared across the package."""


class BoxmeshError(Exception):
    """Base class for all package errors."""


class OutOfDomainError(BoxmeshError):
    """A point lies outside the box or domain it was evaluated on."""


class EvaluationError(BoxmeshError):
    """A target function produced a non-finite value."""


class SignatureError(BoxmeshError):
    """Observed second-derivative signs contradict the declared signature."""


class InfeasibleBudgetError(BoxmeshError):
    """A subregion received a zero box budget; the requested N is too small."""


class ConfigurationError(BoxmeshError):
    """Invalid run parameters or malformed geometric input."""


class ExpressionError(BoxmeshError):
    """Expression parsing, validation, or evaluation failure."""
