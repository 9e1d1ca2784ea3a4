"""Exception hierarchy.

Every error carries a short ``category`` string; the command line prints it so
failures can be parsed by scripts.
"""


class HypCMCError(Exception):
    category = "error"


class DomainError(HypCMCError, ValueError):
    """Argument outside the domain of a function (e.g. a puncture)."""

    category = "domain"


class PreconditionError(HypCMCError, ValueError):
    category = "precondition"


class IntegrationError(HypCMCError, ArithmeticError):
    """Path integration hit a pole or produced non-finite values."""

    category = "integration"


class ToleranceError(HypCMCError, ArithmeticError):
    """An iterative or adaptive method did not reach its tolerance."""

    category = "tolerance"

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DegenerateError(HypCMCError, ArithmeticError):
    category = "degenerate"


class NotRegularEndError(HypCMCError, ValueError):
    category = "not-regular"


class IllDefinedEndError(HypCMCError, ValueError):
    category = "ill-defined-end"

    def __init__(self, message, nearest=None):
        super().__init__(message)
        self.nearest = nearest or {}


class UnknownNameError(HypCMCError, KeyError):
    category = "unknown-name"

    def __str__(self):
        return str(self.args[0]) if self.args else ""
