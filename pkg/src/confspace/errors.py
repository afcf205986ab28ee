"""Exception hierarchy shared by the library and the command line front end."""


class ConfspaceError(Exception):
    """Base class for all errors raised by this package."""


class ManifoldError(ConfspaceError):
    """Malformed or inconsistent manifold description.

    ``violations`` lists every problem found, each naming the offending field.
    """

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [message])


class OddDimensionError(ConfspaceError):
    """An even-dimensional operation was asked to handle odd ``d``."""


class HypothesisError(ConfspaceError):
    """The manifold does not satisfy the hypotheses of the requested check."""


class InsufficientWindowError(ConfspaceError):
    """A Betti table does not cover the range a verifier needs."""


class WindowTooLargeError(ConfspaceError):
    """A basis slice exceeded the configured size cap."""
