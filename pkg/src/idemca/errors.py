"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the domain of an operation (CLI exit code 2)."""


class DomainMismatchError(DomainError):
    pass


class OutOfWindowError(DomainError):
    pass


class IdentityRuleError(DomainError):
    """Raised when a pattern rule would write p(e) and so be the identity."""


class NotIdempotentError(DomainError):
    pass


class UnsupportedCarrierError(DomainError):
    pass


class SizeCapError(RuntimeError):
    """A dense table would exceed the configured size cap (CLI exit code 3)."""


class ConvergenceError(RuntimeError):
    pass


class TheoremDisagreement(AssertionError):
    """A theorem shortcut disagreed with the composition check."""
