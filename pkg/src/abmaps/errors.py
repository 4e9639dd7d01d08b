class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class PreconditionError(ValueError):
    """Input data fails a checkable precondition (infeasible certificate, bad codebook, ...)."""


class CertificateError(AssertionError):
    """An exact certificate failed re-verification. Always indicates a bug."""
