"""Exact bounds for (alpha, beta)-maps between Hamming spaces.

Theta-function linear programs over Krawtchouk bases, exact graph searches
on Hamming graphs and their products, explicit map constructions, and the
asymptotic region curves.
"""
__version__ = "0.1.0"

from .errors import CertificateError, DomainError, PreconditionError  # noqa: E402

__all__ = ["CertificateError", "DomainError", "PreconditionError", "__version__"]
