"""Exception types shared across the package.

``GBCodeError`` is the common base so callers can catch everything from
this package with one clause.  ``LimitExceededError`` marks failures that
stem from a configured search/size limit rather than bad input; the CLI
maps the two groups to different exit codes.
"""


class GBCodeError(Exception):
    """Base class for all errors raised by this package."""


class LimitExceededError(GBCodeError):
    """A computation limit (search weight, enumeration size) was exceeded."""


class NotInvertibleError(GBCodeError):
    """Ring element has no multiplicative inverse (gcd with modulus != 1)."""


class NotADivisorError(GBCodeError):
    """Polynomial does not divide x^n - 1 exactly."""


class ZeroPairError(GBCodeError):
    """Both defining polynomials of a code are zero."""


class NotCoprimeError(GBCodeError):
    """Substitution power shares a factor with the ring length."""


class NotSelfOrthogonalError(GBCodeError):
    """Additive code is not symplectic orthogonal to its reciprocal."""


class DimensionZeroError(GBCodeError):
    """Operation requires a code with at least one logical qubit."""


class InapplicableError(GBCodeError):
    """Requested bound does not apply to this code."""


class TooLargeError(LimitExceededError):
    """Exhaustive enumeration would exceed the configured size cap."""


class PreconditionError(GBCodeError):
    """Arguments violate a documented precondition."""


class BadParameterError(GBCodeError):
    """Family parameter outside the supported range."""


class NotStabilizerPreservingError(GBCodeError):
    """Permutation does not map the stabilizer group to itself."""


class MatchingStructureError(GBCodeError):
    """Check matrix has a column of weight > 2; no matching decoder exists."""


class UnmatchableSyndromeError(GBCodeError):
    """Syndrome has odd parity on a component without a boundary."""


class InsufficientDataError(GBCodeError):
    """Sweep data does not bracket a threshold crossing."""
