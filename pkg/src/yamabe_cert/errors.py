"""Exception types raised across the package."""


class CertError(Exception):
    """Base class for precondition failures; the CLI maps these to exit code 2."""


class DomainError(CertError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class UsageError(CertError, ValueError):
    pass


class DegreeConstraintError(CertError, ValueError):
    """The profile degree d violates 0 <= d < (n - 6)/4."""


class DivergentMomentError(CertError, ValueError):
    """The moment integral does not converge (2q >= n - 6)."""


class UnsupportedDomainError(CertError, ValueError):
    pass


class NoRealRootError(CertError, ArithmeticError):
    """The a0-quadratic has a non-positive discriminant."""


class PreconditionError(CertError, RuntimeError):
    pass
