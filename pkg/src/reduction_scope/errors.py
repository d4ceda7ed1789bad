"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class ReductionScopeError(Exception):
    exit_code = 4
    kind = "internal"


class ConfigError(ReductionScopeError):
    exit_code = 2
    kind = "config"


class DomainError(ReductionScopeError, ValueError):
    """Input outside an operation's domain (zero polynomial, composite prime, ...)."""

    exit_code = 2
    kind = "domain"


class ModulusError(DomainError):
    kind = "modulus"


class DegenerateInputError(DomainError):
    kind = "degenerate-input"


class InvalidPolygonError(DomainError):
    kind = "invalid-polygon"


class ExcludedPrimeError(ReductionScopeError, ValueError):
    """Prime of bad reduction, ramified prime, or a prime below an operation's floor."""

    exit_code = 3
    kind = "excluded-prime"


class ConsistencyError(ReductionScopeError):
    exit_code = 4
    kind = "consistency"
