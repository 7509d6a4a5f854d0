"""Exception types shared across the package."""


class RotfactError(Exception):
    """Base class for all errors raised by rotfact."""

    code = "error"


class InvalidInputError(RotfactError, ValueError):
    """Input violates a precondition (non-finite value, bad norm, bad matrix)."""

    code = "invalid_input"


class ContractError(RotfactError, TypeError):
    """An operation was called with an argument of the wrong kind."""

    code = "contract_error"


class DomainError(RotfactError, ValueError):
    """Input is well formed but has no representation in the target space."""

    code = "domain_error"
