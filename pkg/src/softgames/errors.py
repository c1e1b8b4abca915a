"""Exception hierarchy. Every domain error carries its class name to the CLI."""


class SoftGamesError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class KindMismatch(SoftGamesError):
    pass


class NotLinearlyOrdered(SoftGamesError):
    pass


class NotClassical(SoftGamesError):
    pass


class UnknownVariable(SoftGamesError):
    pass


class UnknownPlayer(SoftGamesError):
    pass


class TooFewVariables(SoftGamesError):
    pass


class NotOrderPreserving(SoftGamesError):
    pass


class CeilingTooSmall(SoftGamesError):
    pass


class VariableMismatch(SoftGamesError):
    pass


class DomainMismatch(SoftGamesError):
    pass


class InvalidConfig(SoftGamesError):
    pass


class InvalidProblem(SoftGamesError):
    """Structural violation: missing table entries, bad scopes, duplicate names."""


class ParseError(Exception):
    """Malformed input file (CLI exit code 2). Deliberately not a SoftGamesError."""
