"""Exception types shared across the package."""


class AmbiprobError(Exception):
    """Base class for all library errors."""


class EmptySupport(AmbiprobError):
    """Conditioning on an event no family satisfies (infinite rejection loop)."""


class ZeroStatementMass(AmbiprobError):
    """The conditioned statement is never emitted; the posterior is undefined."""


class UnsupportedConfig(AmbiprobError):
    """A scenario constructor was given a world it does not model (e.g. n != 2)."""


class DayOutOfRange(AmbiprobError):
    """A day literal >= week_length."""


class InvalidProbability(AmbiprobError):
    """A probability parameter outside [0, 1]."""


class DegenerateProtocol(AmbiprobError):
    """Monte Carlo redraw cap exceeded without a statement match."""


class DslError(AmbiprobError):
    """Base class for protocol-language diagnostics."""

    def __init__(self, message, span=None):
        self.span = span
        if span is not None:
            message = f"{span.line}:{span.column}: {message}"
        super().__init__(message)


class DslSyntaxError(DslError):
    """Tokenizer or parser failure, with source position."""


class UnboundVariable(DslError):
    """A child variable used before any `pick` bound it."""


class EmptyPick(DslError):
    """A `pick` whose filter matches no child in some reachable family."""

    def __init__(self, message, families=(), span=None):
        self.families = tuple(families)
        super().__init__(message, span)
