"""Exception types shared across the engine."""


class ClimaError(Exception):
    """Base class for engine errors; carries a machine-readable code."""

    code = "error"


class DomainError(ClimaError, ValueError):
    """Input outside the validity domain of a physical model."""

    code = "domain_error"


class UnknownColumn(ClimaError, KeyError):
    code = "unknown_column"

    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return self.args[0] if self.args else "unknown column"


class IncompatibleRequest(ClimaError, ValueError):
    code = "incompatible_request"


class BadRange(ClimaError, ValueError):
    code = "bad_range"


class UnsupportedCadence(ClimaError, ValueError):
    code = "unsupported_cadence"


class UpstreamUnavailable(ClimaError):
    code = "upstream_unavailable"


class UpstreamCorrupt(ClimaError):
    code = "upstream_corrupt"
