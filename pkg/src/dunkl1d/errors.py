"""Exception taxonomy shared by the library and the CLI exit-code mapping."""


class DunklError(Exception):
    """Base class for all library errors."""


class DomainError(DunklError, ValueError):
    """Mathematical argument outside the operation's domain."""


class ConfigurationError(DunklError, ValueError):
    """Invalid grid, suite, or operator configuration."""


class ContractError(DunklError, ValueError):
    """Objects that must belong together do not (grids, parameters, shapes)."""


class DataError(DunklError, ValueError):
    """Malformed or non-finite input data (CSV ingestion, NaN samples)."""


class UsageError(DunklError, ValueError):
    """Unknown suite or otherwise unusable request."""


class DegenerateInputError(DunklError, ValueError):
    """Input that makes the requested quantity meaningless (e.g. all-zero denominators)."""


class NumericsWarning(UserWarning):
    """Result quality is limited by grid extent or window truncation.

    Values stay usable, but sit near their resolution floor.  Verification
    suites silence this category while evaluating cases; the suite ratios
    carry the quantitative signal there.
    """
