"""Exception hierarchy for the tsnet package.

Every error raised by the library derives from :class:`TsnetError`, so
callers (including the CLI) can catch one type.
"""


class TsnetError(Exception):
    """Base class for all tsnet errors."""


# --- series ingestion ---------------------------------------------------


class MissingColumn(TsnetError):
    """Requested CSV column is absent from the header (or index out of range)."""


class ParseError(TsnetError):
    """A CSV cell in the target column does not parse as a finite real number.

    ``row`` is the 1-based line number in the file (the header is row 1).
    """

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class EmptySeries(TsnetError):
    """No usable observations."""


# --- graph construction -------------------------------------------------


class SeriesTooShort(TsnetError):
    """Fewer than two observations; no graph or fluctuation analysis possible."""


# --- fluctuation analysis -----------------------------------------------


class ScaleOutOfRange(TsnetError):
    """A requested window size violates order+2 <= n <= N/4."""


class DegenerateFit(TsnetError):
    """Too few usable points (or zero abscissa variance) for a regression."""


# --- network statistics --------------------------------------------------


class InsufficientTailPoints(TsnetError):
    """Fewer than three distinct positive-probability degrees in the fit range."""


class ZeroDegreeVariance(TsnetError):
    """Degree-mixing denominator is zero (all edge endpoints have equal degree)."""


class DisconnectedGraph(TsnetError):
    """Graph has unreachable node pairs (defensive; visibility graphs are connected)."""


# --- generators ----------------------------------------------------------


class InvalidParam(TsnetError):
    """Generator spec has an unknown kind or an out-of-range parameter."""


# --- fetching ------------------------------------------------------------


class NetworkError(TsnetError):
    """Remote dataset could not be retrieved."""


class UnrecognizedFormat(TsnetError):
    """Downloaded payload does not match any known dataset layout."""
