"""Exception types shared across the toolkit."""


class QuantcastError(Exception):
    """Base class for all toolkit-specific errors."""


class FitError(QuantcastError):
    """An estimation routine failed to converge from every start point."""


class NoModelError(FitError):
    """Every candidate in a model grid failed to fit."""


class WalkForwardAborted(QuantcastError):
    """A walk-forward run could not complete; carries the records produced so far."""

    def __init__(self, message, records):
        super().__init__(message)
        self.records = list(records)


class DataError(QuantcastError):
    """Ingested data is malformed or violates an integrity constraint."""
