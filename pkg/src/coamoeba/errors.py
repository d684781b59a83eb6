"""Exception types shared across modules."""


class UnsupportedError(ValueError):
    """The request is valid but outside what this package computes."""


class ModeError(UnsupportedError):
    """An exact-only computation was asked of float (non pi-rational) input."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class NotInComplementError(ValueError):
    """A point is not in the complement of the closed lopsided coamoeba."""


class NonGenericError(ValueError):
    """Coefficients sit on a degenerate locus for the requested construction."""


class MultiplicityWarning(UserWarning):
    """A count is reported for ``g_A != 1``, where the order map is not injective."""
