"""
Exceptions raised by hopfkit.

Each exception carries the process exit code the CLI reports for it.
Mathematical "false" answers are never exceptions; they are values.
"""


class HopfkitError(Exception):
    """Base class for all hopfkit failures."""

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InputError(HopfkitError):
    """Malformed input: bad file, bad shape, unknown name, cap exceeded."""

    exit_code = 2


class DimensionMismatch(InputError):
    """Matrix shapes do not fit the requested operation."""


class FieldMismatch(InputError):
    """Operands live over different fields."""


class InconsistencyError(HopfkitError):
    """Two checks that must agree did not. Always an implementation bug."""

    exit_code = 3
