"""Error types shared by every layer.

Each error carries a stable ``code`` string (for example ``NOT_ADMISSIBLE``)
and an optional ``witness`` describing the offending data.  The three
subclasses map onto the CLI exit codes.
"""


class EquiError(Exception):
    exit_code = 2

    def __init__(self, code, message="", witness=None):
        self.code = code
        self.message = message
        self.witness = witness
        text = code if not message else f"{code}: {message}"
        super().__init__(text)


class ValidationError(EquiError):
    """Malformed or inconsistent input data."""

    exit_code = 1


class ComputationError(EquiError):
    """An internal invariant failed during a computation."""

    exit_code = 2


class VerificationError(EquiError):
    """A certification step (biprincipality, isomorphism) failed."""

    exit_code = 3
