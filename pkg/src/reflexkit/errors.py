"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input does not meet an operation's requirements.

    ``code`` is a short machine-readable reason (e.g. ``"not_reflexive"``).
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class TheoremViolation(AssertionError):
    """A computed object contradicts one of the verified statements.

    On correct input this indicates a bug, never a property of the polytope.
    """

    def __init__(self, check: str, witness=None):
        super().__init__(f"{check}: {witness!r}")
        self.check = check
        self.witness = witness
