"""Exception types shared across the package.

Two families: bad input (``ValidationError``) and a broken internal identity
(``IdentityError``). The CLI maps them to exit codes 1 and 2.
"""


class ValidationError(ValueError):
    """Input violates a documented precondition or invariant."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class IdentityError(ArithmeticError):
    """An identity that must hold exactly did not."""


class DivisibilityError(IdentityError):
    """Exact polynomial division left a nonzero remainder."""

    def __init__(self, message, remainder):
        super().__init__(message)
        self.remainder = remainder
