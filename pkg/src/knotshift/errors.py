"""Exception hierarchy.

Two families matter to callers: ``InputError`` (bad arguments, bad files,
exceeded caps) and ``TheoremViolation`` (a computed object contradicts a
structural fact that must hold for knots).  The CLI maps them to exit codes
1 and 2 respectively.
"""


class KnotShiftError(Exception):
    pass


class InputError(KnotShiftError, ValueError):
    pass


class DimensionMismatch(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownKnot(InputError):
    pass


class NotAKnot(InputError):
    """Alexander polynomial fails the ``Delta(1) = +-1`` / palindromy gate."""


class OrderCapExceeded(InputError):
    pass


class SizeCapExceeded(InputError):
    pass


class RepeatedPrime(InputError):
    pass


class NotInvertible(InputError):
    pass


class TheoremViolation(KnotShiftError):
    pass


class HypothesisViolated(TheoremViolation):
    """``ker A`` and ``ker B`` share a nonzero vector."""


class SingularRestriction(TheoremViolation):
    pass


class NonFreeModule(TheoremViolation):
    pass


class PatternViolation(TheoremViolation):
    pass
