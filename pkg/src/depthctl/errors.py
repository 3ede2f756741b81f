"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 for bad input, 2 for an unsupported coefficient field, 3 for internal
invariant violations.
"""


class DepthctlError(Exception):
    exit_code = 1


class InputError(DepthctlError):
    exit_code = 1


class InputSyntaxError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnknownVariable(InputError):
    pass


class DuplicateName(InputError):
    pass


class UnknownName(InputError):
    pass


class DivisionByZero(InputError, ZeroDivisionError):
    pass


class MixedFields(InputError):
    pass


class MixedRings(InputError):
    pass


class LengthMismatch(InputError):
    pass


class DegreeOverflow(InputError):
    pass


class ZeroDivisorArgument(InputError):
    pass


class WrongField(InputError):
    pass


class TooManyVariables(InputError):
    pass


class UnitIdeal(InputError):
    pass


class NotAComplex(InputError):
    pass


class NotInSupport(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class ErrNotAnnihilated(InputError):
    pass


class PointNotOnVariety(InputError):
    pass


class NotAnIsomorphismWitness(InputError):
    pass


class UnsupportedFieldForDecomposition(DepthctlError):
    exit_code = 2


class InternalError(DepthctlError):
    exit_code = 3


class ResolutionCapExceeded(InternalError):
    pass


class GeneralPositionFailure(InternalError):
    pass
