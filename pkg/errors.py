"""Typed errors shared by the library modules and the command line.

Every error carries the process exit code the CLI maps it to.
"""


class MLDegreeError(Exception):
    """Base class for all errors raised by this package"""

    exit_code = 1

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.message = message
        self.diagnostics = diagnostics or {}

    def to_dict(self):
        data = {"type": type(self).__name__, "message": self.message}
        if self.diagnostics:
            data["diagnostics"] = self.diagnostics
        return data


# Input / schema errors (exit 2)

class SchemaError(MLDegreeError):
    exit_code = 2


class InputError(MLDegreeError, ValueError):
    """Programmatic misuse: wrong shapes, out-of-range indices"""

    exit_code = 2


class ZeroPolynomialError(InputError):
    pass


class UndefinedGcdError(InputError):
    pass


class NotHomogeneousError(InputError):
    pass


class NonUnitError(InputError):
    pass


class ExactDivisionError(InputError):
    pass


# Precondition failures (exit 3)

class PreconditionError(MLDegreeError):
    exit_code = 3


class DegreeMismatchError(PreconditionError):
    pass


class CommonFactorError(PreconditionError):
    pass


class NotDominantError(PreconditionError):
    pass


class SharedReducedComponentError(PreconditionError):
    pass


class NonLinearInputError(PreconditionError):
    pass


# Oracle outcomes (exit 4)

class DisagreementError(MLDegreeError):
    exit_code = 4


class VerifyMismatchError(MLDegreeError):
    exit_code = 4


class NotZeroDimensionalError(MLDegreeError):
    exit_code = 4


class NonGenericWeightsError(MLDegreeError):
    exit_code = 4


# Resource caps (exit 5)

class BudgetExceededError(MLDegreeError):
    exit_code = 5


class InternalConsistencyError(MLDegreeError):
    exit_code = 70
