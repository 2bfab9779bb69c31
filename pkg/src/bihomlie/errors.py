"""Exception hierarchy.

Every error that carries mathematical information (a failing basis tuple, the
name of a violated hypothesis) keeps it as attributes so callers and the CLI
can report it without parsing messages.
"""


class BihomError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(BihomError, ValueError):
    pass


class ParityError(BihomError, ValueError):
    """A map or tensor entry crosses parity blocks it should respect."""


class SingularMap(BihomError):
    def __init__(self, message="map is singular", which=None):
        super().__init__(message)
        self.which = which


class ZeroParameter(BihomError, ValueError):
    pass


class WitnessError(BihomError):
    """Failure that comes with a basis witness (labels) and optional residual."""

    def __init__(self, message, witness=None, residual=None):
        super().__init__(message)
        self.witness = witness
        self.residual = residual


class NotAHomomorphism(WitnessError):
    pass


class MapsDoNotCommute(WitnessError):
    pass


class SymmetryConditionFails(WitnessError):
    pass


class OddAssociativeFactor(BihomError):
    pass


class NotFixedPoint(BihomError):
    def __init__(self, message, hypothesis):
        super().__init__(message)
        self.hypothesis = hypothesis


class IntertwiningFails(WitnessError):
    def __init__(self, message, equation, witness=None, residual=None):
        super().__init__(message, witness, residual)
        self.equation = equation


class FailedPrecondition(BihomError):
    """A constructor hypothesis failed; ``gate`` names it, ``report`` explains."""

    def __init__(self, gate, report=None, message=None):
        super().__init__(message or f"precondition failed: {gate}")
        self.gate = gate
        self.report = report


class CocycleFails(FailedPrecondition):
    def __init__(self, report, condition):
        super().__init__("verify_cocycle", report,
                         f"cocycle condition {condition} fails")
        self.condition = condition


class NoDualBasis(BihomError):
    pass


class ParityObstruction(BihomError):
    pass


class ReportedMismatch(BihomError):
    def __init__(self, report, message="certification failed"):
        super().__init__(message)
        self.report = report


class ParseError(BihomError):
    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ValidationError(BihomError):
    def __init__(self, field, reason):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class UnknownCommand(BihomError):
    pass
