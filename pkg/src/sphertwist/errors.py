"""Exception types. Each carries the CLI exit code it maps to."""


class SphertwistError(Exception):
    exit_code = 1


class UsageError(SphertwistError):
    exit_code = 2


class SchemaError(UsageError):
    """Malformed JSON input."""


class InvalidParameter(UsageError):
    pass


class InvariantViolation(SphertwistError):
    """A structural identity (d^2 = 0, eps^2 = 0, ...) fails; ``degree`` locates it."""

    exit_code = 3

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message if degree is None else f"{message} (degree {degree})")
        self.degree = degree


class MaurerCartanViolation(InvariantViolation):
    pass


class NotClosed(InvariantViolation):
    pass


class WrongDegree(UsageError):
    pass


class AlgebraMismatch(UsageError):
    pass


class SideMismatch(UsageError):
    pass


class ZeroLambda(InvalidParameter):
    pass


class ZeroPower(InvalidParameter):
    pass


class LoopEdge(SchemaError):
    pass


class NoStrictRepresentative(SphertwistError):
    exit_code = 5


class NotDistinct(SphertwistError):
    exit_code = 4


class PreconditionFailed(SphertwistError):
    exit_code = 5


class DNotGreaterThanOne(PreconditionFailed):
    pass


class CertificateFailure(SphertwistError):
    """A ping-pong step failed; the two twists would then not generate a free group."""

    exit_code = 1

    def __init__(self, message: str, word=None):
        super().__init__(message)
        self.word = word


class SizeCapExceeded(SphertwistError):
    exit_code = 5
