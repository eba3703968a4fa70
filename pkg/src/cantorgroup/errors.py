"""Exception hierarchy.

Every error carries a short machine-readable ``code`` which the CLI echoes in
its ``{"error": code, "detail": ...}`` payload.
"""


class ContractError(Exception):
    """A precondition or invariant of some operation was violated."""

    code = "CONTRACT"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


class PrecisionExhausted(ContractError):
    code = "PRECISION_EXHAUSTED"


class EmptySet(ContractError):
    code = "EMPTY_SET"


class InvariantViolation(ContractError):
    code = "INVARIANT_VIOLATION"


class MeasureNotDominated(ContractError):
    code = "MEASURE_NOT_DOMINATED"


class MeasureMismatch(ContractError):
    code = "MEASURE_MISMATCH"


class InvalidDelta(ContractError):
    code = "INVALID_DELTA"


class InvalidInput(ContractError):
    code = "INVALID_INPUT"


class InvalidInstance(ContractError):
    code = "INVALID_INSTANCE"


class MeasureNotDivisible(ContractError):
    code = "MEASURE_NOT_DIVISIBLE"


class NotQLike(ContractError):
    code = "NOT_Q_LIKE"


class NotGroupLike(ContractError):
    code = "NOT_GROUP_LIKE"


class InvalidEmbedding(ContractError):
    code = "INVALID_EMBEDDING"


class NotACycle(ContractError):
    code = "NOT_A_CYCLE"


class ParseError(InvalidInput):
    """Malformed JSON input; the CLI maps this to exit code 1."""

    code = "PARSE_ERROR"
