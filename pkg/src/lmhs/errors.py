"""Exception hierarchy.

Every precondition violation raises a named error so that callers (and the
CLI) can map failures to stable machine-readable codes.
"""


class LmhsError(Exception):
    """Base class; `code` is the stable identifier used in reports."""

    code = "error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class DimensionMismatch(LmhsError):
    code = "dimension-mismatch"


class SchemaError(LmhsError):
    code = "schema-error"

    def __init__(self, message, path="$", **context):
        super().__init__(message, path=path, **context)
        self.path = path


class InvariantError(LmhsError):
    code = "invariant-error"


class InvalidMHS(LmhsError):
    code = "invalid-mhs"


class WrongFiltration(LmhsError):
    code = "wrong-filtration"


class IndependenceViolation(LmhsError):
    code = "independence-violation"


class NoTriple(LmhsError):
    code = "no-triple"


class UngradedInput(LmhsError):
    code = "ungraded-input"


class NotIntegral(LmhsError):
    code = "not-integral"


class NotInStabilizer(LmhsError):
    code = "not-in-stabilizer"


class NotInCell(LmhsError):
    code = "not-in-cell"


class XiNotInFperp(LmhsError):
    code = "xi-not-in-fperp"


class BasisNotSpanning(LmhsError):
    code = "basis-not-spanning"


class NonDecomposable(LmhsError):
    code = "non-decomposable"
