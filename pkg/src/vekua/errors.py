"""Exception types shared across the package.

Each carries a short stable ``code`` used by the CLI for its
machine-parseable error lines.
"""


class VekuaError(Exception):
    code = "INTERNAL"


class ZeroDivisorError(VekuaError):
    """Inversion of a bicomplex number with a vanishing idempotent component."""

    code = "ZERO_DIVISOR"


class InvalidOrderError(VekuaError, ValueError):
    code = "INVALID_ORDER"


class MixedProblemError(VekuaError, ValueError):
    """Coefficient field A together with a nonzero nonhomogeneity f."""

    code = "MIXED_PROBLEM"


class NotSolvableError(VekuaError):
    """Raised by solvers when the solvability conditions fail.

    The offending report is attached as ``.report``.
    """

    code = "NOT_SOLVABLE"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedDomainError(VekuaError, ValueError):
    code = "UNSUPPORTED_DOMAIN"


class DegenerateConicError(VekuaError, ValueError):
    code = "DEGENERATE_CONIC"


class EmptyLocusError(VekuaError, ValueError):
    code = "EMPTY_LOCUS"


class CircumferenceNotAllowedError(VekuaError, ValueError):
    """Circles are the exactly excluded boundary class.

    ``.kernel_element`` holds a nontrivial bianalytic polynomial vanishing
    on the circle, certifying non-uniqueness.
    """

    code = "CIRCUMFERENCE"

    def __init__(self, message, kernel_element=None):
        super().__init__(message)
        self.kernel_element = kernel_element


class DegreeCapExceededError(VekuaError):
    code = "DEGREE_CAP"


class NotInIdealError(VekuaError):
    code = "NOT_IN_IDEAL"


class DomainEdgeError(VekuaError, ValueError):
    """A finite-difference stencil would leave the field's domain."""

    code = "DOMAIN_EDGE"


class SchemaError(VekuaError, ValueError):
    """Problem-file validation failure."""

    code = "BAD_SCHEMA"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class MalformedCsvError(VekuaError, ValueError):
    code = "BAD_CSV"
