"""Exception types raised across the package."""


class BipartiteLogdetError(Exception):
    """Base class for all package errors."""


class ValidationError(BipartiteLogdetError, ValueError):
    pass


class NonPositivePrecision(ValidationError):
    def __init__(self, location, value):
        self.location = location
        self.value = value
        super().__init__(f"precision at {location} must be positive and finite, got {value!r}")


class ZeroDimension(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class DimensionTooLarge(ValidationError):
    pass


class BadPermutation(ValidationError):
    pass


class NotPositiveDefinite(BipartiteLogdetError, ArithmeticError):
    def __init__(self, pivot_index):
        self.pivot_index = pivot_index
        super().__init__(f"matrix is not positive definite (pivot {pivot_index} failed)")


class NoConvergence(BipartiteLogdetError, ArithmeticError):
    pass


class ArrowheadNotSPD(NotPositiveDefinite):
    def __init__(self, schur):
        self.schur = schur
        BipartiteLogdetError.__init__(
            self, f"arrowhead Schur complement is not positive: {schur!r}")
        self.pivot_index = -1


class NonPositiveBelief(BipartiteLogdetError, ArithmeticError):
    pass


class MethodNotApplicable(BipartiteLogdetError):
    pass


class IoFailure(BipartiteLogdetError, OSError):
    def __init__(self, path, reason=""):
        self.path = str(path)
        BipartiteLogdetError.__init__(self, f"cannot access {path}: {reason}")


class ParseError(BipartiteLogdetError, ValueError):
    def __init__(self, line_no, msg):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {msg}")


class UnsupportedFormat(BipartiteLogdetError, ValueError):
    pass
