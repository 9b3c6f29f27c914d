"""Exception hierarchy shared by every module of the package."""


class AndersonError(Exception):
    """Base class for all package errors."""


class FieldError(AndersonError):
    """Invalid field specification or incompatible operands."""


class NotAQthPower(FieldError):
    """An inverse twist was requested on an element with no q-th root."""


class PrecisionExhausted(FieldError):
    """A truncated Laurent computation ran out of known digits."""


class ParseError(AndersonError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class MathDegenerate(AndersonError):
    """A computation hit a degenerate configuration (CLI exit code 3)."""


class ZeroKernel(MathDegenerate):
    pass


class MultidimensionalKernel(MathDegenerate):
    def __init__(self, dim, basis):
        self.dim = dim
        self.basis = basis
        super().__init__(f"cofactor kernel has dimension {dim}")


class TruncationTooSmall(MathDegenerate):
    pass


class NoSolution(MathDegenerate):
    pass


class NoCommonRoot(MathDegenerate):
    pass


class HeadSingular(MathDegenerate):
    pass


class InconsistentLevel(MathDegenerate):
    def __init__(self, level):
        self.level = level
        super().__init__(f"no solution at level {level}")


class ResidueFieldTooSmall(MathDegenerate):
    def __init__(self, required):
        self.required = required
        if required is None:
            super().__init__("residue equation needs an extension beyond the configured cap")
        else:
            super().__init__(f"residue equation needs residue degree {required} over F_q")


class RamificationRequired(MathDegenerate):
    def __init__(self, denominator):
        self.denominator = denominator
        super().__init__(f"root valuation needs ramification index divisible by {denominator}")


class QthRootUnavailable(MathDegenerate):
    pass


class NonterminatingReduction(MathDegenerate):
    pass


class EmptyIntersection(MathDegenerate):
    pass


class NoExtension(MathDegenerate):
    pass


class VerificationFailed(AndersonError):
    """An internal self-check failed (CLI exit code 4)."""


class UnsupportedShape(AndersonError):
    """The closure planner has no degree profile for this shape combination."""
