"""Exception and warning types shared across the package."""


class StrathomError(Exception):
    """Base class for all errors raised by this package."""


class StrathomWarning(UserWarning):
    """Base class for non-fatal conditions (redundant input, degree-zero boundary)."""


# gf2
class NotContained(StrathomError):
    """Quotient requested by a space that is not a subspace of the ambient one."""


# scomplex
class EmptyInput(StrathomError):
    pass


class NotASimplex(StrathomError):
    pass


class ApexCollision(StrathomError):
    pass


class NotPure(StrathomError):
    pass


# strat
class MalformedFiltration(StrathomError):
    pass


class MismatchedComplex(StrathomError):
    pass


# perversity
class InvalidPair(StrathomError):
    pass


class LengthMismatch(StrathomError):
    pass


class DegreeOutOfRange(StrathomError):
    pass


# engine
class NotUnionOfStrata(StrathomError):
    pass


class NotClosed(StrathomError):
    pass


class ComplementNotClosed(StrathomError):
    pass


# resolution
class MalformedResolution(StrathomError):
    pass


class NonConstantFiberDim(StrathomError):
    pass


class NotSmall(StrathomError):
    pass


# duality
class LinkSingular(StrathomError):
    pass


class NotIsolated(StrathomError):
    pass


class ResolutionMismatch(StrathomError):
    pass


class NotTransverse(StrathomError):
    pass


class NotDualBlockCycle(StrathomError):
    pass


# cli / scx
class ParseError(StrathomError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownVertex(ParseError):
    pass


class NonNestedSkeleton(ParseError):
    pass
