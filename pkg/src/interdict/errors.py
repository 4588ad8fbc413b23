"""Exception types raised across the package."""


class InterdictError(Exception):
    """Base class for every error raised by :mod:`interdict`."""


class ParseError(InterdictError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class NotConnected(InterdictError):
    pass


class NotATree(InterdictError):
    pass


class NotAForest(InterdictError):
    pass


class WrongKind(InterdictError):
    pass


class UnknownEdge(InterdictError):
    pass


class NotAFacility(InterdictError):
    pass


class TooLarge(InterdictError):
    """An exhaustive search would exceed its hard size guard."""


class Infeasible(InterdictError):
    pass


class EmptyBucket(InterdictError):
    pass


class InvalidDecomposition(InterdictError):
    pass


class BagMismatch(InterdictError):
    pass


class BadK(InterdictError):
    pass


class InconsistentSolution(InterdictError):
    pass
