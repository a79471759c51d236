"""Exception hierarchy shared by all modules."""


class GraphError(ValueError):
    """Base class for errors raised on malformed or unsuitable graphs."""


class NotATree(GraphError):
    pass


class LoopsUnsupported(GraphError):
    pass


class SiteMissing(GraphError):
    pass


class NotMinusOne(GraphError):
    pass


class DegreeTooHigh(GraphError):
    pass


class NotZeroVertex(GraphError):
    pass


class WrongDegree(GraphError):
    pass


class NotReversible(GraphError):
    pass


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, budget, message=None):
        self.budget = budget
        super().__init__(message or f"search budget exceeded ({budget})")


class InvalidExtendedGraph(GraphError):
    pass


class NoBoundaryNeighbor(GraphError):
    pass


class ZeroPointInStar(ValueError):
    pass


class MissingCoordinates(ValueError):
    pass


class NotAZigzag(GraphError):
    pass


class IndexOutOfRange(ValueError):
    pass


class NoExtremalZero(GraphError):
    pass


class NotRealizable(GraphError):
    pass


class OrderingConflict(GraphError):
    pass


class SlotViolation(ValueError):
    pass


class DSLError(Exception):
    """Base class for text-format errors."""


class DSLSyntaxError(DSLError):
    def __init__(self, line, col, expected, found=None):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        msg = f"line {line}, col {col}: expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)


class UnknownReference(DSLError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown reference {name!r}")


class DuplicateName(DSLError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate name {name!r}")
