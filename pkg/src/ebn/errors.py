"""Exception hierarchy shared by all modules."""


class EBNError(Exception):
    """Base class for every error raised by this package."""


class GraphError(EBNError, ValueError):
    pass


class SelfLoop(GraphError):
    def __init__(self, v):
        super().__init__(f"self-loop on {v!r}")
        self.vertex = v


class ParallelEdge(GraphError):
    def __init__(self, a, b):
        super().__init__(f"more than one edge between {a!r} and {b!r}")
        self.pair = (a, b)


class DirectedCycle(GraphError):
    def __init__(self, cycle):
        super().__init__("directed cycle: " + " -> ".join(map(str, cycle)))
        self.cycle = tuple(cycle)


class UnknownVertex(GraphError, KeyError):
    def __init__(self, v):
        GraphError.__init__(self, f"unknown vertex {v!r}")
        self.vertex = v

    __str__ = Exception.__str__


class InvalidTrail(GraphError):
    pass


class NotATree(GraphError):
    pass


class UniverseMismatch(GraphError):
    pass


class HasBidirectedEdge(GraphError):
    pass


class InvalidStatement(EBNError, ValueError):
    pass


class UniverseTooLarge(EBNError, ValueError):
    def __init__(self, n, limit):
        super().__init__(f"universe has {n} variables, limit is {limit}")
        self.n = n
        self.limit = limit


class BudgetExceeded(EBNError, RuntimeError):
    def __init__(self, count, budget):
        super().__init__(f"closure exceeded budget of {budget} statements ({count} derived so far)")
        self.count = count
        self.budget = budget


class VariableMismatch(EBNError, ValueError):
    pass


class EmptyKeepSet(EBNError, ValueError):
    pass


class TableError(EBNError, ValueError):
    pass


class RetriesExhausted(EBNError, RuntimeError):
    def __init__(self, retries, pair):
        super().__init__(f"no acceptable table after {retries} attempts; last failing pair {pair}")
        self.retries = retries
        self.pair = pair


class OrientationConflict(EBNError):
    def __init__(self, witness, reason):
        super().__init__(f"{reason}: {witness}")
        self.witness = witness
        self.reason = reason


class InvalidK(EBNError, ValueError):
    pass


class StatementNotInModel(EBNError, ValueError):
    pass


class FormatError(EBNError, ValueError):
    def __init__(self, msg, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line
