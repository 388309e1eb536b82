"""Exception hierarchy shared by every module."""


class GraphError(Exception):
    """Base class for all errors raised by immsplit."""


class UnknownId(GraphError, KeyError):
    pass


class BadIncidence(GraphError, ValueError):
    pass


class OddDegreeCompleteSplit(GraphError, ValueError):
    pass


class EmptySide(GraphError, ValueError):
    pass


class SameVertex(GraphError, ValueError):
    pass


class TooSmall(GraphError, ValueError):
    pass


class TooLarge(GraphError, ValueError):
    pass


class Overlap(GraphError, ValueError):
    pass


class EmptySet(GraphError, ValueError):
    pass


class DegreeThree(GraphError, ValueError):
    pass


class CutEdgeIncident(GraphError, ValueError):
    pass


class BadMode(GraphError, ValueError):
    pass


class UnknownName(GraphError, KeyError):
    pass


class PreconditionViolated(GraphError, ValueError):
    """An operation was called outside its domain.

    ``clause`` names the failed condition so callers (and the CLI) can
    report it without parsing the message.
    """

    def __init__(self, clause, message=None):
        self.clause = clause
        super().__init__(message or clause)


class NotFound(GraphError, RuntimeError):
    """A search that a theorem guarantees to succeed came back empty.

    Never expected when preconditions hold; treat as an alarm.
    """


class Stuck(GraphError, RuntimeError):
    """A reduction chain stopped before reaching its target.

    ``declared`` is True for the known exceptional pairs, False otherwise.
    """

    def __init__(self, graph, declared, trace=None):
        self.graph = graph
        self.declared = declared
        self.trace = trace
        kind = "declared exception" if declared else "alarm"
        super().__init__(f"reduction stuck ({kind}) at {graph.n} vertices, {graph.m} edges")


class ParseError(GraphError, ValueError):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")
