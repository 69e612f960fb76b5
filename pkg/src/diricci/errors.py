"""Exception hierarchy shared by all diricci modules."""

from __future__ import annotations


class DiricciError(Exception):
    """Base class for every error raised by this package."""


class GraphError(DiricciError, ValueError):
    """Invalid graph input."""


class SelfLoop(GraphError):
    def __init__(self, vertex: str):
        super().__init__(f"self-loop at {vertex!r}")
        self.vertex = vertex


class DuplicateEdge(GraphError):
    def __init__(self, u: str, v: str):
        super().__init__(f"duplicate edge {u!r} -> {v!r}")
        self.pair = (u, v)


class NotStronglyConnected(GraphError):
    """Raised with a witness ordered pair that has no directed path."""

    def __init__(self, u: str, v: str):
        super().__init__(f"graph is not strongly connected: no path {u!r} -> {v!r}")
        self.pair = (u, v)


class NotEulerian(GraphError):
    pass


class NotUnweighted(GraphError):
    pass


class SingularSystem(DiricciError, ArithmeticError):
    pass


class TooLarge(DiricciError, ValueError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"n={n} exceeds brute-force limit {limit}")
        self.n = n
        self.limit = limit


class EpsOutOfRange(DiricciError, ValueError):
    pass


class SamePair(DiricciError, ValueError):
    def __init__(self, x: str):
        super().__init__(f"curvature needs two distinct vertices, got {x!r} twice")
        self.vertex = x


class NoStabilization(DiricciError, RuntimeError):
    pass


class NoConvergence(DiricciError, RuntimeError):
    pass


class NotApplicable(DiricciError, ValueError):
    pass


class NotAGeodesic(DiricciError, ValueError):
    pass


class PreconditionFailed(DiricciError, ValueError):
    pass


class InfeasibleProblem(DiricciError, ArithmeticError):
    pass


class UnboundedProblem(DiricciError, ArithmeticError):
    pass


class ParseError(DiricciError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
