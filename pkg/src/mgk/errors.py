"""Exception hierarchy. Everything raised on bad input derives from MgkError."""


class MgkError(Exception):
    pass


# core-model
class IndexOutOfRange(MgkError, IndexError):
    pass


class SelfLoop(MgkError, ValueError):
    pass


class DuplicateVertexPosition(MgkError, ValueError):
    pass


# ingest
class MalformedCoordinate(MgkError, ValueError):
    pass


class MergeAmbiguity(MgkError, ValueError):
    pass


class NoEdges(MgkError, ValueError):
    pass


class NonPositiveScale(MgkError, ValueError):
    pass


class FormatError(MgkError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# verify
class WrongClass(MgkError, ValueError):
    pass


# refine
class DidNotConverge(MgkError, RuntimeError):
    def __init__(self, message: str, trace=None):
        self.trace = trace
        super().__init__(message)


class InfeasibleStart(MgkError, ValueError):
    """Starting coordinates are too far from unit edge lengths to refine."""


class DegenerateConfiguration(MgkError, RuntimeError):
    pass


# rigidity
class DegenerateFramework(MgkError, ValueError):
    pass


# congruence
class IsomorphismTimeout(MgkError, RuntimeError):
    """Node budget of the isomorphism search was exhausted."""
