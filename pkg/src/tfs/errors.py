"""Exception types raised across the package."""

from __future__ import annotations


class TFSError(Exception):
    """Base class for all errors raised by :mod:`tfs`."""


class GraphInputError(TFSError, ValueError):
    """Malformed input to :func:`tfs.graph.build_graph`."""


class IndexOutOfRange(GraphInputError):
    pass


class SelfLoop(GraphInputError):
    pass


class DuplicateEdge(GraphInputError):
    pass


class EdgeNotPresent(TFSError, ValueError):
    pass


class NotTrimContractible(TFSError, ValueError):
    pass


class NotATree(TFSError, ValueError):
    pass


class Disconnected(TFSError, ValueError):
    pass


class TooLarge(TFSError, ValueError):
    """The instance exceeds a configured search bound."""


class InvalidParameters(TFSError, ValueError):
    pass


class InvalidPartition(TFSError, ValueError):
    pass


class PreconditionViolated(TFSError, ValueError):
    def __init__(self, op: str, reason: str):
        super().__init__(f"{op}: {reason}")
        self.op = op
        self.reason = reason


class ParseError(TFSError, ValueError):
    pass
