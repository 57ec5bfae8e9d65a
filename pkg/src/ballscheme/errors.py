"""Exception types shared across the package."""

from __future__ import annotations


class BallSchemeError(Exception):
    """Base class for all package errors."""


class GraphError(BallSchemeError):
    """Invalid graph input (loops, multi-edges, disconnected, bad ids)."""


class NotGated(BallSchemeError):
    """The queried set has no gate for the given vertex."""


class Undefined(BallSchemeError):
    """A sphere/ball boundary query has no answer (empty or full intersection)."""


class SchemeError(BallSchemeError):
    """Base class for compressor/reconstructor failures."""


class NotRealizable(SchemeError):
    """The sample is not realizable by the scheme's concept family."""


class MalformedInput(SchemeError):
    """The reconstructor received a vector outside the compressor's image."""


class NotCactus(GraphError):
    """The graph has a block that is neither a cycle nor an edge."""


class NotMedian(GraphError):
    """The graph is not a (cube-free) median graph."""


class NotSplit(GraphError):
    """The graph admits no clique/independent-set partition."""


class InvalidEmbedding(BallSchemeError):
    """The rotation system does not describe a planar embedding."""


class UnsupportedSpec(BallSchemeError):
    """The generator cannot produce an instance for the requested parameters."""


class ParseError(BallSchemeError):
    """A text format could not be parsed; carries line/column information."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"line {line}, col {column}: {message}" if line else message)
        self.line = line
        self.column = column
