"""Exception types raised across the library.

Every error is a subclass of PrlabError so callers can catch the whole
family with one except clause. Functions raise the most specific type.
"""

from __future__ import annotations


class PrlabError(Exception):
    """Base class for all library errors."""


class VertexOutOfRangeError(PrlabError):
    """A vertex id falls outside [0, n)."""


class SelfLoopError(PrlabError):
    """An edge joins a vertex to itself."""


class DuplicateEdgeError(PrlabError):
    """The same undirected edge appears more than once (either orientation)."""


class ZeroDegreeError(PrlabError):
    """An operation requiring positive degrees met an isolated vertex."""


class DisconnectedGraphError(PrlabError):
    """An operation requiring a connected graph met a disconnected one."""


class EmptyGraphError(PrlabError):
    """An operation requiring at least one edge met an edgeless graph."""


class LengthMismatchError(PrlabError):
    """A vector's length does not match the graph or companion vector."""


class ProbabilityVectorError(PrlabError):
    """A vector is not a probability distribution (negative entries or bad sum)."""


class InvalidParameterError(PrlabError):
    """A scalar parameter is outside its documented validity range."""


class InadmissibleWeightsError(PrlabError):
    """An expected-degree vector violates max(w)^2 <= sum(w) or positivity."""


class EmptySetError(PrlabError):
    """A vertex set that must be nonempty is empty."""


class DenseSizeError(PrlabError):
    """A dense-oracle routine was called above its size cutoff."""


class MaxIterationsError(PrlabError):
    """An iteration hit its step limit before reaching tolerance.

    The best iterate and its diagnostics are attached as .result when the
    raising routine has one to offer.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ScenarioError(PrlabError):
    """An experiment scenario or config file is malformed."""
