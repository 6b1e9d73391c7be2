"""Exception types raised across the package."""


class BimapLabError(Exception):
    """Base class for all package errors."""


class MalformedTree(BimapLabError):
    """Child-count sequence is not a valid depth-first tree encoding."""


class BadLabeling(BimapLabError):
    """Mobile labels violate the cyclic increment rule at a black vertex."""


class BadRootLabel(BimapLabError):
    """Root label of a mobile is not zero."""


class NotABridge(BimapLabError):
    """Increment sequence does not sum to -1 or has a jump below -1."""


class MalformedExcursion(BimapLabError):
    """Path is not a first-passage excursion decodable into a tree."""


class BudgetExceeded(BimapLabError):
    """Rejection sampler exhausted its retry budget."""


class NotBipartite(BimapLabError):
    """Map has a face of odd degree."""


class NotPointed(BimapLabError):
    """Operation requires a map with a distinguished vertex."""


class Disconnected(BimapLabError):
    """Map or graph is not connected."""


class TooLarge(BimapLabError):
    """Exhaustive enumeration requested beyond the supported size."""
