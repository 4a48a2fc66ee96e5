"""Exception types shared across the package.

The two branches matter for the CLI: InputError maps to exit status 1
(bad data), ConfigError to exit status 2 (bad parameters).
"""


class CommWalkerError(Exception):
    """Base class for every error raised by this package."""


class InputError(CommWalkerError):
    """Problem in user-supplied data (graph files, label files, results)."""


class ConfigError(CommWalkerError):
    """Problem in run parameters."""


class MalformedLineError(InputError):
    """A text input line does not have the expected token structure."""


class SelfLoopError(InputError):
    """An edge joins a node to itself."""


class DuplicateEdgeError(InputError):
    """The same undirected edge appears more than once in an edge list."""


class EmptyGraphError(InputError):
    """The input describes a graph with no edges."""


class GmlParseError(InputError):
    """The GML input is structurally broken (brackets, missing keys)."""


class DanglingEdgeError(InputError):
    """A GML edge references a node id that was never declared."""


class UnknownNodeError(InputError):
    """A label file names a node the graph does not have, or misses one."""


class NoEdgesError(InputError):
    """An operation that needs at least one edge got an edgeless graph."""


class SizeMismatchError(InputError):
    """Two partitions being compared cover differently sized node sets."""


class PartitionMismatchError(CommWalkerError):
    """A partition is sized for a different graph."""


class TooLargeError(CommWalkerError):
    """The graph exceeds the size limit of an exhaustive operation."""


class IsolatedNodeError(CommWalkerError):
    """A walk was asked to move from a node with no neighbors."""


class NotConnectedError(CommWalkerError):
    """An operation that requires a connected graph got a disconnected one."""


class ConfigInvalidError(ConfigError):
    """A parameter value violates its documented constraints."""
