"""Exception types shared across the toolkit."""

from __future__ import annotations


class FslinksError(Exception):
    """Base class for all toolkit errors."""


class DomainError(FslinksError, ValueError):
    """A parameter is outside the domain an operation is defined on."""


class BraidParseError(FslinksError, ValueError):
    """Malformed braid text; carries the character position of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonHomogeneousError(FslinksError, ValueError):
    """Operation requires a homogeneous braid word."""


class NonIntegerGenusError(FslinksError, ValueError):
    """Genus formula produced a non-integer; the input is malformed."""


class EmptyDiagramError(FslinksError, ValueError):
    """Diagram has no crossings, so there is no 4-valent graph to project to."""


class DisconnectedGraphError(FslinksError, ValueError):
    """Underlying 4-valent graph is disconnected (a generator is missing)."""


class NoValidTreeError(FslinksError, ValueError):
    """No spanning tree satisfies the requested constraints."""


class MissingGeneratorError(FslinksError, ValueError):
    """Braid word does not use every generator of its braid group."""


class EmptyBlockSpaceError(FslinksError, ValueError):
    """The fusion space for this coloring is zero-dimensional."""


class WidthLimitError(FslinksError, ValueError):
    """Cabled diagram exceeds the configured strand-width limit."""


class UnsupportedDiagramError(FslinksError, ValueError):
    """Diagram carries no layered presentation the skein oracle can sweep."""
