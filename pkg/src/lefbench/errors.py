"""Exception hierarchy for the workbench.

Every error raised by the library derives from LefbenchError.  Errors that can
be traced back to a line of a scenario config carry ``source`` ("file:line")
so the CLI can point at the offending declaration.
"""

from __future__ import annotations


class LefbenchError(Exception):
    """Base class for all workbench errors."""

    def __init__(self, message: str, source: str | None = None):
        self.source = source
        if source:
            message = f"{source}: {message}"
        super().__init__(message)


class ConfigError(LefbenchError):
    """Malformed or semantically invalid scenario config."""


# ---- planar geometry -------------------------------------------------------

class NonEmbeddableInput(LefbenchError):
    """A polyline arc self-intersects."""


class DegenerateTangency(LefbenchError):
    """Overlapping collinear contact that the perturbation rule cannot resolve."""


class SharedBoundaryEndpoint(LefbenchError):
    """Two arcs end at the same boundary angle."""


class SpiralCollision(LefbenchError):
    """The annulus chosen for a wrapping spiral is not clear of punctures."""


# ---- fibration model -------------------------------------------------------

class MissingClass(LefbenchError):
    """A cycle label has no homology class in the fiber data."""


class UnresolvedSign(LefbenchError):
    """The orientation rule cannot orient a matching cycle."""


# ---- floer oracle ----------------------------------------------------------

class UnknownPair(LefbenchError):
    """The oracle holds no rank fact for the requested pair."""


class InvalidWitness(LefbenchError):
    """A not-isomorphic witness fails its rank requirements."""


class MissingParity(LefbenchError):
    """Exactness was demanded but no parity certificate covers the generators."""


# ---- rank calculus ---------------------------------------------------------

class ImageTooLarge(LefbenchError):
    """A triangle's image rank exceeds min of the adjacent ranks."""


class Undecidable(LefbenchError):
    """Isomorphism status required but Unknown."""


class Inconsistent(LefbenchError):
    """Rank bookkeeping contradicts itself (internal inconsistency)."""


class IncompleteBasis(LefbenchError):
    """The obstruction test is missing a diagonal verdict."""


# ---- wrapped tower ---------------------------------------------------------

class MissingFate(LefbenchError):
    """A tower was assembled without a unit-fate or module-rule source."""
