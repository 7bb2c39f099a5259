"""Wrapping of thimble paths: boundary-endpoint spiraling.

wrap(a, spec, disc) advances the boundary endpoint of a radial-ended arc
counterclockwise by spec.m full turns plus spec.delta, realizing the image as
an embedded polyline spiral supported in an outer annulus that is clear of
every puncture and of the arc's own pre-annulus part.  The spiral climbs
strictly monotonically from the annulus entry radius to (1 + entry)/2 and
finishes with a radial tail to the circle, so a wrapped path is itself a
legal input to wrap (successive wraps compose).

For a wrapped copy that must be compared against its own source (shared
puncture), pass bend=True: the copy leaves the puncture directly toward an
entry point rotated counterclockwise by spec.bend, so source and copy share
only the puncture point.  This local left-bend requires the source to be in
radial normal form (a single straight segment from puncture to boundary).
"""

from __future__ import annotations

from fractions import Fraction

from .disc import ArcKind, BoundaryAngle, DiscModel, PlanarArc, WrapSpec, radial_split
from .errors import LefbenchError, SpiralCollision
from .exactgeom import Pt, Q, angle_norm, circle_point, norm2, segment_point_dist2


def _annulus_entry_radius(arc: PlanarArc, disc: DiscModel) -> Fraction:
    """Rational inner radius for the spiral annulus: strictly above every
    puncture radius and every pre-boundary vertex radius, strictly below 1."""
    s = Q(0)
    for _, p in disc.items():
        s = max(s, norm2(p))
    for v in arc.vertices[:-1]:
        s = max(s, norm2(v))
    upper = (1 + s) / 2          # rational upper bound for sqrt(s)
    return (1 + upper) / 2


def wrap(arc: PlanarArc, spec: WrapSpec, disc: DiscModel,
         bend: bool = False) -> PlanarArc:
    """Wrapped image of a radial-ended arc; see module docstring."""
    tau0, _ = radial_split(arc)
    if bend and len(arc.vertices) != 2:
        raise LefbenchError(
            "left-bend wrapping requires a radial normal form path"
            " (one straight segment from puncture to boundary)")

    r_out = _annulus_entry_radius(arc, disc)
    for name, p in disc.items():
        if norm2(p) >= r_out * r_out:
            raise SpiralCollision(
                f"puncture {name!r} lies inside the wrapping annulus")

    start = tau0 + (spec.bend_or_default if bend else Q(0))
    end = tau0 + spec.m + spec.delta
    if not start < end:
        raise LefbenchError("wrap sweep is empty; bend must stay below delta")
    r_last = (1 + r_out) / 2
    step = Q(1, disc.boundary_resolution)

    # vertices sit on a half-step-shifted grid so that no spiral vertex can
    # land exactly on a boundary ray of the declared angle grid
    angles = [start]
    k = 0
    while start + step / 2 + k * step < end:
        angles.append(start + step / 2 + k * step)
        k += 1
    angles.append(end)

    span = end - start
    spiral = []
    for ang in angles:
        r = r_out + (r_last - r_out) * (ang - start) / span
        c = circle_point(angle_norm(ang))
        spiral.append(Pt(r * c.x, r * c.y))
    tail = circle_point(angle_norm(end))

    if bend:
        vertices = (arc.vertices[0],) + tuple(spiral) + (tail,)
    else:
        vertices = arc.vertices[:-1] + tuple(spiral) + (tail,)

    max_punct = Q(0)
    for _, p in disc.items():
        max_punct = max(max_punct, norm2(p))
    for s0, s1 in zip(spiral, spiral[1:]):
        if segment_point_dist2(Pt(Q(0), Q(0)), s0, s1) <= max_punct:
            raise SpiralCollision(
                "spiral chords dip to puncture radius;"
                " raise the disc boundary_resolution")

    level = (arc.wrap_level or 0) + spec.m
    offset = (arc.wrap_offset or Q(0)) + spec.delta
    out = PlanarArc(vertices, arc.start, BoundaryAngle(angle_norm(end)),
                    ArcKind.WRAPPED, wrap_level=level, wrap_offset=offset)
    out.validate(disc)
    return out
