"""Boundary wrapping: spiral synthesis, collision guards, composition."""

from fractions import Fraction as Q

import pytest

from lefbench.disc import (ArcKind, BoundaryAngle, DiscModel, PlanarArc,
                           Puncture, WrapSpec)
from lefbench.errors import LefbenchError, SpiralCollision
from lefbench.exactgeom import norm2, pt
from lefbench.minpos import compute_crossings, find_empty_bigons
from lefbench.wrapping import wrap

from oracles import brute_crossing_count, polyline_is_embedded

DELTA = Q(1, 64)


def main_disc(resolution=16):
    return DiscModel(punctures=(("a", pt(Q(-1, 2), 0)), ("b", pt(Q(1, 2), 0))),
                     boundary_resolution=resolution)


def ray_a(disc):
    arc = PlanarArc((pt(Q(-1, 2), 0), pt(-1, 0)),
                    Puncture("a"), BoundaryAngle(Q(1, 2)), ArcKind.VANISHING)
    arc.validate(disc)
    return arc


def ray_b(disc):
    arc = PlanarArc((pt(Q(1, 2), 0), pt(1, 0)),
                    Puncture("b"), BoundaryAngle(Q(0)), ArcKind.VANISHING)
    arc.validate(disc)
    return arc


def test_wrap_level_zero_only_shifts_the_endpoint():
    disc = main_disc()
    w = wrap(ray_b(disc), WrapSpec(0, DELTA), disc)
    assert w.kind is ArcKind.WRAPPED
    assert w.wrap_level == 0
    assert w.wrap_offset == DELTA
    assert w.end == BoundaryAngle(DELTA)
    assert w.vertices[0] == pt(Q(1, 2), 0)
    assert norm2(w.vertices[-1]) == 1
    assert compute_crossings(w, ray_a(disc)) == []
    assert brute_crossing_count(w.vertices, ray_a(disc).vertices) == 0


@pytest.mark.parametrize("m,expected", [(1, 1), (2, 2), (3, 3)])
def test_wrapped_ray_crosses_opposite_ray_once_per_turn(m, expected):
    disc = main_disc()
    w = wrap(ray_a(disc), WrapSpec(m, DELTA), disc)
    hits = compute_crossings(w, ray_b(disc))
    assert len(hits) == expected
    assert brute_crossing_count(w.vertices, ray_b(disc).vertices) == expected
    # every crossing sits on the positive x axis between puncture and boundary
    for c in hits:
        assert c.point.y == 0 and Q(1, 2) < c.point.x < 1
    assert polyline_is_embedded(w.vertices)


@pytest.mark.parametrize("m,expected", [(0, 0), (1, 1), (2, 2), (3, 3)])
def test_bent_self_wrap_crosses_its_source_once_per_turn(m, expected):
    disc = main_disc()
    src = ray_b(disc)
    w = wrap(src, WrapSpec(m, DELTA, bend=Q(1, 128)), disc, bend=True)
    assert w.vertices[0] == src.vertices[0]
    hits = compute_crossings(w, src)
    assert len(hits) == expected
    anchors = [(Q(1, 2), Q(0))]
    assert brute_crossing_count(w.vertices, src.vertices, anchors) == expected


def test_wrapped_crossings_are_pinned_by_punctures():
    """The spiral turns encircle every puncture, so none of the crossings
    with a ray bounds an empty lens: the pair is already minimal."""
    disc = main_disc()
    w = wrap(ray_a(disc), WrapSpec(3, DELTA), disc)
    assert find_empty_bigons(w, ray_b(disc), disc) == []


def test_double_wrap_matches_single_wrap_profile():
    disc = main_disc()
    once = wrap(wrap(ray_b(disc), WrapSpec(1, DELTA), disc),
                WrapSpec(2, DELTA), disc)
    flat = wrap(ray_b(disc), WrapSpec(3, 2 * DELTA), disc)
    assert once.wrap_level == flat.wrap_level == 3
    assert once.wrap_offset == flat.wrap_offset == 2 * DELTA
    assert once.end == flat.end
    target = ray_a(disc)
    assert (len(compute_crossings(once, target))
            == len(compute_crossings(flat, target)) == 3)


def test_bend_requires_radial_normal_form():
    disc = main_disc()
    dogleg = PlanarArc((pt(Q(1, 2), 0), pt(0, Q(1, 2)), pt(0, 1)),
                       Puncture("b"), BoundaryAngle(Q(1, 4)), ArcKind.VANISHING)
    dogleg.validate(disc)
    with pytest.raises(LefbenchError, match="radial normal form"):
        wrap(dogleg, WrapSpec(1, DELTA), disc, bend=True)


def test_wrap_rejects_non_radial_tail():
    disc = main_disc()
    skew = PlanarArc((pt(Q(1, 2), Q(1, 4)), pt(1, 0)),
                     Puncture("b"), BoundaryAngle(Q(0)), ArcKind.VANISHING)
    with pytest.raises(LefbenchError, match="radial"):
        wrap(skew, WrapSpec(1, DELTA), disc)


def test_spiral_collision_resolved_by_finer_resolution():
    coarse = DiscModel(punctures=(("hug", pt(0, Q(99, 100))),),
                       boundary_resolution=16)
    ray = PlanarArc((pt(0, Q(99, 100)), pt(0, 1)),
                    Puncture("hug"), BoundaryAngle(Q(1, 4)), ArcKind.VANISHING)
    ray.validate(coarse)
    with pytest.raises(SpiralCollision, match="resolution"):
        wrap(ray, WrapSpec(1, DELTA), coarse)

    fine = DiscModel(punctures=(("hug", pt(0, Q(99, 100))),),
                     boundary_resolution=64)
    w = wrap(ray, WrapSpec(1, DELTA), fine)
    assert w.wrap_level == 1
    assert polyline_is_embedded(w.vertices)


def test_wrap_keeps_spiral_clear_of_punctures():
    disc = main_disc()
    w = wrap(ray_a(disc), WrapSpec(2, DELTA), disc)
    # every vertex of the spiral proper stays strictly outside the puncture
    # radius, and the arc never meets a puncture other than its own anchor
    for v in w.vertices[1:]:
        assert norm2(v) > Q(1, 4)
