"""Scenario diagrams as minimal SVG: every visible element is a plain
``<path>``; the y axis is flipped in the coordinates themselves so no
transforms are needed."""

from __future__ import annotations

from fractions import Fraction

from .disc import DiscModel, PlanarArc, WrapSpec
from .exactgeom import Pt
from .fibration import Fibration, TotalSpaceFiber
from .wrapping import wrap

_HEADER = ('<?xml version="1.0" encoding="UTF-8"?>\n'
           '<svg xmlns="http://www.w3.org/2000/svg" '
           'viewBox="-1.08 -1.08 2.16 2.16" width="480" height="480">')

_BOUNDARY = "#777777"
_CRIT = "#1f4e79"
_OBJECT = "#b5541c"
_WRAPPED = "#2e7d32"
_MARK = "#000000"


def _f(x: Fraction | float) -> str:
    return f"{float(x):.6f}"


def _xy(p: Pt) -> str:
    return f"{_f(p.x)} {_f(-p.y)}"


def _path(d: str, stroke: str, width: str = "0.012") -> str:
    return (f'<path d="{d}" fill="none" stroke="{stroke}"'
            f' stroke-width="{width}"/>')


def _polyline_d(pts) -> str:
    head, *rest = pts
    return "M " + _xy(head) + "".join(f" L {_xy(p)}" for p in rest)


def _circle_d() -> str:
    return "M 1 0 A 1 1 0 0 0 -1 0 A 1 1 0 0 0 1 0 Z"


def _cross_d(p: Pt, r: Fraction = Fraction(1, 50)) -> str:
    x, y = float(p.x), float(-p.y)
    return (f"M {x - float(r):.6f} {y:.6f} L {x + float(r):.6f} {y:.6f} "
            f"M {x:.6f} {y - float(r):.6f} L {x:.6f} {y + float(r):.6f}")


def _arc_paths(arcs: list[tuple[PlanarArc, str]]) -> list[str]:
    return [_path(_polyline_d(a.vertices), color) for a, color in arcs]


def _disc_scene(disc: DiscModel, arcs: list[tuple[PlanarArc, str]]) -> str:
    body = [_HEADER, _path(_circle_d(), _BOUNDARY, "0.008")]
    body.extend(_arc_paths(arcs))
    for _, p in disc.punctures:
        body.append(_path(_cross_d(p), _MARK, "0.008"))
    body.append("</svg>")
    return "\n".join(body) + "\n"


def scenario_svg(f: Fibration) -> str:
    """The fibration's disc with its vanishing paths and declared objects."""
    arcs = [(c.path, _CRIT) for c in f.crits]
    crit_paths = {c.path for c in f.crits}
    arcs.extend((mo.path, _OBJECT) for mo in f.objects
                if mo.path not in crit_paths)
    return _disc_scene(f.disc, arcs)


def stage_svg(f: Fibration, x: str, y: str, spec: WrapSpec) -> str:
    """One wrapped thimble path against its fixed partner."""
    cx, cy = f.crit_for(x), f.crit_for(y)
    moved = wrap(cx.path, spec, f.disc, bend=cx.puncture == cy.puncture)
    return _disc_scene(f.disc, [(cy.path, _CRIT), (moved, _WRAPPED)])


def diagram_files(f: Fibration) -> list[tuple[str, str]]:
    """(filename, contents) for the scenario's discs, innermost last."""
    out = [(f"{f.name}-base.svg", scenario_svg(f))]
    fiber = f.fiber
    while isinstance(fiber, TotalSpaceFiber):
        inner = fiber.fibration
        out.append((f"{f.name}-fiber-{inner.name}.svg", scenario_svg(inner)))
        fiber = inner.fiber
    return out
