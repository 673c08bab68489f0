"""Deterministic SVG rendering of pattern documents.

The y axis is flipped so the counterclockwise lattice orientation renders
counterclockwise on screen.  All coordinates are written with six fixed
decimal places, so identical documents produce byte-identical SVG text.
Infinite vertices are skipped; circles render as ``<circle>`` elements and
intersection points as small square ``<rect>`` markers, keeping the two
element counts distinct.
"""
from dataclasses import dataclass

from .errors import NothingToRender

_FIELD_COLORS = {"u": "#1f77b4", "v": "#d62728", "w": "#2ca02c"}
_DEFAULT_COLOR = "#444444"


@dataclass
class RenderOptions:
    """Rendering switches; None lengths scale with the drawing's bounds."""
    show_circles: bool = True
    show_points: bool = True
    show_triangles: bool = False
    stroke_width: float = None
    padding: float = None


def _fmt(x: float) -> str:
    text = f"{x:.6f}"
    return "0.000000" if text == "-0.000000" else text


def _color(tag: str) -> str:
    return _FIELD_COLORS.get(tag, _DEFAULT_COLOR)


def _triangle_paths(doc):
    """Image triangles per field from the document's vertex entries."""
    from .lattice import downward_triangles, upward_triangles
    from .document import document_fields
    from .geometry import is_infinite
    paths = []
    for tag, fld in sorted(document_fields(doc).items()):
        for tri in upward_triangles(doc.n) + downward_triangles(doc.n):
            try:
                zs = [fld[p] for p in tri]
            except KeyError:
                continue
            if any(is_infinite(z) for z in zs):
                continue
            paths.append((tag, zs))
    return paths


def render_svg(doc, options: RenderOptions = None) -> str:
    """Render a pattern document to SVG 1.1 text."""
    opts = options or RenderOptions()
    points = []
    if opts.show_points:
        for entry in doc.vertices:
            if not entry["infinite"]:
                points.append((entry["field"], entry["re"], entry["im"]))
    circles = list(doc.circles) if opts.show_circles else []
    triangles = _triangle_paths(doc) if opts.show_triangles else []

    xs, ys = [], []
    for _, x, y in points:
        xs.append(x)
        ys.append(y)
    for entry in circles:
        xs.extend((entry["re"] - entry["radius"], entry["re"] + entry["radius"]))
        ys.extend((entry["im"] - entry["radius"], entry["im"] + entry["radius"]))
    for _, zs in triangles:
        xs.extend(z.real for z in zs)
        ys.extend(z.imag for z in zs)
    if not xs:
        raise NothingToRender("document has no finite renderable geometry")

    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    stroke = opts.stroke_width if opts.stroke_width is not None else span / 400.0
    pad = opts.padding if opts.padding is not None else 0.05 * span
    marker = 3.0 * stroke
    # y flip: drawing y runs downward, so render at -im
    min_x, max_x = min(xs) - pad, max(xs) + pad
    min_y, max_y = -(max(ys) + pad), -(min(ys) - pad)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(min_x)} {_fmt(min_y)} '
        f'{_fmt(max_x - min_x)} {_fmt(max_y - min_y)}">',
    ]
    if triangles:
        lines.append(f'  <g fill="none" stroke-width="{_fmt(stroke / 2)}" '
                     f'stroke-opacity="0.35">')
        for tag, zs in triangles:
            coords = " L ".join(f"{_fmt(z.real)} {_fmt(-z.imag)}" for z in zs)
            lines.append(f'    <path d="M {coords} Z" '
                         f'stroke="{_color(tag)}"/>')
        lines.append('  </g>')
    if circles:
        lines.append(f'  <g fill="none" stroke-width="{_fmt(stroke)}">')
        for entry in circles:
            lines.append(
                f'    <circle cx="{_fmt(entry["re"])}" '
                f'cy="{_fmt(-entry["im"])}" r="{_fmt(entry["radius"])}" '
                f'stroke="{_color(entry["field"])}"/>')
        lines.append('  </g>')
    if points:
        lines.append('  <g stroke="none">')
        for tag, x, y in points:
            lines.append(
                f'    <rect x="{_fmt(x - marker / 2)}" '
                f'y="{_fmt(-y - marker / 2)}" width="{_fmt(marker)}" '
                f'height="{_fmt(marker)}" fill="{_color(tag)}"/>')
        lines.append('  </g>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
