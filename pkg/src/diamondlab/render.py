"""Deterministic SVG figures: patterns, line diagrams, structure plates, MOG sheets.

Output is plain text assembled from integer coordinates, so identical inputs
give byte-identical files.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .geometry import ProjLine, ProjPoint, four_partition
from .tiles import Pattern, TileType

SUBJECTS = ("pattern", "diagram", "structure-plate", "orbit-sheet", "mog-sheet")

_CLASS_FILLS = ("#000000", "#808080", "#C0C0C0", "#FFFFFF")


@dataclass(frozen=True)
class RenderSpec:
    subject: str = "pattern"
    tile: int = 100
    dark: str = "#000000"
    light: str = "#FFFFFF"
    margin: int = 10

    def __post_init__(self):
        if self.subject not in SUBJECTS:
            raise ValueError(f"unknown subject {self.subject!r}; expected one of {SUBJECTS}")
        if self.tile <= 0 or self.margin < 0:
            raise ValueError("tile size must be positive and margin non-negative")


def dark_triangle(t: TileType, x: int, y: int, size: int) -> list[tuple[int, int]]:
    """Corners of the dark half of tile ``t`` drawn at ``(x, y)``."""
    tl, tr, bl, br = (x, y), (x + size, y), (x, y + size), (x + size, y + size)
    if t.d == 0:  # "\" diagonal: lower-left half holds the bottom edge
        return [tl, bl, br] if t.s else [tl, tr, br]
    return [tr, br, bl] if t.s else [tl, tr, bl]


def _points(corners) -> str:
    return " ".join(f"{px},{py}" for px, py in corners)


def _svg(width: int, height: int, body: list[str], spec: RenderSpec) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="{spec.light}"/>\n'
    )
    return head + "".join(line + "\n" for line in body) + "</svg>\n"


def _pattern_body(p: Pattern, x0: int, y0: int, size: int, spec: RenderSpec) -> list[str]:
    body = [f'<g class="pattern" data-code="{"".join(map(str, p.digits))}">']
    for i, t in enumerate(p):
        r, c = divmod(i, 4)
        corners = dark_triangle(t, x0 + c * size, y0 + r * size, size)
        body.append(f'<polygon class="tile" data-cell="{i}" data-type="{t.digit}" '
                    f'points="{_points(corners)}" fill="{spec.dark}"/>')
    body.append(f'<rect x="{x0}" y="{y0}" width="{4 * size}" height="{4 * size}" '
                f'fill="none" stroke="{spec.dark}" stroke-width="1"/>')
    body.append("</g>")
    return body


def _grid_body(classes: Sequence[Sequence[int]], x0: int, y0: int, size: int, spec: RenderSpec,
               fills: Sequence[str]) -> list[str]:
    body = []
    for k, cells in enumerate(classes):
        for x in cells:
            r, c = divmod(x, 4)
            body.append(f'<rect class="cell" data-cell="{x}" data-class="{k}" x="{x0 + c * size}" '
                        f'y="{y0 + r * size}" width="{size}" height="{size}" fill="{fills[k]}" '
                        f'stroke="{spec.dark}" stroke-width="1"/>')
    return body


def _diagram_classes(point: ProjPoint, constant: int = 0) -> list[list[int]]:
    ones = [x for x in range(16) if point(x) ^ constant]
    zeros = [x for x in range(16) if x not in ones]
    return [ones, zeros]


def render_pattern(p: Pattern, spec: RenderSpec = RenderSpec()) -> str:
    side = 4 * spec.tile + 2 * spec.margin
    return _svg(side, side, _pattern_body(p, spec.margin, spec.margin, spec.tile, spec), spec)


def render_diagram(point: ProjPoint, constant: int = 0, spec: RenderSpec = RenderSpec("diagram")) -> str:
    side = 4 * spec.tile + 2 * spec.margin
    body = [f'<g class="diagram" data-functional="{point.functional}" data-constant="{constant}">']
    body += _grid_body(_diagram_classes(point, constant), spec.margin, spec.margin, spec.tile, spec,
                       (spec.dark, spec.light))
    body.append("</g>")
    return _svg(side, side, body, spec)


def _label(x: int, y: int, text: str, size: int) -> str:
    return f'<text x="{x}" y="{y}" font-family="monospace" font-size="{size}">{text}</text>'


def render_points_sheet(spec: RenderSpec = RenderSpec("diagram", tile=20)) -> str:
    """The 15 points of PG(3,2) as line diagrams, five per row."""
    block = 4 * spec.tile + 2 * spec.margin
    label_h = spec.tile
    body = []
    for k in range(15):
        point = ProjPoint(k + 1)
        x0 = (k % 5) * block + spec.margin
        y0 = (k // 5) * (block + label_h) + spec.margin
        body.append(f'<g class="diagram" data-functional="{point.functional}" data-constant="0">')
        body += _grid_body(_diagram_classes(point), x0, y0, spec.tile, spec, (spec.dark, spec.light))
        body.append(_label(x0, y0 + 4 * spec.tile + label_h - 4, point.label, max(8, spec.tile // 2)))
        body.append("</g>")
    return _svg(5 * block, 3 * (block + label_h), body, spec)


def render_structure_plate(line_list: Sequence[ProjLine], spec: RenderSpec = RenderSpec("structure-plate", tile=12)) -> str:
    """Every line as its triple of diagrams, five structures per row."""
    t, m = spec.tile, spec.margin
    triple_w = 3 * 4 * t + 4 * m
    row_h = 4 * t + 2 * m + t
    body = []
    for k, line in enumerate(line_list):
        x0 = (k % 5) * triple_w + m
        y0 = (k // 5) * row_h + m
        body.append(f'<g class="structure" data-line="{",".join(map(str, line.points))}">')
        for j, f in enumerate(line.points):
            body += _grid_body(_diagram_classes(ProjPoint(f)), x0 + j * (4 * t + m), y0, t, spec,
                               (spec.dark, spec.light))
        body.append(_label(x0, y0 + 4 * t + t, line.label, max(8, t)))
        body.append("</g>")
    rows = (len(line_list) + 4) // 5
    return _svg(5 * triple_w + m, rows * row_h + m, body, spec)


def render_orbit_sheet(classes: dict[ProjLine, Sequence[Pattern]],
                       spec: RenderSpec = RenderSpec("orbit-sheet", tile=6)) -> str:
    """All orbit patterns, one structure class per row."""
    t, m = spec.tile, spec.margin
    block = 4 * t + m
    body = []
    width = 0
    for row, (line, pats) in enumerate(classes.items()):
        body.append(f'<g class="class" data-line="{",".join(map(str, line.points))}">')
        for col, p in enumerate(pats):
            body += _pattern_body(p, m + col * block, m + row * block, t, spec)
        body.append("</g>")
        width = max(width, len(pats))
    return _svg(m + width * block, m + len(classes) * block, body, spec)


def render_mog_sheet(mapping: dict[str, ProjLine], spec: RenderSpec = RenderSpec("mog-sheet", tile=12)) -> str:
    """Each brick split beside the square partition it corresponds to, on the 4 x 6 array."""
    t, m = spec.tile, spec.margin
    block_w = 6 * t + 2 * m
    block_h = 4 * t + 2 * m + t
    body = []
    for k, (split, line) in enumerate(sorted(mapping.items())):
        x0 = (k % 5) * block_w + m
        y0 = (k // 5) * block_h + m
        half = {int(ch) for ch in split.split("|")[0]}
        body.append(f'<g class="mog" data-split="{split}" data-line="{",".join(map(str, line.points))}">')
        for p in range(8):
            col, r = divmod(p, 4)
            fill = spec.dark if p in half else spec.light
            body.append(f'<rect class="brick" data-point="{p}" x="{x0 + col * t}" y="{y0 + r * t}" '
                        f'width="{t}" height="{t}" fill="{fill}" stroke="{spec.dark}" stroke-width="1"/>')
        body += _grid_body(four_partition(line), x0 + 2 * t, y0, t, spec, _CLASS_FILLS)
        body.append(_label(x0, y0 + 4 * t + t, split, max(8, t)))
        body.append("</g>")
    rows = (len(mapping) + 4) // 5
    return _svg(5 * block_w + m, rows * block_h + m, body, spec)
