# svg_render.py
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from src.front_core import EventKind, FrontDiagram

log = logging.getLogger("SvgRender")

Point = Tuple[float, float]
Cubic = Tuple[Point, Point, Point, Point]

DEFAULT_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
CROSSING_GAP = 0.2


@dataclass(frozen=True)
class SvgOptions:
    x_step: float = 40.0
    z_step: float = 30.0
    margin: float = 20.0
    stroke_width: float = 2.0
    palette: Tuple[str, ...] = DEFAULT_PALETTE

    @classmethod
    def from_config(cls, config: Optional[Mapping] = None) -> "SvgOptions":
        svg_cfg = (config or {}).get("svg", {})
        defaults = cls()
        return cls(
            x_step=float(svg_cfg.get("x_step", defaults.x_step)),
            z_step=float(svg_cfg.get("z_step", defaults.z_step)),
            margin=float(svg_cfg.get("margin", defaults.margin)),
            stroke_width=float(svg_cfg.get("stroke_width", defaults.stroke_width)),
            palette=tuple(svg_cfg.get("palette", defaults.palette)) or DEFAULT_PALETTE,
        )


class SvgDocument:
    def __init__(self, width: float, height: float):
        self.width = width
        self.height = height
        self.attributes: Dict[str, str] = {}
        self.body: List[str] = []

    def path(self, d: str, stroke: str, width: float, css_class: str, extra: str = ""):
        self.body.append(
            f'<path class="{css_class}" d="{d}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width:.2f}" stroke-linecap="round"{extra}/>'
        )

    def line(self, start: Point, end: Point, stroke: str, width: float, css_class: str):
        self.body.append(
            f'<line class="{css_class}" x1="{start[0]:.2f}" y1="{start[1]:.2f}" '
            f'x2="{end[0]:.2f}" y2="{end[1]:.2f}" stroke="{stroke}" stroke-width="{width:.2f}"/>'
        )

    def get_svg(self) -> str:
        attrs = "".join(f' {k}="{v}"' for k, v in self.attributes.items())
        head = (
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{self.width:.2f}" '
            f'height="{self.height:.2f}" viewBox="0 0 {self.width:.2f} {self.height:.2f}"{attrs}>\n'
        )
        return head + "".join(line + "\n" for line in self.body) + "</svg>\n"


def _split(curve: Cubic, t: float) -> Tuple[Cubic, Cubic]:
    def lerp(a: Point, b: Point) -> Point:
        return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)

    p0, p1, p2, p3 = curve
    a, b, c = lerp(p0, p1), lerp(p1, p2), lerp(p2, p3)
    d, e = lerp(a, b), lerp(b, c)
    f = lerp(d, e)
    return (p0, a, d, f), (f, e, c, p3)


def _sub_curve(curve: Cubic, t0: float, t1: float) -> Cubic:
    head = curve if t1 >= 1.0 else _split(curve, t1)[0]
    if t0 <= 0.0:
        return head
    return _split(head, t0 / t1)[1]


def _ease(start: Point, end: Point) -> Cubic:
    mid = (start[0] + end[0]) / 2
    return start, (mid, start[1]), (mid, end[1]), end


def _cusp(tip: Point, end: Point) -> Cubic:
    # horizontal tangent at the tip gives the semicubical point
    return tip, ((2 * tip[0] + end[0]) / 3, tip[1]), ((tip[0] + 2 * end[0]) / 3, end[1]), end


def _fmt(curve: Cubic) -> str:
    (x0, y0), (x1, y1), (x2, y2), (x3, y3) = curve
    return f"M {x0:.2f} {y0:.2f} C {x1:.2f} {y1:.2f} {x2:.2f} {y2:.2f} {x3:.2f} {y3:.2f}"


class _Layout:
    def __init__(self, diagram: FrontDiagram, options: SvgOptions):
        self.options = options
        self.levels = max(diagram.strand_counts()) if diagram.events or diagram.base_strands else 0
        self.columns = max(len(diagram.events), 1)
        self.width = 2 * options.margin + self.columns * options.x_step
        self.height = 2 * options.margin + max(self.levels, 1) * options.z_step

    def x(self, boundary: int) -> float:
        """x of the boundary before event `boundary` (event k is drawn across [x(k), x(k+1)])."""
        return self.options.margin + boundary * self.options.x_step

    def y(self, position: float) -> float:
        return self.options.margin + (self.levels - position + 0.5) * self.options.z_step


def render_svg(diagram: FrontDiagram, options: Optional[SvgOptions] = None) -> str:
    """Front drawn left to right on [0, 2pi] with one path per component."""
    options = options or SvgOptions()
    trace = diagram.trace
    layout = _Layout(diagram, options)
    pieces: Dict[int, List[str]] = {c: [] for c in range(trace.component_count)}

    def add(arc: int, curve: Cubic):
        pieces[trace.arc_component[arc]].append(_fmt(curve))

    x_start, x_end = layout.x(0), layout.x(layout.columns)
    if not diagram.events:
        for position, arc in enumerate(trace.slices[0], start=1):
            add(arc, _ease((x_start, layout.y(position)), (x_end, layout.y(position))))

    for idx, ev in enumerate(diagram.events):
        left, right = trace.slices[idx], trace.slices[idx + 1]
        x0, x1 = layout.x(idx), layout.x(idx + 1)
        i = ev.position
        if ev.kind is EventKind.CROSSING:
            moves = {p: p for p in range(1, len(left) + 1)}
            moves[i], moves[i + 1] = i + 1, i
        elif ev.kind is EventKind.LEFT_CUSP:
            moves = {p: (p if p < i else p + 2) for p in range(1, len(left) + 1)}
            tip = (x0, layout.y(i + 0.5))
            add(right[i - 1], _cusp(tip, (x1, layout.y(i))))
            add(right[i], _cusp(tip, (x1, layout.y(i + 1))))
        else:
            moves = {p: (p if p < i else p - 2) for p in range(1, len(left) + 1) if p not in (i, i + 1)}
            tip = (x1, layout.y(i + 0.5))
            add(left[i - 1], tuple(reversed(_cusp(tip, (x0, layout.y(i))))))
            add(left[i], tuple(reversed(_cusp(tip, (x0, layout.y(i + 1))))))
        for p, q in moves.items():
            curve = _ease((x0, layout.y(p)), (x1, layout.y(q)))
            arc = left[p - 1]
            if ev.kind is EventKind.CROSSING and p == i:
                # the rising strand has the larger slope and is broken
                add(arc, _sub_curve(curve, 0.0, 0.5 - CROSSING_GAP / 2))
                add(arc, _sub_curve(curve, 0.5 + CROSSING_GAP / 2, 1.0))
            else:
                add(arc, curve)

    doc = SvgDocument(layout.width, layout.height)
    doc.attributes.update({
        "data-components": str(trace.component_count),
        "data-crossings": str(len(trace.crossings)),
        "data-cusps": str(len(trace.cusps)),
    })
    for boundary in (x_start, x_end):
        doc.line((boundary, options.margin / 2), (boundary, layout.height - options.margin / 2),
                 "#999999", 0.5, "seam")
    for component in range(trace.component_count):
        colour = options.palette[diagram.label(component) % len(options.palette)]
        extra = f' data-label="{diagram.label(component)}"'
        doc.path(" ".join(pieces[component]), colour, options.stroke_width,
                 "component", extra)
    log.debug(f"Rendered {diagram} as {layout.width:.0f}x{layout.height:.0f} SVG")
    return doc.get_svg()


def render_steps(diagrams: Sequence[FrontDiagram], options: Optional[SvgOptions] = None) -> List[str]:
    return [render_svg(d, options) for d in diagrams]
