"""SVG rendering of a multidendrogram.

The picture is laid out in a "north" frame (root at the top, leaves along
the bottom) and then mapped to the requested orientation: south mirrors
it vertically, east and west swap the axes so the root sits on the
right or left.  When bands are shown, a node whose band has non-zero
width gets a filled rectangle from its fusion value to its upper value;
the link to its parent then leaves from the far edge of the band.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple
from xml.sax.saxutils import escape

from ..numeric import format_fixed
from ..proximity_io import Measure
from ..tree import Leaf, Multidendrogram, Node
from .newick import leaf_height

LEAF_SPACING = 30.0
PLOT_HEIGHT = 400.0
MARGIN_SIDE = 70.0
MARGIN_END = 90.0


class Orientation(enum.Enum):
    NORTH = "north"
    SOUTH = "south"
    EAST = "east"
    WEST = "west"


class InvalidAxisRange(ValueError):
    pass


@dataclass(frozen=True)
class RenderOptions:
    """Drawing settings; ``None`` axis fields are derived from the tree."""

    orientation: Orientation = Orientation.NORTH
    show_bands: bool = True
    band_color: str = "#d3d3d3"
    show_axis: bool = True
    axis_min: Optional[float] = None
    axis_max: Optional[float] = None
    tick_separation: Optional[float] = None
    label_decimals: Optional[int] = None
    show_labels: bool = True


def nice_step(span: float) -> float:
    """``span / 10`` rounded to 1, 2 or 5 times a power of ten."""
    if span <= 0:
        return 1.0
    raw = span / 10
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 5, 10):
        if raw <= m * mag * (1 + 1e-9):
            return m * mag
    return 10 * mag


def resolve_options(tree: Multidendrogram, options: Optional[RenderOptions] = None) -> RenderOptions:
    opts = options or RenderOptions()
    values = [v for node in tree.internal_nodes() for v in (node.band_lower, node.band_upper)]
    weights = tree.measure is Measure.WEIGHT
    if weights:
        lo = min(values, default=0.0)
        hi = max(values, default=1.0)
    else:
        lo = min([0.0] + values)
        hi = max(values, default=1.0)
    if hi <= lo:
        hi = lo + 1.0
    decimals = opts.label_decimals
    if decimals is None:
        decimals = tree.precision if tree.precision is not None else 2
    tick = opts.tick_separation
    if tick is None:
        # finer ticks than the label resolution would repeat labels
        tick = max(nice_step(hi - lo), 10.0**-decimals)
    if weights and opts.axis_max is None:
        # leaves need a baseline strictly beyond the tightest fusion weight
        hi = hi + tick
    axis_min = opts.axis_min if opts.axis_min is not None else lo
    axis_max = opts.axis_max if opts.axis_max is not None else hi
    resolved = replace(opts, axis_min=axis_min, axis_max=axis_max, tick_separation=tick, label_decimals=decimals)
    if not axis_min < axis_max:
        raise InvalidAxisRange(f"axis minimum {axis_min} must be below maximum {axis_max}")
    if not tick > 0:
        raise InvalidAxisRange(f"tick separation must be positive, got {tick}")
    return resolved


@dataclass(frozen=True)
class HeightScale:
    """Maps a height value to the vertical pixel coordinate of the north frame."""

    axis_min: float
    axis_max: float
    reversed: bool

    def to_px(self, value: float) -> float:
        frac = (value - self.axis_min) / (self.axis_max - self.axis_min)
        if not self.reversed:
            frac = 1 - frac
        return MARGIN_END + frac * PLOT_HEIGHT

    def leaf_px(self, tree: Multidendrogram) -> float:
        if tree.measure is Measure.WEIGHT:
            return self.to_px(self.axis_max)
        return self.to_px(leaf_height(tree))


def height_scale(tree: Multidendrogram, options: RenderOptions) -> HeightScale:
    return HeightScale(options.axis_min, options.axis_max, tree.measure is Measure.WEIGHT)


@dataclass(frozen=True)
class Line:
    x1: float
    y1: float
    x2: float
    y2: float
    cls: str


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class Text:
    x: float
    y: float
    text: str
    cls: str


def _north_frame(tree: Multidendrogram, opts: RenderOptions):
    scale = height_scale(tree, opts)
    width = 2 * MARGIN_SIDE + tree.n * LEAF_SPACING
    height = 2 * MARGIN_END + PLOT_HEIGHT
    base_y = scale.leaf_px(tree)
    prims: List = []
    xpos = {}

    order = list(tree.root.leaves())
    for k, leaf in enumerate(order):
        xpos[leaf] = MARGIN_SIDE + (k + 0.5) * LEAF_SPACING

    def place(node) -> Tuple[float, float]:
        """Draw *node*; return (x, y) where its parent link attaches."""
        if isinstance(node, Leaf):
            return xpos[node.index], base_y
        anchors = [place(c) for c in node.children]
        y_low = scale.to_px(node.band_lower)
        y_up = scale.to_px(node.band_upper)
        x_left, x_right = anchors[0][0], anchors[-1][0]
        banded = opts.show_bands and node.has_band
        if banded:
            top, bottom = min(y_low, y_up), max(y_low, y_up)
            prims.append(Rect(x_left, top, x_right - x_left, bottom - top))
        for x, y in anchors:
            prims.append(Line(x, y, x, y_low, "link"))
        prims.append(Line(x_left, y_low, x_right, y_low, "junction"))
        x_mid = (x_left + x_right) / 2
        if banded:
            prims.append(Line(x_mid, y_low, x_mid, y_up, "link"))
            return x_mid, y_up
        return x_mid, y_low

    place(tree.root)

    if opts.show_labels:
        for leaf, x in xpos.items():
            prims.append(Text(x, base_y + 8, tree.labels[leaf], "leaf"))

    if opts.show_axis:
        axis_x = MARGIN_SIDE / 2
        prims.append(Line(axis_x, scale.to_px(opts.axis_min), axis_x, scale.to_px(opts.axis_max), "axis"))
        first = math.ceil(opts.axis_min / opts.tick_separation - 1e-9)
        last = math.floor(opts.axis_max / opts.tick_separation + 1e-9)
        for k in range(first, last + 1):
            value = k * opts.tick_separation
            y = scale.to_px(value)
            prims.append(Line(axis_x - 4, y, axis_x, y, "tick"))
            prims.append(Text(axis_x - 6, y, format_fixed(value, opts.label_decimals), "tick"))
    return prims, width, height


def _transform(prims, width, height, orientation: Orientation):
    if orientation is Orientation.NORTH:
        return prims, width, height

    if orientation is Orientation.SOUTH:
        def f(x, y):
            return x, height - y
        size = (width, height)
    elif orientation is Orientation.EAST:
        def f(x, y):
            return height - y, x
        size = (height, width)
    else:
        def f(x, y):
            return y, x
        size = (height, width)

    out = []
    for p in prims:
        if isinstance(p, Line):
            x1, y1 = f(p.x1, p.y1)
            x2, y2 = f(p.x2, p.y2)
            out.append(Line(x1, y1, x2, y2, p.cls))
        elif isinstance(p, Rect):
            ax, ay = f(p.x, p.y)
            bx, by = f(p.x + p.w, p.y + p.h)
            out.append(Rect(min(ax, bx), min(ay, by), abs(bx - ax), abs(by - ay)))
        else:
            x, y = f(p.x, p.y)
            out.append(Text(x, y, p.text, p.cls))
    return out, size[0], size[1]


def layout(tree: Multidendrogram, options: Optional[RenderOptions] = None):
    """Drawing primitives and canvas size for the chosen orientation."""
    opts = resolve_options(tree, options)
    prims, w, h = _north_frame(tree, opts)
    return _transform(prims, w, h, opts.orientation)


def _num(v: float) -> str:
    text = f"{v:.2f}"
    return "0.00" if text == "-0.00" else text


def render_svg(tree: Multidendrogram, options: Optional[RenderOptions] = None) -> str:
    opts = resolve_options(tree, options)
    prims, w, h = layout(tree, opts)
    vertical = opts.orientation in (Orientation.NORTH, Orientation.SOUTH)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(w)}" height="{_num(h)}" '
        f'viewBox="0 0 {_num(w)} {_num(h)}">',
    ]
    rects = [p for p in prims if isinstance(p, Rect)]
    lines = [p for p in prims if isinstance(p, Line)]
    texts = [p for p in prims if isinstance(p, Text)]
    if rects:
        out.append(f'<g class="bands" fill="{escape(opts.band_color)}" stroke="none">')
        for r in rects:
            out.append(f'<rect x="{_num(r.x)}" y="{_num(r.y)}" width="{_num(r.w)}" height="{_num(r.h)}"/>')
        out.append("</g>")
    out.append('<g class="tree" stroke="black" stroke-width="1" fill="none">')
    for ln in lines:
        out.append(
            f'<line class="{ln.cls}" x1="{_num(ln.x1)}" y1="{_num(ln.y1)}" '
            f'x2="{_num(ln.x2)}" y2="{_num(ln.y2)}"/>'
        )
    out.append("</g>")
    if texts:
        out.append('<g class="labels" font-family="Arial" font-size="11" fill="black">')
        for t in texts:
            if t.cls == "leaf" and vertical:
                anchor = "end" if opts.orientation is Orientation.NORTH else "start"
                out.append(
                    f'<text class="leaf" x="{_num(t.x)}" y="{_num(t.y)}" text-anchor="{anchor}" '
                    f'dominant-baseline="middle" transform="rotate(-90 {_num(t.x)} {_num(t.y)})">'
                    f"{escape(t.text)}</text>"
                )
            else:
                anchor = "end" if t.cls == "tick" and vertical else "middle"
                if t.cls == "leaf":
                    anchor = "start" if opts.orientation is Orientation.WEST else "end"
                out.append(
                    f'<text class="{t.cls}" x="{_num(t.x)}" y="{_num(t.y)}" text-anchor="{anchor}" '
                    f'dominant-baseline="middle">{escape(t.text)}</text>'
                )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
