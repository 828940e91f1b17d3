"""Plain SVG 1.1 renderings of decompositions and approximations.

Documents are built by string assembly, no markup library.  Model
coordinates are exact rationals until the last step, where they are
quantised to four decimals with integer arithmetic, so the output bytes
depend only on the input.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain
from typing import Iterable, Sequence

from .domains import ToricDomain
from .geometry import Point
from .weights import (DEFAULT_MAX_NODES, DecompositionNode, concave_weights,
                      convex_weights, inorder)

_PALETTE = (
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
)
_HEAD_FILL = "#d9d9d9"

SIZE = 600
MARGIN = 24


def _triangle(node: DecompositionNode) -> tuple[Point, Point, Point]:
    a = node.value
    m = node.to_original
    return (m.apply(Point(0, 0)), m.apply(Point(0, a)), m.apply(Point(a, 0)))


def decomposition_polygons(domain: ToricDomain,
                           max_nodes: int = DEFAULT_MAX_NODES,
                           ) -> list[tuple[Point, ...]]:
    """One triangle per weight; a convex domain adds its head simplex first."""
    if domain.kind == "concave":
        _, tree = concave_weights(domain, max_nodes)
        return [_triangle(n) for n in inorder(tree)]
    _, decomp = convex_weights(domain, max_nodes)
    b = decomp.head
    polys: list[tuple[Point, ...]] = [(Point(0, 0), Point(0, b), Point(b, 0))]
    for node in chain(inorder(decomp.left), inorder(decomp.right)):
        polys.append(_triangle(node))
    return polys


def _quant(v: Fraction) -> str:
    # round half up at 1e-4; canvas coordinates are nonnegative here
    q = v * 10000
    i = (2 * q.numerator + q.denominator) // (2 * q.denominator)
    return f"{i // 10000}.{i % 10000:04d}"


class _Canvas:
    """Maps model points onto a square canvas, y axis pointing up."""

    def __init__(self, points: Iterable[Point]) -> None:
        pts = list(points)
        xs = [p.x for p in pts] + [Fraction(0)]
        ys = [p.y for p in pts] + [Fraction(0)]
        self.xmin = min(xs)
        self.ymin = min(ys)
        span = max(max(xs) - self.xmin, max(ys) - self.ymin, Fraction(1))
        self.scale = Fraction(SIZE - 2 * MARGIN) / span

    def map(self, p: Point) -> tuple[str, str]:
        cx = MARGIN + (p.x - self.xmin) * self.scale
        cy = SIZE - MARGIN - (p.y - self.ymin) * self.scale
        return _quant(cx), _quant(cy)

    def points_attr(self, poly: Sequence[Point]) -> str:
        return " ".join("%s,%s" % self.map(p) for p in poly)


def _document(body: list[str]) -> str:
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">')
    return "\n".join([head] + body + ["</svg>", ""])


def _axes(canvas: _Canvas, xmax: Fraction, ymax: Fraction) -> list[str]:
    ox, oy = canvas.map(Point(0, 0))
    xx, xy = canvas.map(Point(xmax, 0))
    yx, yy = canvas.map(Point(0, ymax))
    style = 'stroke="#888888" stroke-width="1"'
    return [f'<line x1="{ox}" y1="{oy}" x2="{xx}" y2="{xy}" {style} />',
            f'<line x1="{ox}" y1="{oy}" x2="{yx}" y2="{yy}" {style} />']


def render_decomposition(domain: ToricDomain,
                         max_nodes: int = DEFAULT_MAX_NODES) -> str:
    polys = decomposition_polygons(domain, max_nodes)
    canvas = _Canvas(chain(domain.boundary, *polys))
    body = _axes(canvas, max(p.x for poly in polys for p in poly),
                 max(p.y for poly in polys for p in poly))
    offset = 0
    if domain.kind == "convex":
        body.append(f'<polygon points="{canvas.points_attr(polys[0])}" '
                    f'fill="{_HEAD_FILL}" fill-opacity="0.9" '
                    f'stroke="#555555" stroke-width="1" />')
        offset = 1
    for i, poly in enumerate(polys[offset:]):
        color = _PALETTE[i % len(_PALETTE)]
        body.append(f'<polygon points="{canvas.points_attr(poly)}" '
                    f'fill="{color}" fill-opacity="0.8" '
                    f'stroke="#333333" stroke-width="1" />')
    outline = canvas.points_attr(domain.region_polygon())
    body.append(f'<polyline points="{outline}" fill="none" '
                f'stroke="#000000" stroke-width="2" />')
    return _document(body)


def render_approximation(domain: ToricDomain, approx: ToricDomain) -> str:
    """The domain filled solid with the approximating domain drawn over it."""
    canvas = _Canvas(chain(domain.boundary, approx.boundary))
    xmax = max(domain.xmax(), approx.xmax())
    ymax = max(domain.ymax(), approx.ymax())
    body = _axes(canvas, xmax, ymax)
    body.append(f'<polygon points="{canvas.points_attr(domain.region_polygon())}" '
                f'fill="{_PALETTE[0]}" fill-opacity="0.55" '
                f'stroke="#333333" stroke-width="1" />')
    body.append(f'<polygon points="{canvas.points_attr(approx.region_polygon())}" '
                f'fill="{_PALETTE[1]}" fill-opacity="0.35" '
                f'stroke="#b3541e" stroke-width="2" stroke-dasharray="6 3" />')
    return _document(body)
