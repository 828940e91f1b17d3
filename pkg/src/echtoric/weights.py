"""Weight expansions of toric domains via repeated corner cuts.

A concave domain is peeled by the triangle it shares with the corner:
the cut level is the minimum of x + y over boundary vertices, attained
at one vertex or one edge of slope -1.  The parts left and right of the
cut are normalised back into standard position by integral shears and
peeled again, which terminates for rational data.  The multiset of cut
levels is the weight sequence; the recursion tree remembers enough to
rebuild everything (domains per node, the shear used on each side and
the accumulated map back to the input coordinates).

A convex domain is handled dually: the head weight is the maximum of
x + y, the two boundary pieces beyond the cut line are folded into
standard concave position (this reverses their orientation) and their
weight sequences are recorded with the head.

Sum rules tie the output to area: for a concave domain the squares of
the weights add up to twice the area, for a convex one the head square
minus the weight squares does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .domains import ToricDomain
from .errors import DomainError, GeometryError, LimitError
from .geometry import AffineUnimodularMap, Point, RationalLike, rational

DEFAULT_MAX_NODES = 10_000


def left_cut_map(a: Fraction) -> AffineUnimodularMap:
    """(x, y) -> (x, x + y - a): part of a concave boundary left of the cut."""
    return AffineUnimodularMap(1, 0, 1, 1, Point(0, -a))


def right_cut_map(a: Fraction) -> AffineUnimodularMap:
    """(x, y) -> (x + y - a, y): part of a concave boundary right of the cut."""
    return AffineUnimodularMap(1, 1, 0, 1, Point(-a, 0))


def left_piece_map(b: Fraction) -> AffineUnimodularMap:
    """(x, y) -> (b - x - y, x): convex piece between the y-axis and the cut."""
    return AffineUnimodularMap(-1, -1, 1, 0, Point(b, 0))


def right_piece_map(b: Fraction) -> AffineUnimodularMap:
    """(x, y) -> (y, b - x - y): convex piece between the cut and the x-axis."""
    return AffineUnimodularMap(0, 1, -1, -1, Point(0, b))


@dataclass(frozen=True)
class WeightExpansion:
    """Weights sorted in nonincreasing order; head is None for concave input."""

    head: Optional[Fraction]
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ws = tuple(sorted((rational(w) for w in self.weights), reverse=True))
        if any(w <= 0 for w in ws):
            raise DomainError("weights must be positive")
        head = None if self.head is None else rational(self.head)
        if head is not None and head <= 0:
            raise DomainError("head weight must be positive")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "head", head)

    def weight_squares(self) -> Fraction:
        return sum((w * w for w in self.weights), Fraction(0))


@dataclass(frozen=True)
class DecompositionNode:
    """One corner cut of a concave domain.

    value is the cut level, x1 and x2 the x-coordinates of the first and
    last boundary vertex on the cut line (they differ exactly when the
    boundary has an edge of slope -1 there).  domain is the normalised
    domain this node peeled, to_original maps its coordinates back to
    the coordinates of the domain the recursion started from.
    """

    value: Fraction
    x1: Fraction
    x2: Fraction
    domain: ToricDomain
    to_original: AffineUnimodularMap
    left_map: Optional[AffineUnimodularMap]
    right_map: Optional[AffineUnimodularMap]
    left: Optional["DecompositionNode"]
    right: Optional["DecompositionNode"]


@dataclass(frozen=True)
class ConvexDecomposition:
    """Head cut of a convex domain plus the peeled side pieces."""

    head: Fraction
    x1: Fraction
    x2: Fraction
    domain: ToricDomain
    left_map: Optional[AffineUnimodularMap]
    right_map: Optional[AffineUnimodularMap]
    left: Optional[DecompositionNode]
    right: Optional[DecompositionNode]


def _min_cut(domain: ToricDomain) -> tuple[Fraction, int, int]:
    s = [p.x + p.y for p in domain.boundary]
    a = min(s)
    i = s.index(a)
    j = len(s) - 1 - s[::-1].index(a)
    if j - i > 1:
        raise GeometryError("x + y is not unimodal along the boundary")
    return a, i, j


def _max_cut(domain: ToricDomain) -> tuple[Fraction, int, int]:
    s = [p.x + p.y for p in domain.boundary]
    b = max(s)
    i = s.index(b)
    j = len(s) - 1 - s[::-1].index(b)
    if j - i > 1:
        raise GeometryError("x + y is not unimodal along the boundary")
    return b, i, j


class _Budget:
    def __init__(self, limit: int) -> None:
        self.left = limit
        self.limit = limit

    def tick(self) -> None:
        if self.left <= 0:
            raise LimitError(
                f"decomposition exceeded the {self.limit} node limit")
        self.left -= 1


def _concave_tree(domain: ToricDomain, to_original: AffineUnimodularMap,
                  budget: _Budget) -> DecompositionNode:
    # explicit stack with parent back-links so that very unbalanced
    # trees (long Euclid runs) cannot overflow the interpreter stack
    entries: list[dict] = []
    work = [(domain, to_original, -1, "left")]
    while work:
        dom, to_orig, parent, side = work.pop()
        budget.tick()
        idx = len(entries)
        if parent >= 0:
            entries[parent][side] = idx
        a, i, j = _min_cut(dom)
        bd = dom.boundary
        n = len(bd) - 1
        lm = rm = None
        if i > 0:
            lm = left_cut_map(a)
            ldom = ToricDomain.concave([lm.apply(p) for p in bd[:i + 1]])
            work.append((ldom, to_orig.compose(lm.inverse()), idx, "left"))
        if j < n:
            rm = right_cut_map(a)
            rdom = ToricDomain.concave([rm.apply(p) for p in bd[j:]])
            work.append((rdom, to_orig.compose(rm.inverse()), idx, "right"))
        entries.append({
            "value": a, "x1": bd[i].x, "x2": bd[j].x, "domain": dom,
            "to_original": to_orig, "left_map": lm, "right_map": rm,
            "left": None, "right": None,
        })
    nodes: list[Optional[DecompositionNode]] = [None] * len(entries)
    for idx in range(len(entries) - 1, -1, -1):
        e = entries[idx]
        nodes[idx] = DecompositionNode(
            value=e["value"], x1=e["x1"], x2=e["x2"], domain=e["domain"],
            to_original=e["to_original"],
            left_map=e["left_map"], right_map=e["right_map"],
            left=None if e["left"] is None else nodes[e["left"]],
            right=None if e["right"] is None else nodes[e["right"]],
        )
    root = nodes[0]
    assert root is not None
    return root


def inorder(node: Optional[DecompositionNode]) -> Iterator[DecompositionNode]:
    """Left subtree, node, right subtree; iterative for deep trees."""
    stack: list[DecompositionNode] = []
    cur = node
    while stack or cur is not None:
        while cur is not None:
            stack.append(cur)
            cur = cur.left
        cur = stack.pop()
        yield cur
        cur = cur.right


def node_count(node: Optional[DecompositionNode]) -> int:
    return sum(1 for _ in inorder(node))


def tree_values(node: Optional[DecompositionNode]) -> tuple[Fraction, ...]:
    """Cut levels in in-order, which is left-to-right along the boundary."""
    return tuple(n.value for n in inorder(node))


def concave_weights(domain: ToricDomain,
                    max_nodes: int = DEFAULT_MAX_NODES,
                    ) -> tuple[WeightExpansion, DecompositionNode]:
    if domain.kind != "concave":
        raise DomainError("concave_weights needs a concave domain")
    tree = _concave_tree(domain, AffineUnimodularMap.identity(),
                         _Budget(max_nodes))
    return WeightExpansion(None, tree_values(tree)), tree


def convex_weights(domain: ToricDomain,
                   max_nodes: int = DEFAULT_MAX_NODES,
                   ) -> tuple[WeightExpansion, ConvexDecomposition]:
    if domain.kind != "convex":
        raise DomainError("convex_weights needs a convex domain")
    b, i, j = _max_cut(domain)
    bd = domain.boundary
    n = len(bd) - 1
    budget = _Budget(max_nodes)
    budget.tick()  # the head takes one slot
    lm = rm = None
    left = right = None
    if i > 0:
        lm = left_piece_map(b)
        # folding reverses the orientation of the piece
        ldom = ToricDomain.concave([lm.apply(p) for p in bd[i::-1]])
        left = _concave_tree(ldom, lm.inverse(), budget)
    if j < n:
        rm = right_piece_map(b)
        rdom = ToricDomain.concave([rm.apply(p) for p in reversed(bd[j:])])
        right = _concave_tree(rdom, rm.inverse(), budget)
    decomp = ConvexDecomposition(
        head=b, x1=bd[i].x, x2=bd[j].x, domain=domain,
        left_map=lm, right_map=rm, left=left, right=right)
    weights = tree_values(left) + tree_values(right)
    return WeightExpansion(b, weights), decomp


def build_short_concave(values: Sequence[RationalLike]) -> ToricDomain:
    """Concave domain whose weight expansion is the given multiset.

    The values must be positive and nonincreasing.  The construction
    stacks the triangles along the x-axis: the largest sits at the
    corner and each later one is sheared onto the free boundary edge.
    Peeling the result recovers exactly the input values.
    """
    vals = [rational(v) for v in values]
    if not vals:
        raise DomainError("need at least one weight")
    if any(v <= 0 for v in vals):
        raise DomainError("weights must be positive")
    if any(v2 > v1 for v1, v2 in zip(vals, vals[1:])):
        raise DomainError("weights must be nonincreasing")
    # built back to front; the shear (x, y) -> (x - y + a, y) plants the
    # already built domain onto the slope -1 edge of the triangle of
    # size a
    boundary = [Point(0, vals[-1]), Point(vals[-1], 0)]
    for a in reversed(vals[:-1]):
        shear = AffineUnimodularMap(1, -1, 0, 1, Point(a, 0))
        boundary = [Point(0, a)] + [shear.apply(p) for p in boundary]
    return ToricDomain.concave(boundary)
