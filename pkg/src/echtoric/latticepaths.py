"""Lattice paths, their point counts and their support functionals.

A convex path runs from the y-axis to the x-axis turning (weakly)
clockwise; together with the axes it closes up a convex lattice region
whose point count Pick's formula delivers as area + boundary/2 + 1.
Degenerate paths (a bare origin, a spike down an axis) are allowed and
the same formula still counts correctly, reading the flat region as a
doubly walked segment.

A concave path steps strictly down-right turning (weakly) counter-
clockwise; its count is taken away from the path points, i.e. only the
region points not sitting on the path itself.

The functional of a path against a domain adds up, edge by edge, the
extremal cross product against the region vertices: the maximum for
convex domains, the minimum over the curved boundary for concave ones.
Cutting a convex path at its own diagonal level produces a ball path
plus two concave paths; count and functional identities across that cut
are what the tests lean on.

oracle_convex_caps_upto recovers capacity values of a convex domain by
raw minimisation over all admissible paths, independently of any weight
calculus, and returns witness paths.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .domains import PointLike, ToricDomain, _as_point, _edge_zone
from .errors import DomainError, LimitError
from .geometry import Point, cross, rational, support_max, support_min
from .weights import left_piece_map, right_piece_map


def _as_lattice_point(p: PointLike) -> Point:
    pt = _as_point(p)
    if pt.x.denominator != 1 or pt.y.denominator != 1:
        raise DomainError(f"path vertex {pt} is not a lattice point")
    return pt


@dataclass(frozen=True)
class LatticePath:
    kind: str
    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("convex", "concave"):
            raise DomainError(f"unknown path kind {self.kind!r}")
        pts = tuple(_as_lattice_point(p) for p in self.vertices)
        object.__setattr__(self, "vertices", pts)
        if not pts:
            raise DomainError("a path needs at least one vertex")
        if any(p.x < 0 or p.y < 0 for p in pts):
            raise DomainError("path vertices must stay in the quadrant")
        if pts[0].x != 0:
            raise DomainError("paths start on the y-axis")
        if pts[-1].y != 0:
            raise DomainError("paths end on the x-axis")
        edges = [q - p for p, q in zip(pts, pts[1:])]
        if any(e.x == 0 and e.y == 0 for e in edges):
            raise DomainError("zero-length path edge")
        if self.kind == "concave":
            for e in edges:
                if not (e.x > 0 and e.y < 0):
                    raise DomainError("concave path edges go strictly down-right")
            for e1, e2 in zip(edges, edges[1:]):
                if cross(e1, e2) < 0:
                    raise DomainError("concave paths turn counterclockwise")
        else:
            zones = [_edge_zone(e) for e in edges]
            for z1, z2 in zip(zones, zones[1:]):
                if z2 < z1:
                    raise DomainError("convex path direction must rotate clockwise")
            for e1, e2 in zip(edges, edges[1:]):
                if cross(e1, e2) > 0:
                    raise DomainError("convex paths turn clockwise")

    def edges(self) -> list[Point]:
        return [q - p for p, q in zip(self.vertices, self.vertices[1:])]

    @classmethod
    def convex(cls, points: Iterable[PointLike]) -> "LatticePath":
        return cls("convex", tuple(points))

    @classmethod
    def concave(cls, points: Iterable[PointLike]) -> "LatticePath":
        return cls("concave", tuple(points))


def _twice_area_under(path: LatticePath) -> int:
    # shoelace of the cycle origin, v0, ..., vend; the two axis legs
    # contribute nothing because they head straight at the origin
    total = 0
    for p, q in zip(path.vertices, path.vertices[1:]):
        total += int(cross(p, q))
    return abs(total)


def _boundary_points(path: LatticePath) -> int:
    pts = path.vertices
    edge_gcds = sum(gcd(int(abs(q.x - p.x)), int(abs(q.y - p.y)))
                    for p, q in zip(pts, pts[1:]))
    return int(pts[0].y) + int(pts[-1].x) + edge_gcds


def count_convex(path: LatticePath) -> int:
    """Lattice points in the closed region cut off by the path and axes."""
    twice_a = _twice_area_under(path)
    b = _boundary_points(path)
    assert (twice_a + b) % 2 == 0
    return (twice_a + b) // 2 + 1


def count_concave(path: LatticePath) -> int:
    """Lattice points of the region that do not lie on the path itself."""
    pts = path.vertices
    on_path = 1 + sum(gcd(int(abs(q.x - p.x)), int(abs(q.y - p.y)))
                      for p, q in zip(pts, pts[1:]))
    return count_convex(path) - on_path


def ell_convex(domain: ToricDomain, path: LatticePath) -> Fraction:
    """Sum over path edges of the maximal cross product with the region."""
    if domain.kind != "convex":
        raise DomainError("ell_convex expects a convex domain")
    poly = domain.region_polygon()
    return sum((support_max(poly, e) for e in path.edges()), Fraction(0))


def ell_concave(domain: Optional[ToricDomain], path: LatticePath) -> Fraction:
    """Sum of minimal cross products against the curved boundary.

    domain=None stands for an empty complement piece and contributes 0
    no matter the path; this keeps cut identities uniform when a cut
    produces only one piece.
    """
    if domain is None:
        return Fraction(0)
    if domain.kind != "concave":
        raise DomainError("ell_concave expects a concave domain or None")
    return sum((support_min(domain.boundary, e) for e in path.edges()),
               Fraction(0))


@dataclass(frozen=True)
class PathSplit:
    """A convex path cut at its own diagonal x + y = level.

    head is the straight diagonal path of that level, left and right are
    the two flanks folded into standard concave position (possibly the
    trivial one-point path when a flank is empty).
    """

    level: Fraction
    head: LatticePath
    left: LatticePath
    right: LatticePath


def split_path(path: LatticePath, level=None) -> PathSplit:
    if path.kind != "convex":
        raise DomainError("only convex paths are split")
    s = [p.x + p.y for p in path.vertices]
    a = max(s)
    if level is not None and rational(level) != a:
        raise DomainError(f"path peaks at level {a}, not {level}")
    i = s.index(a)
    j = len(s) - 1 - s[::-1].index(a)
    lm = left_piece_map(a)
    rm = right_piece_map(a)
    left = LatticePath.concave(
        [lm.apply(p) for p in path.vertices[i::-1]])
    right = LatticePath.concave(
        [rm.apply(p) for p in reversed(path.vertices[j:])])
    if a == 0:
        head = LatticePath.convex([Point(0, 0)])
    else:
        head = LatticePath.convex([Point(0, a), Point(a, 0)])
    return PathSplit(a, head, left, right)


def _clockwise_primitives(box: int) -> list[Point]:
    dirs = [Point(dx, dy)
            for dx in range(1, box + 1) for dy in range(1, box + 1)
            if gcd(dx, dy) == 1]
    dirs += [Point(1, 0)]
    dirs += [Point(dx, dy)
             for dx in range(1, box + 1) for dy in range(-box, 0)
             if gcd(dx, -dy) == 1]
    dirs += [Point(0, -1)]
    dirs += [Point(dx, dy)
             for dx in range(-box, 0) for dy in range(-box, 0)
             if gcd(-dx, -dy) == 1]

    def cmp(u: Point, v: Point) -> int:
        zu, zv = _edge_zone(u), _edge_zone(v)
        if zu != zv:
            return -1 if zu < zv else 1
        c = cross(u, v)
        return -1 if c < 0 else (1 if c > 0 else 0)

    return sorted(dirs, key=functools.cmp_to_key(cmp))


# best candidate per point-count slot: scaled integer value plus vertices
_Best = Optional[tuple[Fraction, tuple[tuple[int, int], ...]]]


def _search(domain: ToricDomain, kmax: int, box: int,
            radius: Optional[int] = None,
            initial: Optional[list[_Best]] = None) -> list[_Best]:
    """Branch-and-bound over clockwise paths in a box.

    Returns, per point count k = 0..kmax, the least functional value
    among paths whose closed region has k+1 lattice points, with a
    witness.  radius restricts the direction set (used for a cheap
    seeding pass); initial primes the incumbent table with known paths.

    The whole walk runs on plain integers: direction supports are
    scaled by a common denominator and vertices stay integer pairs.
    """
    poly = domain.region_polygon()
    dirs = _clockwise_primitives(box)
    if radius is not None:
        dirs = [d for d in dirs
                if max(abs(int(d.x)), abs(int(d.y))) <= radius]
    sup = [support_max(poly, d) for d in dirs]
    den = lcm(*(s.denominator for s in sup))
    sup_i = [int(s * den) for s in sup]
    assert all(s > 0 for s in sup_i)
    dvec = [(int(d.x), int(d.y)) for d in dirs]
    ndirs = len(dirs)

    best: list[Optional[tuple[int, tuple[tuple[int, int], ...]]]]
    best = [None] * (kmax + 1)
    if initial is not None:
        for k, cand in enumerate(initial):
            if cand is not None:
                scaled = cand[0] * den
                assert scaled.denominator == 1
                best[k] = (int(scaled), cand[1])

    # suff[j] = worst incumbent over slots >= j, None while one is open;
    # a partial path with p points on it can only ever land in slots
    # >= p - 1, so reaching suff[p - 1] with its value already there
    # means no strict improvement can come out of it
    suff: list[Optional[int]] = [None] * (kmax + 2)
    dirty = [True]

    def pruned(value: int, kmin: int) -> bool:
        if kmin > kmax:
            return True
        if dirty[0]:
            run: Optional[int] = -1
            for j in range(kmax, -1, -1):
                b = best[j]
                if b is None or run is None:
                    run = None
                elif b[0] > run:
                    run = b[0]
                suff[j] = run
            dirty[0] = False
        bound = suff[kmin]
        return bound is not None and value >= bound

    def consider(path: list[tuple[int, int]], twice_area: int, ell: int,
                 steps: int) -> None:
        # boundary of the closed cycle: both axis legs plus the path
        # edges, whose primitive steps were counted with multiplicity
        boundary = path[0][1] + path[-1][0] + steps
        assert (twice_area + boundary) % 2 == 0
        k = (twice_area + boundary) // 2
        if k > kmax:
            return
        cand = (ell, tuple(path))
        if best[k] is None or cand < best[k]:
            best[k] = cand
            dirty[0] = True

    def walk(path: list[tuple[int, int]], onpath: set[tuple[int, int]],
             last_dir: int, signed2: int, ell: int, steps: int) -> None:
        cx, cy = path[-1]
        if cy == 0:
            consider(path, abs(signed2), ell, steps)
            # fall through: an axis run may still extend to the right
        base_kmin = len(onpath) - 1
        for di in range(last_dir + 1, ndirs):
            ddx, ddy = dvec[di]
            if last_dir >= 0:
                pdx, pdy = dvec[last_dir]
                if pdx * ddy - pdy * ddx > 0:
                    break  # over 180 degrees clockwise; only gets worse
            step_ell = sup_i[di]
            fan = cx * ddy - cy * ddx
            nx, ny = cx, cy
            m = 0
            gained: list[tuple[int, int]] = []
            while True:
                m += 1
                nx += ddx
                ny += ddy
                if nx < 0 or ny < 0 or nx > box or ny > box:
                    break
                s2 = signed2 + fan * m
                if abs(s2) > 2 * kmax:
                    break
                e = ell + step_ell * m
                if pruned(e, base_kmin):
                    break
                gained.append((nx, ny))
                added = [p for p in gained if p not in onpath]
                if pruned(e, len(onpath) + len(added) - 1):
                    break
                path.append((nx, ny))
                onpath.update(added)
                walk(path, onpath, di, s2, e, steps + m)
                onpath.difference_update(added)
                path.pop()

    for y0 in range(kmax + 1):
        onpath = {(0, t) for t in range(y0 + 1)}
        walk([(0, y0)], onpath, -1, 0, 0, 0)
    return [None if b is None else (Fraction(b[0], den), b[1])
            for b in best]


def oracle_convex_caps_upto(domain: ToricDomain, kmax: int,
                            ) -> list[tuple[Fraction, LatticePath]]:
    """Capacity values c_0..c_kmax by exhaustive path search, with witnesses.

    Minimises the path functional over every admissible path with the
    right point count.  A restricted-direction pass seeds the incumbent
    table so the full pass can prune from the start.  The search box
    grows if an optimum ever touches it, which for sane inputs it does
    not.
    """
    if domain.kind != "convex":
        raise DomainError("the path oracle works on convex domains")
    if kmax < 0:
        raise DomainError("kmax must be nonnegative")
    box = 2 * (kmax + 1)
    best: Optional[list[_Best]] = None
    for _ in range(3):
        best = _search(domain, kmax, box, radius=3, initial=best)
        if any(b is None for b in best):
            raise LimitError("path search box too small to close any path")
        best = _search(domain, kmax, box, initial=best)
        hits = any(x == box or y == box
                   for b in best for x, y in b[1])  # type: ignore[index]
        if not hits:
            return [(b[0], LatticePath.convex(b[1]))
                    for b in best]  # type: ignore[index]
        box *= 2
    raise LimitError("optimal paths keep touching the search box")


def oracle_convex_cap(domain: ToricDomain, k: int,
                      ) -> tuple[Fraction, LatticePath]:
    return oracle_convex_caps_upto(domain, k)[k]
