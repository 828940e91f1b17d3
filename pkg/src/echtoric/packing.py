"""Ball packing decisions by repeated defect moves.

A packing problem is a ball size b together with the sizes of balls to
pack into it.  The state vector (b; a_1, ..., a_n) keeps the sizes
sorted, padded with zeros so that at least three are present.  One move
computes the defect d = a_1 + a_2 + a_3 - b and, when positive,
subtracts it from the head and from the three leading sizes; the
quantity b^2 - sum a_i^2 is untouched by this.  The procedure stops
when the defect is no longer positive (reduced vector) or an entry went
negative.

The packing exists exactly when the reduction ends nonnegative and the
squared sizes fit into the head square.  Each verdict carries the whole
trace so a reduction can be replayed and audited step by step.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .capacities import ball_caps, seq_sum_many
from .errors import DomainError
from .geometry import RationalLike, rational

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class PackingInstance:
    """Open balls of the given sizes, to pack into an open ball."""

    target: Fraction
    balls: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        head = rational(self.target)
        if head <= 0:
            raise DomainError("packing target size must be positive")
        sizes = [rational(a) for a in self.balls]
        if any(a < 0 for a in sizes):
            raise DomainError("ball sizes must be nonnegative")
        sizes = sorted((a for a in sizes if a > 0), reverse=True)
        object.__setattr__(self, "target", head)
        object.__setattr__(self, "balls", tuple(sizes))

    def vector(self) -> Vector:
        return _canonical((self.target,) + self.balls)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a reduction, with the full trace for replay.

    failures lists, in canonical order, which of the two criteria broke:
    "negative-entry" when the reduction produced a negative size and
    "volume" when the squares do not fit.  Feasible means neither did.
    volume_slack is the conserved quantity b^2 - sum a_i^2.
    """

    feasible: bool
    trace: tuple[Vector, ...]
    failures: tuple[str, ...]
    terminal: Vector
    volume_slack: Fraction


def _canonical(vec: Sequence[RationalLike]) -> Vector:
    entries = [rational(v) for v in vec]
    if not entries:
        raise DomainError("empty packing vector")
    body = sorted(entries[1:], reverse=True)
    while len(body) < 3:
        body.append(Fraction(0))
    return (entries[0],) + tuple(body)


def defect(vec: Sequence[RationalLike]) -> Fraction:
    v = _canonical(vec)
    return v[1] + v[2] + v[3] - v[0]


def cremona_step(vec: Sequence[RationalLike]) -> Vector:
    """Apply one defect move to a non-reduced vector."""
    v = _canonical(vec)
    d = v[1] + v[2] + v[3] - v[0]
    if d <= 0:
        raise DomainError("vector is already reduced")
    moved = (v[0] - d, v[1] - d, v[2] - d, v[3] - d) + v[4:]
    return _canonical(moved)


def cremona_reduce(vec: Sequence[RationalLike]) -> tuple[Vector, ...]:
    """Trace of vectors from the input down to a terminal one.

    Terminal means reduced (defect <= 0) or containing a negative
    entry.  Rational inputs always terminate: the head drops by at
    least one grid unit of the common denominator per move and a
    negative head already counts as a negative entry.
    """
    cur = _canonical(vec)
    grid = lcm(*(v.denominator for v in cur))
    slack = cur[0] ** 2 - sum((a * a for a in cur[1:]), Fraction(0))
    trace = [cur]
    while min(cur) >= 0 and defect(cur) > 0:
        nxt = cremona_step(cur)
        assert nxt[0] < cur[0]
        assert all(grid % v.denominator == 0 for v in nxt)
        assert nxt[0] ** 2 - sum((a * a for a in nxt[1:]),
                                 Fraction(0)) == slack
        cur = nxt
        trace.append(cur)
    return tuple(trace)


def decide_packing(instance: PackingInstance) -> Verdict:
    """Reduce the instance vector and read off feasibility."""
    vec = instance.vector()
    trace = cremona_reduce(vec)
    terminal = trace[-1]
    slack = vec[0] ** 2 - sum((a * a for a in vec[1:]), Fraction(0))
    failures = []
    if min(terminal) < 0:
        failures.append("negative-entry")
    if slack < 0:
        failures.append("volume")
    return Verdict(
        feasible=not failures,
        trace=trace,
        failures=tuple(failures),
        terminal=terminal,
        volume_slack=slack,
    )


def capacity_obstruction(instance: PackingInstance, K: int) -> Optional[int]:
    """First k <= K where the balls' capacities exceed the target's.

    A necessary test only: None means nothing found up to K, a hit
    certifies the packing impossible.
    """
    if not instance.balls:
        return None
    target = ball_caps(instance.target, K)
    union = seq_sum_many((ball_caps(a, K) for a in instance.balls), K)
    for k in range(K + 1):
        if union[k] > target[k]:
            return k
    return None


def optimal_scale(instance: PackingInstance,
                  scaled: Sequence[RationalLike],
                  precision: RationalLike,
                  ) -> tuple[Fraction, Fraction]:
    """Bracket the supremal factor t at which t*scaled still packs.

    scaled must be a sub-multiset of the instance's balls; the others
    stay fixed.  Returns exact rationals (lo, hi) with lo feasible, hi
    infeasible and hi - lo <= precision.  The problem must be feasible
    with the scaled balls shrunk away, else there is no bracket at all.
    """
    prec = rational(precision)
    if prec <= 0:
        raise DomainError("precision must be positive")
    scaled_sizes = [rational(a) for a in scaled]
    if not scaled_sizes or any(a <= 0 for a in scaled_sizes):
        raise DomainError("scaled ball sizes must be positive and nonempty")
    remaining = Counter(instance.balls)
    remaining.subtract(Counter(scaled_sizes))
    if any(c < 0 for c in remaining.values()):
        raise DomainError("scaled sizes are not among the instance's balls")
    fixed_sizes = tuple(remaining.elements())

    def feasible(t: Fraction) -> bool:
        balls = tuple(t * a for a in scaled_sizes) + fixed_sizes
        return decide_packing(PackingInstance(instance.target,
                                              balls)).feasible

    if not feasible(Fraction(0)):
        raise DomainError("infeasible already at scale zero")
    if feasible(Fraction(1)):
        lo, hi = Fraction(1), Fraction(2)
        while feasible(hi):
            lo, hi = hi, hi * 2  # the volume bound ends this doubling
    else:
        lo, hi = Fraction(0), Fraction(1)
    while hi - lo > prec:
        mid = (lo + hi) / 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi
