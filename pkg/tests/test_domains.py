import random
from fractions import Fraction

import pytest

from echtoric import DomainError, Point, ToricDomain, contains

from generators import random_concave, random_convex

OMEGA1 = [("0", "10/3"), ("2/3", "4/3"), ("4/3", "2/3"), ("7/3", "0")]
OMEGA2 = [(0, 1), (1, 2), (5, 0)]


def test_concave_accepts_reference_boundary():
    dom = ToricDomain.concave(OMEGA1)
    assert dom.kind == "concave"
    assert dom.boundary[0] == Point(0, Fraction(10, 3))


def test_convex_accepts_reference_boundary():
    dom = ToricDomain.convex(OMEGA2)
    assert dom.boundary[-1] == Point(5, 0)


def test_concave_rejects_decreasing_slopes():
    with pytest.raises(DomainError):
        ToricDomain.concave([(0, 1), (1, 1), (1, 0)])


def test_concave_rejects_up_edge():
    with pytest.raises(DomainError):
        ToricDomain.concave([(0, 2), (1, 3), (2, 0)])


def test_convex_rejects_counterclockwise_turn():
    with pytest.raises(DomainError):
        ToricDomain.convex([(0, 2), (1, 1), (3, 1), (4, 0)])


def test_boundary_must_join_the_axes():
    with pytest.raises(DomainError):
        ToricDomain.concave([(1, 2), (2, 0)])
    with pytest.raises(DomainError):
        ToricDomain.concave([(0, 2), (2, 1)])
    with pytest.raises(DomainError):
        ToricDomain.convex([(0, 0), (1, 0)])


def test_collinear_boundary_points_are_merged():
    dom = ToricDomain.concave([(0, 2), (1, 1), (Fraction(3, 2), Fraction(1, 2)),
                               (2, 0)])
    assert dom.boundary == (Point(0, 2), Point(2, 0))


def test_area_reference_values():
    assert ToricDomain.concave(OMEGA1).area() == Fraction(23, 9)
    assert ToricDomain.convex(OMEGA2).area() == Fraction(11, 2)
    assert ToricDomain.ball(1).area() == Fraction(1, 2)
    assert ToricDomain.ellipsoid(2, 3, kind="convex").area() == 3


def test_overhang_region_and_envelope():
    dom = ToricDomain.convex([(0, 2), (2, 2), (3, 1), (2, 0)])
    assert dom.xmax() == 3
    env = dom.upper_envelope()
    assert env[-1] == Point(3, 1)
    assert dom.envelope_value(Fraction(5, 2)) == Fraction(3, 2)
    assert dom.contains_point((Fraction(5, 2), 1))
    assert not dom.contains_point((Fraction(5, 2), 2))


def test_scale_properties_random():
    rng = random.Random(11)
    for _ in range(40):
        dom = random_concave(rng) if rng.random() < 0.5 else random_convex(rng)
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        scaled = dom.scale(lam)
        assert scaled.kind == dom.kind
        assert scaled.area() == lam * lam * dom.area()
    with pytest.raises(DomainError):
        dom.scale(0)


def test_scale_identity():
    dom = ToricDomain.concave(OMEGA1)
    assert dom.scale(1) == dom


def test_contains_nested_scalings():
    rng = random.Random(23)
    for _ in range(25):
        dom = random_concave(rng) if rng.random() < 0.5 else random_convex(rng)
        smaller = dom.scale(Fraction(2, 3))
        assert contains(dom, smaller)
        assert not contains(smaller, dom)
        assert contains(dom, dom)


def test_contains_uses_region_not_bounding_box():
    tall = ToricDomain.concave([(0, 3), (1, 0)])
    wide = ToricDomain.concave([(0, 1), (3, 0)])
    assert not contains(tall, wide)
    assert not contains(wide, tall)
    both = ToricDomain.convex([(0, 3), (1, 3), (3, 1), (3, 0)])
    assert contains(both, tall)
    assert contains(both, wide)
