import random
from fractions import Fraction

import pytest

from echtoric import (DomainError, PackingInstance, capacity_obstruction,
                      cremona_reduce, cremona_step, decide_packing, defect,
                      optimal_scale)

from generators import random_instance

F = Fraction


# -- instance normalization --------------------------------------------------

def test_instance_validation():
    with pytest.raises(DomainError):
        PackingInstance(0, (1,))
    with pytest.raises(DomainError):
        PackingInstance(-2, (1,))
    with pytest.raises(DomainError):
        PackingInstance(2, (1, -1))
    # zero sizes are dropped, the rest is sorted descending
    inst = PackingInstance(3, (F(1, 2), 0, 2, 0, 1))
    assert inst.balls == (2, 1, F(1, 2))
    assert inst.vector() == (3, 2, 1, F(1, 2))
    # the vector pads with zeros so three body entries exist
    assert PackingInstance(1, ()).vector() == (1, 0, 0, 0)
    assert PackingInstance(1, (1,)).vector() == (1, 1, 0, 0)


def test_defect():
    assert defect((2, 1, 1, 1, 1)) == 1
    assert defect((1, 1)) == 0
    assert defect((1, 1, F(1, 2))) == F(1, 2)
    assert defect((3, 1, 1, 1)) == 0


# -- single moves, traced by hand --------------------------------------------

def test_step_hand_traces():
    assert cremona_step((2, 1, 1, 1, 1)) == (1, 1, 0, 0, 0)
    assert cremona_step((1, 1, F(1, 2))) == (F(1, 2), F(1, 2), 0, F(-1, 2))
    # entries get resorted after the move
    assert cremona_step((5, 3, 2, 2, 1, F(2, 3), F(2, 3), F(1, 3),
                         F(1, 3))) == (3, 1, 1, F(2, 3), F(2, 3), F(1, 3),
                                       F(1, 3), 0, 0)
    with pytest.raises(DomainError):
        cremona_step((2, 1, 1))  # defect 0, nothing to do


def test_step_conserves_volume_slack():
    rng = random.Random(11)
    for _ in range(100):
        inst = random_instance(rng)
        vec = inst.vector()
        if defect(vec) <= 0:
            continue
        nxt = cremona_step(vec)
        assert sum(a * a for a in nxt[1:]) - nxt[0] ** 2 == \
            sum(a * a for a in vec[1:]) - vec[0] ** 2
        assert nxt[0] < vec[0]


# -- full decisions -----------------------------------------------------------

def test_decide_already_reduced():
    v = decide_packing(PackingInstance(1, (1,)))
    assert v.feasible
    assert v.trace == ((1, 1, 0, 0),)
    assert v.terminal == (1, 1, 0, 0)
    assert v.failures == ()
    assert v.volume_slack == 0


def test_decide_four_balls():
    v = decide_packing(PackingInstance(2, (1, 1, 1, 1)))
    assert v.feasible
    assert v.trace == ((2, 1, 1, 1, 1), (1, 1, 0, 0, 0))
    assert v.volume_slack == 0


def test_decide_infeasible_pair():
    v = decide_packing(PackingInstance(1, (1, F(1, 2))))
    assert not v.feasible
    assert v.failures == ("negative-entry", "volume")
    assert v.terminal == (F(1, 2), F(1, 2), 0, F(-1, 2))
    assert v.volume_slack == F(-1, 4)


def test_decide_mixed_weights():
    inst = PackingInstance(5, (3, 2, 2, 1, F(2, 3), F(2, 3), F(1, 3),
                               F(1, 3)))
    v = decide_packing(inst)
    assert v.feasible
    assert len(v.trace) == 2
    assert v.terminal == (3, 1, 1, F(2, 3), F(2, 3), F(1, 3), F(1, 3), 0, 0)
    assert v.volume_slack == F(53, 9)


def test_trace_replays():
    rng = random.Random(23)
    for _ in range(60):
        v = decide_packing(random_instance(rng))
        assert v.terminal == v.trace[-1]
        for cur, nxt in zip(v.trace, v.trace[1:]):
            assert cremona_step(cur) == nxt
        last = v.terminal
        assert min(last) < 0 or defect(last) <= 0
        assert v.feasible == (min(last) >= 0 and v.volume_slack >= 0)


def test_verdict_invariances():
    rng = random.Random(31)
    for _ in range(40):
        inst = random_instance(rng)
        v = decide_packing(inst)
        # order of the balls is irrelevant
        shuffled = list(inst.balls)
        rng.shuffle(shuffled)
        w = decide_packing(PackingInstance(inst.target, tuple(shuffled)))
        assert w == v
        # shrinking one ball never breaks a feasible packing
        if v.feasible and inst.balls:
            i = rng.randrange(len(inst.balls))
            smaller = list(inst.balls)
            smaller[i] = smaller[i] * F(1, 2)
            assert decide_packing(
                PackingInstance(inst.target, tuple(smaller))).feasible


# -- the capacity cross-check ------------------------------------------------

def test_capacity_obstruction_goldens():
    assert capacity_obstruction(PackingInstance(2, (1, 1, 1, 1)), 50) is None
    assert capacity_obstruction(PackingInstance(1, (1, F(1, 2))), 50) == 2
    assert capacity_obstruction(PackingInstance(F(7, 3), (F(7, 3),)),
                                30) is None
    assert capacity_obstruction(PackingInstance(1, ()), 10) is None


def test_feasible_implies_no_obstruction():
    rng = random.Random(47)
    checked = 0
    for _ in range(30):
        inst = random_instance(rng)
        v = decide_packing(inst)
        k = capacity_obstruction(inst, 40)
        if v.feasible:
            assert k is None
        elif k is not None:
            assert not v.feasible
            checked += 1
    assert checked > 0


# -- scale search -------------------------------------------------------------

def test_optimal_scale_all_balls():
    inst = PackingInstance(2, (1, 1, 1, 1))
    lo, hi = optimal_scale(inst, (1, 1, 1, 1), F(1, 128))
    assert lo == 1
    assert hi == 1 + F(1, 128)


def test_optimal_scale_single_ball():
    lo, hi = optimal_scale(PackingInstance(1, (1,)), (1,), F(1, 64))
    assert (lo, hi) == (1, F(65, 64))
    # here the reduction goes negative just past 1 while volume still fits
    lo, hi = optimal_scale(PackingInstance(2, (1, 1, 1)), (1,), F(1, 64))
    assert (lo, hi) == (1, F(65, 64))


def test_optimal_scale_bracket_is_sharp():
    rng = random.Random(59)
    for _ in range(10):
        inst = random_instance(rng)
        if not inst.balls or not decide_packing(inst).feasible:
            continue
        lo, hi = optimal_scale(inst, inst.balls[:1], F(1, 32))
        assert hi - lo <= F(1, 32)
        scaled_lo = (lo * inst.balls[0],) + inst.balls[1:]
        scaled_hi = (hi * inst.balls[0],) + inst.balls[1:]
        assert decide_packing(PackingInstance(inst.target,
                                              scaled_lo)).feasible
        assert not decide_packing(PackingInstance(inst.target,
                                                  scaled_hi)).feasible


def test_optimal_scale_rejections():
    inst = PackingInstance(2, (1, 1))
    with pytest.raises(DomainError):
        optimal_scale(inst, (1, 1, 1), F(1, 16))
    with pytest.raises(DomainError):
        optimal_scale(inst, (F(3, 4),), F(1, 16))
    with pytest.raises(DomainError):
        optimal_scale(inst, (), F(1, 16))
    with pytest.raises(DomainError):
        optimal_scale(inst, (1,), 0)
    with pytest.raises(DomainError):
        optimal_scale(PackingInstance(1, (2, 2)), (2,), F(1, 16))
