import random
from fractions import Fraction

import pytest

from ddquant import (
    BOTTOM,
    INF,
    TOP,
    DomainError,
    MonotoneStep,
    ParseError,
    Staircase,
    envelope,
    join_all,
    meet_all,
    one_step,
    parse_staircase,
)
from util import eq_oracle, probe_times, rand_monotone, rand_staircase, rand_unit

F = Fraction


def test_construction_validation():
    with pytest.raises(DomainError):
        Staircase(((F(2), F(1, 2)), (F(1), F(1))))  # jumps out of order
    with pytest.raises(DomainError):
        Staircase(((F(1), F(1, 2)), (F(2), F(1, 3))))  # levels not increasing
    with pytest.raises(DomainError):
        Staircase(((F(1), F(0)),))  # zero level has no jump
    with pytest.raises(DomainError):
        Staircase(((F(-1), F(1, 2)),))
    with pytest.raises(DomainError):
        Staircase(((F(1), F(3, 2)),))


def test_call_left_continuity():
    sc = Staircase(((F(1), F(1, 2)), (F(2), F(1))))
    assert sc(F(0)) == 0
    assert sc(F(1)) == 0          # value at the jump is the value before it
    assert sc(F(3, 2)) == F(1, 2)
    assert sc(F(2)) == F(1, 2)
    assert sc(F(5, 2)) == 1
    assert sc(INF) == 1
    assert sc.value_after(F(1)) == F(1, 2)
    assert sc.value_after(F(2)) == 1


def test_bottom_top():
    assert BOTTOM(INF) == 0
    assert TOP(F(1, 100)) == 1
    assert TOP(F(0)) == 0
    assert BOTTOM.leq(TOP)
    assert not TOP.leq(BOTTOM)


def test_one_step():
    assert one_step(F(0), F(0)) == BOTTOM
    assert one_step(F(3), F(0)) == BOTTOM
    assert one_step(F(0), F(1)) == TOP
    with pytest.raises(DomainError):
        one_step(INF, F(1, 2))


def test_join_meet_worked_values():
    a = one_step(F(1), F(1, 2))
    b = one_step(F(2), F(1))
    assert a.join(b) == Staircase(((F(1), F(1, 2)), (F(2), F(1))))
    assert a.meet(b) == Staircase(((F(2), F(1, 2)),))


def test_lattice_against_pointwise_oracle():
    rng = random.Random(11)
    for _ in range(150):
        a = rand_staircase(rng)
        b = rand_staircase(rng)
        j = a.join(b)
        m = a.meet(b)
        for t in probe_times(a, b, j, m):
            assert j(t) == max(a(t), b(t))
            assert m(t) == min(a(t), b(t))
        assert a.leq(b) == all(a(t) <= b(t) for t in probe_times(a, b))


def test_meet_join_all_families():
    rng = random.Random(12)
    for _ in range(60):
        fam = [rand_staircase(rng) for _ in range(rng.randrange(1, 5))]
        j = join_all(fam)
        m = meet_all(fam)
        for t in probe_times(*fam):
            assert j(t) == max(sc(t) for sc in fam)
            assert m(t) == min(sc(t) for sc in fam)
    assert join_all([]) == BOTTOM
    assert meet_all([]) == TOP
    assert meet_all([BOTTOM, TOP]) == BOTTOM


def test_meet_with_idempotent_absorption():
    # meets agree with the left-continuous pointwise minimum even when the
    # minimum lands between levels of the two arguments
    a = Staircase(((F(0), F(1, 3)), (F(2), F(2, 3))))
    b = Staircase(((F(1), F(1, 2)),))
    m = a.meet(b)
    assert m == Staircase(((F(1), F(1, 3)), (F(2), F(1, 2))))


def test_envelope_is_pointwise_sup():
    rng = random.Random(13)
    for _ in range(100):
        pts = [(rand_unit(rng, include_zero=True) * 4, rand_unit(rng, include_zero=True))
               for _ in range(rng.randrange(0, 8))]
        sc = envelope(pts)
        steps = [one_step(p, a) for p, a in pts]
        if steps:
            assert sc == join_all(steps)
        else:
            assert sc == BOTTOM


def test_flat_worked_value_and_galois():
    sc = Staircase(((F(1), F(1, 2)), (F(2), F(1))))
    assert sc.flat(F(3, 4)) == 2
    assert sc.flat(F(1, 4)) == 1
    assert sc.flat(F(1)) is INF
    rng = random.Random(14)
    for _ in range(80):
        sc = rand_staircase(rng)
        for a in [F(k, 12) for k in range(13)]:
            fl = sc.flat(a)
            for p in probe_times(sc):
                # Galois property: phi(p) <= a iff p <= flat(a)
                assert (sc(p) <= a) == (p <= fl)


def test_decompose_rejoins():
    rng = random.Random(15)
    for _ in range(50):
        sc = rand_staircase(rng)
        parts = [one_step(p, a) for p, a in sc.decompose()]
        assert join_all(parts) == sc


def test_parse_format_round_trip():
    rng = random.Random(16)
    for _ in range(80):
        sc = rand_staircase(rng)
        assert parse_staircase(str(sc)) == sc
    assert str(BOTTOM) == "steps[]"
    assert str(TOP) == "steps[(0,1)]"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_staircase("steps[(1,1/2")
    with pytest.raises(ParseError):
        parse_staircase("nope[(1,1)]")
    with pytest.raises((ParseError, DomainError)):
        parse_staircase("steps[(inf,1)]")


def test_equality_is_semantic():
    # two texts for the same function normalize to the same tuple
    a = parse_staircase("steps[(1,1/2),(2,1)]")
    b = Staircase(((F(1), F(1, 2)), (F(2), F(1))))
    assert a == b and hash(a) == hash(b)


# ---------------------------------------------------------------------------
# MonotoneStep


def test_monotone_validation():
    with pytest.raises(DomainError):
        MonotoneStep((F(1),), (F(0),), (F(1, 2),))  # first breakpoint not 0
    with pytest.raises(DomainError):
        MonotoneStep((F(0), F(1)), (F(0), F(1, 4)), (F(1, 2), F(1, 3)))  # not monotone
    with pytest.raises(DomainError):
        MonotoneStep((F(0),), (F(0),), (F(1, 2),), F(1, 4))  # infinity below last cell


def test_monotone_call_semantics():
    m = MonotoneStep((F(0), F(1)), (F(1, 4), F(1, 2)), (F(1, 4), F(3, 4)), F(1))
    assert m(F(0)) == F(1, 4)
    assert m(F(1, 2)) == F(1, 4)
    assert m(F(1)) == F(1, 2)      # point value at the breakpoint
    assert m(F(3, 2)) == F(3, 4)
    assert m(INF) == 1


def test_monotone_canonical_merge():
    # a breakpoint whose point value equals both neighbouring cells vanishes
    m = MonotoneStep((F(0), F(1)), (F(0), F(1, 2)), (F(1, 2), F(1, 2)))
    assert m.breakpoints == (F(0),)
    assert m.cell_values == (F(1, 2),)


def test_from_staircase_round_trip():
    rng = random.Random(17)
    for _ in range(80):
        sc = rand_staircase(rng)
        m = MonotoneStep.from_staircase(sc)
        assert m.regularize() == sc
        for t in probe_times(sc):
            assert m(t) == sc(t)


def test_regularize_drops_infinity_and_right_limits():
    # right-continuous at 0 with a positive value: regularization floors it
    m = MonotoneStep((F(0),), (F(1, 2),), (F(1, 2),), F(1))
    reg = m.regularize()
    assert reg == one_step(F(0), F(1, 2))
    assert reg(INF) == F(1, 2)  # the infinity value 1 is not a staircase feature


def test_regularize_random_is_largest_below():
    rng = random.Random(18)
    for _ in range(100):
        m = rand_monotone(rng)
        reg = m.regularize()
        finite = list(m.breakpoints)
        probes = finite + [(a + b) / 2 for a, b in zip(finite, finite[1:])]
        probes.append(finite[-1] + 1)
        for t in probes:
            assert reg(t) <= m(t)
        # largest below: inside every open cell the two maps agree exactly
        for k, b in enumerate(m.breakpoints):
            nxt = m.breakpoints[k + 1] if k + 1 < len(m.breakpoints) else b + 2
            assert reg((b + nxt) / 2) == m.cell_values[k]
