import pytest
from hypothesis import given

from transfinia.ordinals import OMEGA, add, ordinal
from transfinia.staged_sets import (
    NEVER,
    NON_WO,
    Constant,
    CoStagedSet,
    DecSegment,
    EmptySet,
    Floor,
    Joined,
    Listed,
    Member,
    NonWOCode,
    Ramp,
    SeqSpec,
    Shift,
    StagedSet,
    Steps,
    WellOrder,
    from_slices,
    probe_grid,
    reindex_stage,
    validate_monotone,
    wo_min,
)

from strategies import dec_seqs, inc_seqs

W = OMEGA


def test_staged_set_approximations():
    a = StagedSet((2, NEVER))
    assert a.approx(0) == frozenset()
    assert a.approx(3) == {0}
    assert a.approx(W) == {0}
    assert a.final == {0}


def test_costaged_set_loses_elements():
    s = CoStagedSet((1, NEVER))
    assert s.approx(0) == {0, 1}
    assert s.approx(2) == {1}
    assert s.final == {1}


def test_never_is_above_every_ordinal():
    assert ordinal(5) < NEVER and W < NEVER and not NEVER < NEVER


def test_decreasing_membership():
    seq = SeqSpec.dec(3, [2])
    assert seq.contains(0, 1)
    assert not seq.contains(0, 2)


def test_ramp_entry_stage():
    seq = SeqSpec(W, "dec", (Member(DecSegment(W), Ramp(0, 1)),))
    assert seq.contains(0, 5)
    assert seq.fact_stage(0, 5) == ordinal(5)


def test_schedules():
    assert Constant(3).at(ordinal(9)) == ordinal(3)
    assert Ramp(2, 3).at(ordinal(4)) == ordinal(14)
    assert Listed((1, 4)).at(ordinal(1)) == ordinal(4)
    assert Floor(Constant(1), 5).at(ordinal(0)) == ordinal(5)
    assert Shift((0, 7), Constant(2)).at(ordinal(1)) == ordinal(7)
    assert Shift((0, 7), Constant(2)).at(ordinal(3)) == ordinal(2)
    assert Joined(Constant(4), Ramp(0, 1)).at(ordinal(6)) == ordinal(6)
    assert Ramp(0, 1).settle(W) == W


def test_validate_monotone():
    assert validate_monotone(SeqSpec.dec(2, [2, 1])) == []
    assert validate_monotone(SeqSpec.dec(2, [])) == []
    bad = SeqSpec(3, "dec", (Member(DecSegment(2), Listed((5, 1))),))
    assert validate_monotone(bad)


def test_steps_must_cover_the_start():
    ok = SeqSpec.inc(W, [1], [Steps(((3, 0), (1, 4)))])
    assert validate_monotone(ok) == []


def test_wo_min_examples():
    assert wo_min(WellOrder((0, 1, 2, 3, 4)), {3, 1}) == 1
    assert wo_min(WellOrder((2, 0, 1)), {0, 2}) == 2
    assert wo_min(WellOrder((0, 1, 2)), {2}) == 2
    with pytest.raises(EmptySet):
        wo_min(WellOrder((0, 1)), set())
    with pytest.raises(NonWOCode):
        wo_min(NON_WO, {0})


def test_reindex_stage():
    assert reindex_stage(0, 2, 2) == ordinal(7)
    assert reindex_stage(1, 0, 3) == ordinal(2)
    assert reindex_stage(2, 1, W) == add(W, 4)


@given(dec_seqs())
def test_slices_are_decreasing_and_round_trip(seq):
    grid = probe_grid(seq)
    slices = [seq.slice(g) for g in grid]
    for a, b in zip(slices, slices[1:]):
        assert b.final <= a.final
    rebuilt = from_slices(seq.length, seq.direction, grid, slices)
    for x in range(seq.size):
        for g in grid:
            assert rebuilt.contains(x, g) == seq.contains(x, g)


@given(inc_seqs())
def test_increasing_slices_grow(seq):
    grid = probe_grid(seq)
    slices = [seq.slice(g).final for g in grid]
    for a, b in zip(slices, slices[1:]):
        assert a <= b


@given(dec_seqs())
def test_generated_sequences_validate(seq):
    assert validate_monotone(seq) == []
    for g in probe_grid(seq):
        s = seq.slice(g)
        assert all(s.approx(t) <= s.approx(add(t, 1)) for t in range(6))
