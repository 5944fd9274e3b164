import pytest
from hypothesis import given, strategies as st

from transfinia import corpus as C
from transfinia.diff_core import UNDEFINED, HybridSpec, IndexValues, eval_diff_inc, eval_hybrid
from transfinia.learners import (
    InvalidCountdown,
    NotRepresentable,
    OmegaBlock,
    Plateau,
    TooManyChanges,
    Trace,
    countdown_to_diff,
    dec_to_mindchange,
    diff_to_countdown,
    horizon_value,
    merge_countdowns,
    mind_change_otype,
    mindchange_to_dec,
    validate_countdown,
    validate_semicontinuity,
    value_at,
)
from transfinia.ordinals import OMEGA, add, omega_pow, ordinal
from transfinia.staged_sets import Constant, DecSegment, Member, Ramp, SeqSpec, Steps
from transfinia.suites import _complement_spec

from strategies import seeds, rng_from

W = OMEGA


def test_value_at_examples():
    assert value_at(Trace.constant(7), 100) == 7
    block = Trace((OmegaBlock(0, W, 0, 1), Plateau(W, 0)))
    assert value_at(block, W, 0) == 0
    tr = Trace((Plateau(0, "a"), Plateau(2, "b"), Plateau(5, "c")))
    assert value_at(tr, 4) == "b"


def test_block_switches_follow_the_fundamental_sequence():
    block = OmegaBlock(0, W, "u", "v")
    assert block.switch_stages(3) == [ordinal(1), ordinal(2), ordinal(3)]
    assert block.value_inside(ordinal(0)) == "u"
    assert block.value_inside(ordinal(1)) == "v"


def test_mind_change_order_types():
    assert mind_change_otype(Trace.constant(0)) == ordinal(0)
    three = Trace((Plateau(0, 0), Plateau(2, 1), Plateau(4, 0), Plateau(9, 1)))
    assert mind_change_otype(three) == ordinal(3)
    tr = Trace((OmegaBlock(0, W, 0, 1), Plateau(W, 0), Plateau(add(W, 2), 1)))
    assert mind_change_otype(tr) == add(W, 1)


def test_validate_countdown_examples():
    assert validate_countdown(Trace.constant(0), Trace.constant(2)) == []
    tr = Trace((Plateau(0, 0), Plateau(4, 1)))
    assert validate_countdown(tr, Trace((Plateau(0, 2), Plateau(4, 1)))) == []
    problems = validate_countdown(tr, Trace.constant(2))
    assert problems and problems[0].stage == ordinal(3)


def test_countdown_for_an_element_outside_every_level():
    spec = HybridSpec(0, SeqSpec.inc(2, [2]))
    tr, cd = diff_to_countdown(spec, 0)
    assert tr == Trace.constant(0)
    assert cd == Trace.constant(ordinal(2))


def test_countdown_for_a_late_entry():
    values = IndexValues.constant_by_parity(1, "even", "odd")
    spec = HybridSpec("c", SeqSpec.inc(2, [1], [Constant(4)]), values)
    tr, cd = diff_to_countdown(spec, 0)
    assert tr == Trace((Plateau(0, "c"), Plateau(5, "odd")))
    assert [s.value for s in cd.segments] == [ordinal(2), ordinal(1)]


def test_countdown_drops_through_entry_points():
    values = IndexValues.index_valued(1)
    spec = HybridSpec("c", SeqSpec.inc(W, [1], [Steps(((3, 2), (1, 6)))]), values)
    tr, cd = diff_to_countdown(spec, 0)
    assert [s.value for s in cd.segments] == [W, ordinal(3), ordinal(1)]
    assert [s.value for s in tr.segments] == ["c", 3, 1]
    assert validate_countdown(tr, cd) == []


def test_inverse_countdown_translation():
    fam = countdown_to_diff(Trace.constant("c"), Trace.constant(ordinal(3)), 3)
    assert fam.value(0) is UNDEFINED and fam.evaluate("c") == "c"
    tr = Trace((Plateau(0, "c"), Plateau(5, "v")))
    cd = Trace((Plateau(0, 4), Plateau(5, 2)))
    fam = countdown_to_diff(tr, cd, 4)
    assert fam.value(1) is UNDEFINED
    assert fam.value(2) == fam.value(3) == "v"
    with pytest.raises(InvalidCountdown):
        countdown_to_diff(tr, Trace.constant(4), 4)


def test_decreasing_learner_outside_every_level():
    spec = HybridSpec(1, SeqSpec.dec(W, [0]), IndexValues.constant_by_parity(1, 1, 0))
    assert dec_to_mindchange(spec, 1, 0) == Trace.constant(1)


def test_decreasing_learner_resets_after_an_omega_run():
    seq = SeqSpec(W, "dec", (Member(DecSegment(W), Ramp(0, 1)),))
    tr = dec_to_mindchange(HybridSpec(0, seq), 0, 0)
    assert any(isinstance(s, OmegaBlock) and s.alternates for s in tr.segments)
    assert horizon_value(tr, 0) == 0
    assert validate_semicontinuity(tr, 0) == []
    assert mind_change_otype(tr) == W


def test_decreasing_learner_needs_small_order_types():
    seq = SeqSpec(omega_pow(2), "dec", (Member(DecSegment(omega_pow(2)), Constant(0)),))
    with pytest.raises(NotRepresentable):
        dec_to_mindchange(HybridSpec(0, seq), 0, 0)


def test_inverse_mind_change_translation():
    assert mindchange_to_dec(Trace.constant("c"), "c", 3).evaluate("c") == "c"
    tr = Trace((Plateau(0, "c"), Plateau(2, "v1"), Plateau(5, "v2")))
    fam = mindchange_to_dec(tr, "c", 3)
    assert fam.value(0) == "v1" and fam.value(1) == "v2"
    assert fam.evaluate("c") == "v2"
    block = Trace((Plateau(0, "c"), OmegaBlock(1, W, 0, 1), Plateau(W, "c")))
    assert mindchange_to_dec(block, "c", W).evaluate("c") == "c"
    with pytest.raises(TooManyChanges):
        mindchange_to_dec(tr, "c", 1)


@given(seeds, st.sampled_from(C.INC_ETAS))
def test_countdown_round_trip(seed, eta):
    rng = rng_from(seed)
    spec = C.random_inc_hybrid(rng, eta, rng.randint(1, 5))
    values = eval_hybrid(spec)
    for x in range(spec.seq.size):
        tr, cd = diff_to_countdown(spec, x)
        assert validate_countdown(tr, cd) == []
        assert horizon_value(tr) == values[x]
        assert countdown_to_diff(tr, cd, eta, x).evaluate(spec.c) == values[x]


@given(seeds, st.sampled_from(C.DEC_ETAS))
def test_mind_change_round_trip(seed, eta):
    rng = rng_from(seed)
    spec = C.random_dec_hybrid(rng, eta, rng.randint(1, 5))
    values = eval_hybrid(spec)
    for x in range(spec.seq.size):
        tr = dec_to_mindchange(spec, spec.c, x)
        assert mind_change_otype(tr) <= eta
        assert horizon_value(tr, spec.c) == values[x]
        assert mindchange_to_dec(tr, spec.c, eta, x).evaluate(spec.c) == values[x]


@given(seeds, st.sampled_from(C.INC_ETAS))
def test_merged_learner_never_counts_from_the_length(seed, eta):
    rng = rng_from(seed)
    seq = C.random_inc_seq(rng, eta, rng.randint(1, 5))
    diff = eval_diff_inc(seq)
    for x in range(seq.size):
        tr, cd = merge_countdowns(HybridSpec(0, seq), _complement_spec(seq), x)
        assert horizon_value(tr) == int(x in diff)
        assert all(ordinal(s.value) < eta for s in cd.segments)
        assert validate_countdown(tr, cd) == []


@given(st.integers(0, 3), st.lists(st.integers(1, 6), max_size=3))
def test_alternating_blocks_admit_no_countdown(start, drops):
    tr = Trace((Plateau(0, 0), OmegaBlock(start + 1, W, 0, 1), Plateau(W, 0)))
    stages = sorted(set(drops))
    cd = Trace((Plateau(0, add(W, len(stages))),) + tuple(Plateau(s, len(stages) - i) for i, s in enumerate(stages)))
    assert validate_countdown(tr, cd)
