import pytest
from hypothesis import given

from transfinia import oracles as O
from transfinia.diff_core import (
    UNDEFINED,
    HybridSpec,
    IndexValues,
    NotComplementary,
    delta_normalize,
    eval_diff_dec,
    eval_diff_inc,
    eval_hybrid,
)
from transfinia.ordinals import OMEGA, add
from transfinia.staged_sets import Constant, DecSegment, Member, SeqSpec, validate_monotone
from transfinia.suites import transfinite_oracle

from strategies import dec_seqs, inc_seqs

W = OMEGA


def test_two_level_increasing_example():
    # A_0 = {0}, A_1 = {0, 1}
    assert eval_diff_inc(SeqSpec.inc(2, [0, 1])) == {1}


def test_empty_segments_give_empty_difference():
    assert eval_diff_inc(SeqSpec.inc(W, [W, W])) == frozenset()


def test_odd_start_is_in_a_length_omega_difference():
    assert eval_diff_inc(SeqSpec.inc(W, [3])) == {0}


def test_two_level_decreasing_example():
    # B_0 = {0, 1}, B_1 = {1}
    assert eval_diff_dec(SeqSpec.dec(2, [1, 2])) == {0}


def test_unattained_omega_segment_is_outside():
    assert eval_diff_dec(SeqSpec.dec(W, [W])) == frozenset()


def test_attained_omega_is_inside_at_length_omega_plus_one():
    assert eval_diff_dec(SeqSpec.dec(add(W, 1), [(W, True)])) == {0}


def test_hybrid_examples():
    values = IndexValues.constant_by_parity(1, 5, 6, explicit=[(0, (9,))])
    assert eval_hybrid(HybridSpec(0, SeqSpec.inc(3, [0]), values)) == (9,)
    assert eval_hybrid(HybridSpec(UNDEFINED, SeqSpec.inc(3, [3]), values)) == (UNDEFINED,)


@given(dec_seqs())
def test_characteristic_hybrid_agrees_with_decreasing_difference(seq):
    values = eval_hybrid(HybridSpec(0, seq))
    diff = eval_diff_dec(seq)
    assert values == tuple(int(x in diff) for x in range(seq.size))


@given(inc_seqs())
def test_characteristic_hybrid_agrees_with_increasing_difference(seq):
    values = eval_hybrid(HybridSpec(0, seq))
    diff = eval_diff_inc(seq)
    assert values == tuple(int(x in diff) for x in range(seq.size))


@given(dec_seqs())
def test_decreasing_difference_matches_union_formula(seq):
    assert eval_diff_dec(seq) == transfinite_oracle(seq)


@given(inc_seqs())
def test_increasing_difference_matches_union_formula(seq):
    assert eval_diff_inc(seq) == transfinite_oracle(seq)


def test_finite_differences_match_nested_expressions():
    seq = SeqSpec.dec(4, [0, 1, 2, 3, 4])
    sets = [seq.slice(i).final for i in range(4)]
    assert eval_diff_dec(seq) == O.nested_diff_dec(sets) == {1, 3}
    seq = SeqSpec.inc(3, [0, 1, 2, 3])
    sets = [seq.slice(i).final for i in range(3)]
    assert eval_diff_inc(seq) == O.nested_diff_inc(sets) == {0, 2}


def test_delta_normalize_trivial_case():
    a = SeqSpec.dec(W, [0, 0])
    b = SeqSpec.dec(W, [1, 1])
    p = delta_normalize(a, b)
    assert eval_diff_dec(p) == frozenset()
    assert all(p.otype(x) < W for x in range(2))


def test_delta_normalize_single_element():
    a = SeqSpec.dec(W, [1])
    b = SeqSpec.dec(W, [0])
    p = delta_normalize(a, b)
    assert eval_diff_dec(p) == eval_diff_dec(a) == {0}
    assert validate_monotone(p) == []


def test_delta_normalize_breaks_an_infinite_run():
    a = SeqSpec(W, "dec", (Member(DecSegment(W), Constant(0)),))
    b = SeqSpec.dec(W, [1])
    p = delta_normalize(a, b)
    assert p.otype(0) < W
    assert eval_diff_dec(p) == eval_diff_dec(a) == frozenset()


def test_delta_normalize_rejects_agreeing_inputs():
    a = SeqSpec.dec(W, [1])
    with pytest.raises(NotComplementary):
        delta_normalize(a, a)
