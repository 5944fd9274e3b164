import json

import pytest
from hypothesis import given

from transfinia import corpus as C
from transfinia.diff_core import UNDEFINED
from transfinia.learners import OmegaBlock, Plateau, Trace
from transfinia.ordinals import OMEGA, ParseError, add, ordinal
from transfinia.serialize import SchemaError, canonical, dump, dumps, load, loads
from transfinia.staged_sets import NEVER, NON_WO, CoStagedSet, StagedSet, WellOrder
from transfinia.tree_system import CellDecomposition

from strategies import dec_seqs, inc_seqs, matrices, rng_from, seeds


def round_trip(obj):
    return loads(dumps(obj))


def test_ordinals_encode_as_term_arrays():
    assert dump(ordinal(3)) == {"kind": "ordinal", "value": 3}
    assert dump(add(OMEGA, 2))["value"] == [[1, 1], [0, 2]]
    assert load({"kind": "ordinal", "value": "w*2+1"}) == add(add(OMEGA, OMEGA), 1)


def test_sets_and_codes():
    for obj in (StagedSet((NEVER, 2)), CoStagedSet((0, NEVER)), NON_WO, WellOrder((1, 0), 3)):
        assert round_trip(obj) == obj
    pair = (StagedSet((1, NEVER)), WellOrder((0, 1)))
    assert round_trip(pair) == pair


def test_traces_and_cells():
    tr = Trace((Plateau(0, "c"), OmegaBlock(1, OMEGA, 0, 1), Plateau(OMEGA, UNDEFINED)))
    assert round_trip(tr) == tr
    cd = CellDecomposition(2, ((0, 1), (None, None)))
    assert round_trip(cd) == cd


@given(dec_seqs())
def test_decreasing_sequences_round_trip(seq):
    assert round_trip(seq) == seq


@given(inc_seqs())
def test_increasing_sequences_round_trip(seq):
    assert round_trip(seq) == seq


@given(seeds)
def test_hybrids_round_trip(seed):
    rng = rng_from(seed)
    spec = C.random_inc_hybrid(rng, rng.choice(C.INC_ETAS), 3)
    assert round_trip(spec) == spec


@given(matrices())
def test_matrices_round_trip(m):
    assert round_trip(m) == m


def test_canonical_output_is_stable():
    assert canonical({"b": 1, "a": [1, 2]}) == canonical({"a": [1, 2], "b": 1})
    assert canonical({}).endswith("\n")


@pytest.mark.parametrize(
    "doc",
    [{"no": "kind"}, {"kind": "mystery"}, {"kind": "seq", "length": 2}, {"kind": "staged"}],
)
def test_schema_errors(doc):
    with pytest.raises(SchemaError):
        load(doc)


def test_bad_ordinal_in_document():
    with pytest.raises(ParseError):
        load({"kind": "ordinal", "value": "w^"})


def test_invalid_json_reports_location():
    with pytest.raises(SchemaError, match="line 1 column"):
        loads("{ not json")


def test_matrix_height_must_match():
    m = json.loads(dumps(C.random_matrix(rng_from(1), 2, 3)))
    m["height"] = 5
    with pytest.raises(SchemaError):
        load(m)
