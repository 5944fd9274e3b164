from hypothesis import given, strategies as st

from transfinia import corpus as C
from transfinia import oracles as O
from transfinia.diff_core import eval_diff_dec
from transfinia.tree_system import (
    CellDecomposition,
    build_tree,
    check_wellfounded,
    recover_membership,
    sigma_x,
    tree_dump,
)


def test_all_levels_empty():
    cd = CellDecomposition(3, ((None, None, None), (None, None, None)))
    tree = build_tree(cd)
    assert list(tree.nodes) == [()]
    assert check_wellfounded(tree, cd)


def test_two_element_chain():
    cd = CellDecomposition(2, (("a", "b"), ("a", None)))
    tree = build_tree(cd)
    assert set(tree.nodes) == {(), ("a",), ("a", "b")}
    assert tree.nodes[("a",)].q == {0, 1}
    assert not check_wellfounded(tree, cd)


def test_branching_matches_nonempty_cells():
    cd = CellDecomposition(1, ((0,), (1,), (1,), (None,)))
    assert len(build_tree(cd).root.children) == 2


def test_empty_universe_is_wellfounded():
    cd = CellDecomposition(2, ())
    assert check_wellfounded(build_tree(cd), cd)


def test_nodes_and_membership_by_depth():
    cd = CellDecomposition(3, ((None, None, None), (0, None, None), (0, 1, None)))
    tree = build_tree(cd)
    assert sigma_x(cd, 0) == ()
    assert sigma_x(cd, 1) == (0,) and tree.nodes[(0,)].label == 1
    assert sigma_x(cd, 2) == (0, 1) and tree.nodes[(0, 1)].label == 0
    assert [recover_membership(cd, x, tree) for x in range(3)] == [0, 1, 0]


def test_tree_dump_is_ordered():
    cd = CellDecomposition(2, ((1, 0), (0, None)))
    dumped = tree_dump(build_tree(cd))
    assert [tuple(d["sigma"]) for d in dumped][:1] == [()]


def test_canonical_enumeration_counts():
    # multisets of rows up to per-level label swaps; small cases counted by hand
    assert sum(1 for _ in C.cell_decompositions(1, 1)) == 2
    assert sum(1 for _ in C.cell_decompositions(2, 1)) == 4


@given(st.integers(0, 4), st.integers(1, 4), st.data())
def test_recovery_matches_the_nested_difference(size, levels, data):
    rows = C.cell_rows(levels)
    theta = tuple(data.draw(st.sampled_from(rows)) for _ in range(size))
    cd = CellDecomposition(levels, theta)
    tree = build_tree(cd)
    sets = [frozenset(x for x in range(size) if theta[x][n] is not None) for n in range(levels)]
    nested = O.nested_diff_dec(sets)
    diff = eval_diff_dec(cd.seq)
    for x in range(size):
        assert recover_membership(cd, x, tree) == tree.nodes[sigma_x(cd, x)].label == int(x in diff) == int(x in nested)
    assert check_wellfounded(tree, cd) == all(cd.depth(x) < levels for x in range(size))
