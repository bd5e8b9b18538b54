import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netnull.graphical import (
    DeadEndError,
    NotGraphicalError,
    candidate_partners,
    decrement,
    erdos_gallai_violation,
    feasible_partner_degrees,
    havel_hakimi_graphical,
    havel_hakimi_reduce,
    is_graphical,
    require_graphical,
)
from netnull.graph import Graph

from conftest import brute_force_class, ref_is_graphical


def test_examples_from_small_sequences():
    assert not is_graphical((3, 2, 1))
    assert not is_graphical((2, 2, 0, 0))
    assert is_graphical((2, 1, 1))
    assert is_graphical((3, 3, 3, 3, 3, 3))
    assert is_graphical(())
    assert is_graphical((0, 0))
    assert not is_graphical((1,))


def test_violation_index():
    # odd total is reported as violation 0, ahead of any inequality index
    assert erdos_gallai_violation((3, 2, 2)) == 0
    assert erdos_gallai_violation((3, 2, 1)) == 1
    assert erdos_gallai_violation((2, 2, 0, 0)) == 1
    assert erdos_gallai_violation((2, 1, 1)) is None


def test_require_graphical_raises_with_violation():
    with pytest.raises(NotGraphicalError) as exc:
        require_graphical((3, 2, 1))
    assert exc.value.violation == 1
    assert "k=1" in str(exc.value)
    with pytest.raises(NotGraphicalError) as exc:
        require_graphical((1, 1, 1))
    assert exc.value.violation == 0


def test_negative_entry_rejected():
    with pytest.raises(ValueError):
        is_graphical((2, -1, 1))


def test_agrees_with_brute_force_realizability_small():
    # spot slice of the exhaustive acceptance sweep: all vectors with n <= 5
    for n in range(1, 6):
        for vec in itertools.product(range(n), repeat=n):
            expected = len(brute_force_class(vec)) > 0
            assert is_graphical(vec) == expected, vec


def test_havel_hakimi_matches_erdos_gallai_exhaustive():
    for n in range(1, 6):
        for vec in itertools.product(range(6), repeat=n):
            assert havel_hakimi_graphical(vec) == is_graphical(vec), vec


def test_havel_hakimi_reduce():
    assert havel_hakimi_reduce((3, 3, 3, 3, 3, 3), 0) == (2, 2, 2, 3, 3)
    assert havel_hakimi_reduce((2, 1, 1), 0) == (0, 0)
    with pytest.raises(ValueError):
        havel_hakimi_reduce((3, 0, 0, 0), 0)


def test_decrement():
    assert decrement((2, 2, 1, 1), 0, 2) == (1, 2, 0, 1)
    with pytest.raises(ValueError):
        decrement((1, 0), 0, 1)


def test_feasible_partner_degrees_blocks_stuck_branch():
    # classic near-stuck state: from (2,2,1,1) the active node is index 2;
    # pairing it with the other degree-1 node leaves (2,2,0,0), which is not
    # graphical, so value 1 must be ruled out while value 2 stays feasible
    feas = feasible_partner_degrees((2, 2, 1, 1), 2)
    assert feas == {2}


def test_candidate_partners_respects_adjacency():
    g = Graph.from_edges(4, [(0, 1)])
    cand = candidate_partners((1, 1, 1, 1), g, 0)
    assert cand == [2, 3]


def test_candidate_partners_excludes_infeasible():
    # residual (2,1,1,0) at node 0 with no edges: both value-1 partners fine
    cand = candidate_partners((2, 1, 1, 0), Graph.empty(4), 0)
    assert cand == [1, 2]


def test_candidate_partners_dead_end_is_error():
    # residual (1,1) with the only edge already placed: state is no longer
    # graphical once adjacency is respected, a logic-bug guard must fire
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(DeadEndError):
        candidate_partners((1, 1), g, 0)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=10))
def test_matches_reference_implementation(seq):
    assert is_graphical(tuple(seq)) == ref_is_graphical(seq)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=7), min_size=1, max_size=8), st.randoms())
def test_permutation_invariant(seq, rnd):
    shuffled = list(seq)
    rnd.shuffle(shuffled)
    assert is_graphical(tuple(seq)) == is_graphical(tuple(shuffled))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=7), min_size=2, max_size=8))
def test_havel_hakimi_agrees_with_erdos_gallai(seq):
    assert havel_hakimi_graphical(tuple(seq)) == is_graphical(tuple(seq))
