import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchext.errors import EdgeInMatching, MatchingConflict, NotAMatching, ProperViolation
from matchext.graph import Multigraph
from matchext.state import (
    ColouringState,
    check_precolouring,
    lowest_colour,
    mask_to_set,
    new_state,
    verify_colouring,
    verify_extension,
)
from support import TRIANGLE, greedy_partial_state


def test_new_state_examples():
    s = new_state(TRIANGLE, 2, [0])
    assert s.uncoloured_edges() == [0, 1, 2]
    assert s.matching == {0}
    assert all(s.free(v) == {1, 2} for v in range(3))
    empty = new_state(Multigraph(0, []), 1)
    assert empty.uncoloured_edges() == []
    with pytest.raises(NotAMatching):
        new_state(TRIANGLE, 2, [0, 1])


def test_assign_unassign_round_trip():
    s = new_state(TRIANGLE, 3)
    before = (s.snapshot(), list(s.present))
    s.assign(1, 2)
    assert s.edge_at(1, 2) == 1 and 2 not in s.free(2)
    s.unassign(1)
    assert (s.snapshot(), list(s.present)) == before


def test_assign_errors():
    s = new_state(TRIANGLE, 3, [0])
    s.assign(1, 1)
    with pytest.raises(ProperViolation):
        s.assign(2, 1)
    with pytest.raises(EdgeInMatching):
        s.assign(0, 2)
    with pytest.raises(ProperViolation):
        s.assign(2, 4)
    with pytest.raises(MatchingConflict):
        s.add_to_matching(2)


def test_journal_rollback_restores_everything():
    s = new_state(TRIANGLE, 3, [0])
    s.assign(1, 1)
    snap = (s.snapshot(), list(s.present), list(s.mate))
    s.begin()
    s.remove_from_matching(0)
    s.assign(0, 2)
    s.begin()
    s.recolour(1, 3)
    s.commit()
    s.rollback()
    assert (s.snapshot(), list(s.present), list(s.mate)) == snap


def test_verify_colouring_examples():
    assert new_state(TRIANGLE, 3).verify_proper(require_total=False)
    assert verify_colouring(TRIANGLE, [1, 2, 3], 3)
    bad = verify_colouring(TRIANGLE, [1, 1, 2], 3)
    assert not bad and any("both coloured 1" in p for p in bad.problems)
    assert not verify_colouring(TRIANGLE, [1, 2, 0], 3)
    assert not verify_colouring(TRIANGLE, [1, 2, 4], 3)


def test_verify_extension_examples():
    assert verify_extension(TRIANGLE, [1, 2, 3], {})
    assert not verify_extension(TRIANGLE, [1, 2, 3], {0: 2})
    assert verify_extension(TRIANGLE, [2, 1, 3], {0: 2})


def test_check_precolouring():
    assert check_precolouring(TRIANGLE, {0: 1}, 3) == []
    assert check_precolouring(TRIANGLE, {0: 1, 1: 2}, 3)
    assert check_precolouring(TRIANGLE, {0: 4}, 3)
    assert check_precolouring(TRIANGLE, {5: 1}, 3)


def test_mask_helpers():
    assert mask_to_set(0b10110) == {1, 2, 4}
    assert lowest_colour(0b10100) == 2


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.integers(0, 10**6), max_size=40))
def test_incremental_free_sets_match_recomputation(seed, ops):
    s = greedy_partial_state(seed)
    rng = random.Random(seed)
    for op in ops:
        e = op % s.host.m
        if e in s.matching:
            continue
        if s.colour[e] and op % 3 == 0:
            s.unassign(e)
        elif not s.colour[e]:
            u, v = s.host.edges[e]
            common = sorted(s.free(u) & s.free(v))
            if common:
                s.assign(e, rng.choice(common))
        assert s.present == s.recompute_present()
    assert s.verify_proper()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_copy_is_independent(seed):
    s = greedy_partial_state(seed)
    t = s.copy()
    coloured = [e for e in range(s.host.m) if s.colour[e]]
    if coloured:
        t.unassign(coloured[0])
        assert s.colour[coloured[0]]
    assert s.verify_proper()
