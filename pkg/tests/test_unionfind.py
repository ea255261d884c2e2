import pytest
from hypothesis import given, settings, strategies as st

from busfactor import DomainError, NotFoundError, TaskUnionFind

# indices 0, 1, 2 stand for tasks t1, t2, t3


def test_find_examples():
    u = TaskUnionFind(3)
    assert u.find(1) == 1
    u.union_all([0, 1])
    assert u.find(0) == u.find(1)
    assert u.find(2) != u.find(0)


def test_find_unknown():
    with pytest.raises(NotFoundError):
        TaskUnionFind(3).find(3)


def test_union_all_examples():
    u = TaskUnionFind(3)
    assert u.union_all([0, 1]) == 2
    assert u.union_all([1, 2]) == 3
    v = TaskUnionFind(3)
    assert v.union_all([0]) == 1
    with pytest.raises(DomainError):
        v.union_all([])


def test_resulting_size_examples():
    u = TaskUnionFind(3)
    roots, size = u.resulting_size([0, 1])
    assert set(roots) == {0, 1} and size == 2
    assert u.resulting_size([2]) == ([2], 1)
    u.union_all([0, 1])
    roots, size = u.resulting_size([1, 2])
    assert set(roots) == {u.find(0), 2} and size == 3
    assert u.tau == 2
    with pytest.raises(DomainError):
        u.resulting_size([])


def test_rank_tie_goes_to_smaller_root():
    u = TaskUnionFind(4)
    u.union_all([3, 2])
    assert u.find(3) == 2
    u.union_all([1, 0])
    u.union_all([2, 0])
    assert u.find(3) == 0


def test_empty_structure():
    assert TaskUnionFind(0).tau == 0


ops = st.lists(st.lists(st.integers(0, 19), min_size=1, max_size=5), max_size=30)


@settings(max_examples=200, deadline=None)
@given(ops)
def test_invariants_against_recomputation(groups):
    u = TaskUnionFind(20)
    for grp in groups:
        roots, size = u.resulting_size(grp)
        tau_before = u.tau
        assert u.tau == tau_before  # simulation does not mutate
        new_tau = u.union_all(roots)
        assert new_tau == max(tau_before, size)
        sizes = u.component_sizes()
        assert sum(sizes.values()) == 20
        assert u.tau == max(sizes.values())
        for r, s in sizes.items():
            assert u.comp_size[r] == s
    for x in range(20):
        assert u.find(u.find(x)) == u.find(x)
