import numpy as np
import pytest
from hypothesis import given, strategies as st

from robsel.select import select_p_smallest


def test_prefix_of_sorted_order():
    assert select_p_smallest([2, 3, 1, 5], 2).tolist() == [0, 2]


def test_empty_selection():
    assert select_p_smallest([4, 1, 6], 0).tolist() == []


def test_ties_go_to_smaller_index():
    assert select_p_smallest([7, 7, 7, 7], 2).tolist() == [0, 1]
    assert select_p_smallest([5, 1, 5, 5, 0], 3).tolist() == [0, 1, 4]


@pytest.mark.parametrize("p", [-1, 4])
def test_bad_p(p):
    with pytest.raises(ValueError):
        select_p_smallest([1, 2, 3], p)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=30), st.data())
def test_matches_stable_sort(costs, data):
    p = data.draw(st.integers(0, len(costs)))
    expected = sorted(np.argsort(costs, kind="stable")[:p].tolist())
    assert select_p_smallest(costs, p).tolist() == expected
