import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from robsel.model import (
    DiscreteScenarios,
    Instance,
    IntervalCosts,
    Solution,
    best_completion,
    best_recovery,
    evaluate_cost,
    validate_instance,
)

from conftest import discrete_instances, interval_instances, worked


def test_valid_instance_has_empty_report():
    assert validate_instance(worked(1)) == []


def test_p_equal_n_reported():
    inst = Instance([1, 2, 3, 4], IntervalCosts([0] * 4, [1] * 4), 4, None)
    assert any("p out of range" in m for m in validate_instance(inst))


def test_inverted_interval_names_item():
    inst = Instance([1, 2, 3, 4], IntervalCosts([0, 5, 0, 0], [1, 1, 1, 1]), 2, None)
    report = validate_instance(inst)
    assert len(report) == 1 and "item 1" in report[0]


def test_negative_and_bad_k_reported():
    inst = Instance([1, -2, 3], DiscreteScenarios([[1, 1, 1]]), 1, 3)
    report = " ".join(validate_instance(inst))
    assert "negative" in report and "k out of range" in report


def test_evaluate_cost():
    assert evaluate_cost([], [2, 3, 1, 5]) == 0
    assert evaluate_cost([0, 2], [2, 3, 1, 5]) == 3
    assert evaluate_cost([0, 1, 2, 3], [1, 1, 1, 1]) == 4
    with pytest.raises(IndexError):
        evaluate_cost([4], [1, 1, 1, 1])


def test_best_completion_examples():
    assert best_completion((0, 1), [5, 5, 5], 2) == ((), 0)
    assert best_completion((), [9, 2, 9], 1) == ((1,), 2)
    assert best_completion((0,), [9, 2, 3, 9], 3) == ((1, 2), 5)
    with pytest.raises(ValueError):
        best_completion((0, 1), [1, 1, 1], 1)


def test_best_recovery_examples():
    costs = [4, 1, 6, 2]
    assert best_recovery((0, 1), costs, 2, 0) == ((0, 1), 5)
    assert best_recovery((0, 1), costs, 2, 1) == ((1, 3), 3)
    assert best_recovery((0, 2), costs, 2, 2) == ((1, 3), 3)


def _brute_recovery(X, costs, p, k):
    best = None
    for Y in itertools.combinations(range(len(costs)), p):
        if len(set(Y) - set(X)) <= k:
            v = sum(costs[e] for e in Y)
            best = v if best is None else min(best, v)
    return best


@given(st.lists(st.integers(0, 9), min_size=2, max_size=8), st.data())
def test_best_recovery_against_enumeration(costs, data):
    n = len(costs)
    p = data.draw(st.integers(1, n - 1))
    k = data.draw(st.integers(0, p))
    X = data.draw(st.lists(st.integers(0, n - 1), min_size=p, max_size=p, unique=True))
    Y, v = best_recovery(tuple(sorted(X)), costs, p, k)
    assert v == _brute_recovery(X, costs, p, k)
    assert len(Y) == p and len(set(Y) - set(X)) <= k and evaluate_cost(Y, costs) == v


@given(st.lists(st.integers(0, 9), min_size=2, max_size=8), st.data())
def test_best_completion_against_enumeration(costs, data):
    n = len(costs)
    p = data.draw(st.integers(1, n - 1))
    X = data.draw(st.lists(st.integers(0, n - 1), max_size=p, unique=True))
    Y, v = best_completion(tuple(sorted(X)), costs, p)
    rest = [e for e in range(n) if e not in X]
    brute = min(sum(costs[e] for e in Z) for Z in itertools.combinations(rest, p - len(X)))
    assert v == brute and not set(Y) & set(X) and len(Y) == p - len(X)


def test_scenario_ids():
    ids, S = worked(1).scenarios()
    assert ids == ["upper"] and S.tolist() == [[4, 1, 6, 2]]
    ids, S = Instance([1, 1], DiscreteScenarios([[1, 2], [3, 4], [5, 6]]), 1).scenarios()
    assert ids == ["0", "1", "2"] and S.shape == (3, 2)


@given(st.one_of(interval_instances(), discrete_instances(recoverable=True)))
def test_instance_round_trip(inst):
    data = inst.to_dict()
    assert set(data) == {"n", "p", "k", "first_stage", "uncertainty", "meta"}
    assert Instance.from_dict(data) == inst


def test_canonical_field_names():
    data = worked(None).to_dict()
    assert data["k"] is None
    assert data["uncertainty"] == {"type": "interval", "lower": [0, 0, 0, 0], "upper": [4, 1, 6, 2]}


def test_from_dict_rejects_wrong_n():
    data = worked(1).to_dict()
    data["n"] = 5
    with pytest.raises(ValueError):
        Instance.from_dict(data)


def test_solution_round_trip():
    sol = Solution((1, 2), {"upper": (1, 3)}, 7, "rec-interval", {"theta": 1})
    data = sol.to_dict()
    assert data == {"objective": 7, "first_stage": [1, 2], "per_scenario": {"upper": [1, 3]},
                    "method": "rec-interval", "stats": {"theta": 1}}
    assert Solution.from_dict(data) == sol


def test_bad_shapes():
    with pytest.raises(ValueError):
        DiscreteScenarios(np.zeros(3))
    with pytest.raises(ValueError):
        IntervalCosts([[0]], [[1]])
