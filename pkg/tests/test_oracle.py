import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from robsel.model import DiscreteScenarios, Instance, IntervalCosts, best_completion
from robsel.oracle import EnumerationTooLarge, exact_recoverable, exact_two_stage
from robsel.two_stage import solve_two_stage_interval

from conftest import discrete_instances, i2, worked


def test_i2():
    sol = exact_two_stage(i2())
    assert sol.objective == 1 and sol.first_stage == (0,)


def test_worked_recoverable():
    assert exact_recoverable(worked(1)).objective == 7
    assert exact_recoverable(worked(0)).objective == 10
    assert exact_recoverable(worked(2)).objective == 6


@settings(max_examples=100, deadline=None)
@given(discrete_instances(max_K=1))
def test_single_scenario_matches_interval(inst):
    row = inst.uncertainty.costs[0]
    as_interval = Instance(inst.first_stage, IntervalCosts(row, row), inst.p)
    assert exact_two_stage(inst).objective == solve_two_stage_interval(as_interval).objective


@settings(max_examples=100, deadline=None)
@given(discrete_instances(max_n=6))
def test_p1_bounded_by_pure_second_stage(inst):
    inst = Instance(inst.first_stage, inst.uncertainty, 1)
    assert exact_two_stage(inst).objective <= inst.uncertainty.costs.min(axis=1).max()


@settings(max_examples=100, deadline=None)
@given(discrete_instances(max_n=6, recoverable=True))
def test_k0_zero_first_stage_is_min_max(inst):
    S = inst.uncertainty.costs
    inst = Instance(np.zeros(inst.n, dtype=int), inst.uncertainty, inst.p, 0)
    minmax = min(S[:, list(X)].sum(axis=1).max() for X in itertools.combinations(range(inst.n), inst.p))
    assert exact_recoverable(inst).objective == minmax


@settings(max_examples=100, deadline=None)
@given(discrete_instances(max_n=6, recoverable=True))
def test_kp_decouples(inst):
    inst = Instance(inst.first_stage, inst.uncertainty, inst.p, inst.p)
    C, S = inst.first_stage, inst.uncertainty.costs
    expected = np.sort(C)[: inst.p].sum() + np.sort(S, axis=1)[:, : inst.p].sum(axis=1).max()
    assert exact_recoverable(inst).objective == expected


@settings(max_examples=100, deadline=None)
@given(discrete_instances(max_n=6))
def test_two_stage_by_loops(inst):
    ids, S = inst.scenarios()
    best = None
    for r in range(inst.p + 1):
        for X in itertools.combinations(range(inst.n), r):
            first = sum(int(inst.first_stage[e]) for e in X)
            v = max(first + best_completion(X, row, inst.p)[1] for row in S)
            best = v if best is None else min(best, v)
    sol = exact_two_stage(inst)
    assert sol.objective == best
    for sid, row in zip(ids, S):
        assert best_completion(sol.first_stage, row, inst.p)[0] == sol.per_scenario[sid]


def test_cap():
    inst = Instance(np.zeros(30, dtype=int), DiscreteScenarios(np.zeros((1, 30), dtype=int)), 15)
    with pytest.raises(EnumerationTooLarge):
        exact_two_stage(inst, cap=1000)
