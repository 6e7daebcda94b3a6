import itertools

import numpy as np
import pytest

from robsel.gen import (
    GenSpec,
    gen_random,
    gen_rec_partition,
    gen_set_cover,
    gen_three_sat,
    gen_ts_partition,
    generate,
)
from robsel.model import validate_instance
from robsel.oracle import exact_recoverable, exact_two_stage

SAMPLE_CNF = [(1, -2, -3), (-1, 2, 3), (1, 2, 3)]
# rows are items e_1^1..e_3^3, r; columns are scenarios S_1..S_9
SAT_MATRIX = np.array([
    [1, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 1, 1, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 1, 1, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
])

UNIVERSE = list(range(1, 8))
FAMILY = [{2, 4, 3}, {1}, {3, 5, 7}, {1, 4, 6, 7}, {2, 5, 6}, {1, 6}]
M = 42
# items e_A (six sets) then u_1..u_6; columns S_1..S_7, with the third set read as {3,5,7}
COVER_MATRIX = np.array([
    [0, M, M, M, 0, 0, 0],
    [M, 0, 0, 0, 0, 0, 0],
    [0, 0, M, 0, M, 0, M],
    [M, 0, 0, M, 0, M, M],
    [0, M, 0, 0, M, M, 0],
    [M, 0, 0, 0, 0, M, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [0, M, M, M, M, 0, M],
    [M] * 7,
    [M] * 7,
    [M] * 7,
])


def test_random_valid_and_deterministic():
    a = gen_random(4, 2, 1, "interval", cost_bound=9, seed=7)
    assert validate_instance(a) == []
    assert a == gen_random(4, 2, 1, "interval", cost_bound=9, seed=7)
    assert a != gen_random(4, 2, 1, "interval", cost_bound=9, seed=8)
    d = gen_random(6, 3, None, "discrete", K=3, seed=1)
    assert validate_instance(d) == [] and d.uncertainty.K == 3


def test_random_zero_bound():
    inst = gen_random(5, 2, 1, "interval", cost_bound=0, seed=3)
    assert exact_recoverable(inst).objective == 0


@pytest.mark.parametrize("kwargs", [
    dict(n=1, p=1), dict(n=4, p=4), dict(n=4, p=2, k=3), dict(n=4, p=2, kind="discrete"),
    dict(n=4, p=2, kind="box"), dict(n=4, p=2, cost_bound=-1),
])
def test_random_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        gen_random(**kwargs)


def test_rec_partition_balanced():
    inst = gen_rec_partition([1, 2, 3, 2], 1)
    m = inst.meta
    assert (m["b"], m["M1"], m["M2"], m["scale"]) == (4, 32, 128, 1)
    assert inst.n == 6 and inst.p == 3 and inst.k == 1
    assert inst.first_stage.tolist() == [32, 32, 32, 32, 0, 128]
    assert inst.uncertainty.costs.tolist() == [[5, 6, 7, 6, 128, 0], [7, 6, 5, 6, 128, 0]]
    assert exact_recoverable(inst).objective == m["threshold"] == 76


def test_rec_partition_all_ones():
    inst = gen_rec_partition([1, 1, 1, 1], 1)
    assert inst.meta["threshold"] == 2 * 16 + 3 * 2 == 38
    assert exact_recoverable(inst).objective == 38


def test_rec_partition_unbalanced():
    inst = gen_rec_partition([1, 1, 1, 5], 1)
    assert exact_recoverable(inst).objective > inst.meta["threshold"] == 76


def test_rec_partition_fraction_scaled():
    inst = gen_rec_partition([1, 1, 1, 1, 1, 1], 1)  # 2b/n = 2
    assert inst.meta["scale"] == 1
    inst = gen_rec_partition([1, 1, 1, 1, 2, 2], 2)  # 2b/n = 8/3
    assert inst.meta["scale"] == 3
    assert exact_recoverable(inst).objective == inst.meta["threshold"]


def test_ts_partition_balanced():
    inst = gen_ts_partition([1, 2, 3, 2])
    assert inst.n == 6 and inst.p == 4 and inst.k is None
    assert inst.meta["M"] == "64" and inst.meta["threshold"] == 36
    assert inst.first_stage.tolist() == [13, 14, 15, 14, 64, 64]
    assert inst.uncertainty.costs.tolist() == [
        [2, 4, 6, 4, 64, 64], [5, 4, 3, 4, 64, 64], [64, 64, 64, 64, 0, 0]]
    assert exact_two_stage(inst).objective == 36


def test_ts_partition_uniform_and_unbalanced():
    assert exact_two_stage(gen_ts_partition([2, 2, 2, 2])).objective == 36
    unbalanced = gen_ts_partition([1, 1, 1, 5])
    assert exact_two_stage(unbalanced).objective == 38 > unbalanced.meta["threshold"] == 36
    with pytest.raises(ValueError):
        gen_ts_partition([1, 1, 1, 11])  # 11 > 6b/n = 10.5 would make S_2 negative
    inst = gen_ts_partition([2, 2, 2, 2, 2, 4])  # b=7, 6b/n=7, 3-subsets sum to 6 or 8
    assert not any(sum(c) == 7 for c in itertools.combinations([2, 2, 2, 2, 2, 4], 3))
    assert exact_two_stage(inst).objective > inst.meta["threshold"]


def test_ts_partition_scaled():
    inst = gen_ts_partition([1, 2, 2, 2])  # b = 7/2
    assert inst.meta["scale"] == 4 and inst.meta["threshold"] == 4 * 9 * 7 // 2
    assert validate_instance(inst) == []


def test_ts_partition_bad_input():
    for A in ([1, 2, 3], [0, 1], []):
        with pytest.raises(ValueError):
            gen_ts_partition(A)


def test_three_sat_matches_reference_matrix():
    inst = gen_three_sat(SAMPLE_CNF, 3)
    assert inst.n == 10 and inst.p == 3 and inst.k == 1
    assert inst.first_stage.tolist() == [0] * 9 + [3]
    assert (inst.uncertainty.costs.T == SAT_MATRIX).all()
    assert exact_recoverable(inst).objective == 0


def test_three_sat_unsatisfiable():
    clauses = [tuple(s * v for s, v in zip(signs, (1, 2, 3))) for signs in itertools.product((1, -1), repeat=3)]
    inst = gen_three_sat(clauses[:5], 3)  # still satisfiable: missing patterns leave a model
    assert exact_recoverable(inst).objective == 0
    small = gen_three_sat([(1, 1, 1), (-1, -1, -1)], 1)  # x and not x
    assert exact_recoverable(small).objective >= 1


def test_three_sat_bad_clauses():
    with pytest.raises(ValueError):
        gen_three_sat([(1, 2)], 2)
    with pytest.raises(ValueError):
        gen_three_sat([(1, 2, 4)], 3)
    with pytest.raises(ValueError):
        gen_three_sat([], 3)


def test_set_cover_matches_reference_matrix():
    inst = gen_set_cover(UNIVERSE, FAMILY)
    assert inst.meta["M"] == M and inst.n == 12 and inst.p == 7 and inst.uncertainty.K == 7
    assert inst.first_stage.tolist() == [1] * 6 + [M] * 6
    assert (inst.uncertainty.costs.T == COVER_MATRIX).all()
    assert exact_two_stage(inst).objective == 3


def test_set_cover_single_covering_set():
    inst = gen_set_cover([1, 2, 3], [{1, 2, 3}, {2}])
    assert exact_two_stage(inst).objective == 1


def test_set_cover_bad_input():
    with pytest.raises(ValueError):
        gen_set_cover([1, 2], [{1, 2}])
    with pytest.raises(ValueError):
        gen_set_cover([1, 2, 3], [{1}, {2}])


def test_dispatch():
    inst = generate(GenSpec("ts_partition", {"A": [1, 2, 3, 2]}))
    assert inst == gen_ts_partition([1, 2, 3, 2])
    with pytest.raises(ValueError):
        GenSpec("knapsack")
