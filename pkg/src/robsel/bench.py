"""Benchmark suite: fixed small instances, runtime ladder and rounding sweep."""

import csv
import time

import numpy as np

from .gen import gen_random, gen_rec_partition, gen_set_cover, gen_three_sat, gen_ts_partition
from .model import DiscreteScenarios, Instance, IntervalCosts
from .recoverable import solve_recoverable_interval
from .rounding import RoundingFailure, RoundingParams, solve_two_stage_discrete
from .solvers import solve

HEADER = ["n", "p", "k", "K", "method", "objective", "oracle_or_bound", "ratio", "wall_time", "failures"]

SAMPLE_CNF = [(1, -2, -3), (-1, 2, 3), (1, 2, 3)]
COVER_UNIVERSE = list(range(1, 8))
COVER_FAMILY = [{2, 4, 3}, {1}, {3, 5, 7}, {1, 4, 6, 7}, {2, 5, 6}, {1, 6}]


def worked_interval(k=1):
    return Instance([2, 3, 1, 5], IntervalCosts([0, 0, 0, 0], [4, 1, 6, 2]), 2, k, {"name": "worked"})


def tiny_discrete():
    return Instance([1, 5, 5], DiscreteScenarios([[9, 2, 9], [9, 9, 3]]), 1, None, {"name": "I2"})


def default_suite(seed=0):
    """Named small instances covering every problem variant."""
    suite = [("worked-rec", worked_interval(1)), ("worked-ts", worked_interval(None)), ("I2", tiny_discrete())]
    s = seed
    for n in (6, 8, 10):
        suite.append((f"rand-rec-int-{n}", gen_random(n, n // 2, n // 4, "interval", seed=s)))
        suite.append((f"rand-ts-int-{n}", gen_random(n, n // 2, None, "interval", seed=s + 1)))
        s += 2
    for n, K in ((6, 2), (8, 3), (8, 4)):
        suite.append((f"rand-ts-disc-{n}-{K}", gen_random(n, n // 2, None, "discrete", K=K, cost_bound=20, seed=s)))
        suite.append((f"rand-rec-disc-{n}-{K}", gen_random(n, n // 2, 1, "discrete", K=K, cost_bound=20, seed=s + 1)))
        s += 2
    suite.append(("rec-partition", gen_rec_partition([1, 2, 3, 2], 1)))
    suite.append(("ts-partition", gen_ts_partition([1, 2, 3, 2])))
    suite.append(("three-sat", gen_three_sat(SAMPLE_CNF, 3)))
    suite.append(("set-cover", gen_set_cover(COVER_UNIVERSE, COVER_FAMILY)))
    return suite


def applicable_methods(inst):
    if inst.is_interval:
        return ["rec-interval" if inst.k is not None else "ts-interval", "oracle"]
    return ["oracle"] if inst.k is not None else ["ts-discrete", "oracle"]


def _row(inst, method, objective, reference, seconds, failures=0, ratio=None):
    if ratio is None:
        if reference in (None, ""):
            ratio = ""
        elif reference == 0:
            ratio = 1.0 if objective == 0 else float("inf")
        else:
            ratio = objective / reference
    K = inst.uncertainty.K if inst.is_discrete else 1
    return {
        "n": inst.n, "p": inst.p, "k": "" if inst.k is None else inst.k, "K": K,
        "method": method, "objective": objective, "oracle_or_bound": reference,
        "ratio": ratio, "wall_time": f"{seconds:.6f}", "failures": failures,
    }


def run_suite(suite=None, seed=0):
    """Solve every suite instance with every applicable method.

    Returns a list of ``(name, instance, solution, row)``.
    """
    suite = default_suite(seed) if suite is None else suite
    out = []
    for name, inst in suite:
        sols = {}
        for method in applicable_methods(inst):
            t0 = time.perf_counter()
            sols[method] = (solve(inst, method, seed=seed), time.perf_counter() - t0)
        ref = sols["oracle"][0].objective
        for method, (sol, dt) in sols.items():
            row = _row(inst, method, sol.objective, ref, dt, sol.stats.get("failures", 0))
            out.append((name, inst, sol, row))
    return out


def ladder_instance(n, gap=10, seed=0):
    """Interval instance with ``p = n/2``, ``k = p - gap`` and anti-correlated costs.

    The p cheapest first-stage items are the p most expensive upper-bound
    items, so the two independent selections start disjoint and the solver
    has to perform all ``p - k`` exchanges.
    """
    rng = np.random.default_rng(seed + n)
    C = rng.permutation(n) * 4 + rng.integers(0, 4, n)
    upper = 4 * n - C + rng.integers(0, 3, n)
    p = n // 2
    meta = {"generator": "ladder", "seed": seed, "gap": gap}
    return Instance(C, IntervalCosts(np.zeros(n, dtype=np.int64), upper), p, p - gap, meta)


def ladder(sizes=(250, 500, 1000, 2000), gap=10, seed=0, scan="pairwise", repeats=3):
    """Recoverable interval runtimes on :func:`ladder_instance`.

    Each row reports the best of ``repeats`` wall times, the work unit
    ``(p - k + 1) * n^2`` as the bound column and their quotient as the ratio.
    """
    rows = []
    for n in sizes:
        inst = ladder_instance(n, gap, seed)
        best = np.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            sol = solve_recoverable_interval(inst, scan=scan)
            best = min(best, time.perf_counter() - t0)
        work = (gap + 1) * n * n
        rows.append(_row(inst, f"rec-interval/{scan}", sol.objective, work, best, ratio=best / work))
    return rows


def rounding_sweep(inst, seeds=100, t_hat=None):
    """Single-shot rounding runs over consecutive seeds; failures are counted, not retried."""
    from .oracle import exact_two_stage

    opt = exact_two_stage(inst).objective
    rows = []
    for s in range(seeds):
        t0 = time.perf_counter()
        try:
            sol = solve_two_stage_discrete(inst, RoundingParams(t_hat=t_hat, retries=1, seed=s))
            rows.append(_row(inst, "ts-discrete", sol.objective, opt, time.perf_counter() - t0, 0))
        except RoundingFailure:
            rows.append(_row(inst, "ts-discrete", "", opt, time.perf_counter() - t0, 1, ratio=""))
    return rows


def write_csv(rows, handle):
    writer = csv.DictWriter(handle, fieldnames=HEADER)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
