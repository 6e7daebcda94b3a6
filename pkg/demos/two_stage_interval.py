# Two-stage selection with interval costs: buy some items now, the rest later
# at (worst-case) upper prices. Each item is bought at the cheaper of its two
# prices, so the optimum is just the p smallest of min(C, upper).

import numpy as np

from robsel.gen import gen_random
from robsel.model import Instance, IntervalCosts
from robsel.oracle import exact_two_stage
from robsel.two_stage import solve_two_stage_interval

inst = Instance([2, 3, 1, 5], IntervalCosts([0, 0, 0, 0], [4, 1, 6, 2]), p=2)
sol = solve_two_stage_interval(inst)
print("buy now", sol.first_stage, "buy later", sol.per_scenario["upper"], "cost", sol.objective)

mismatches = 0
for seed in range(200):
    n = 3 + seed % 8
    inst = gen_random(n, 1 + seed % (n - 1), None, "interval", seed=seed)
    mismatches += solve_two_stage_interval(inst).objective != exact_two_stage(inst).objective
print("random instances checked against enumeration, mismatches:", mismatches)

big = gen_random(200_000, 50_000, None, "interval", cost_bound=10**6, seed=1)
print("n=200000 objective", solve_two_stage_interval(big).objective,
      "lower bound check", np.sort(np.minimum(big.first_stage, big.uncertainty.upper))[:50_000].sum())
