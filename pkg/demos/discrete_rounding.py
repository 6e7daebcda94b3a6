# Two-stage selection with a finite list of scenarios is hard to approximate,
# but LP rounding gets within a logarithmic factor with high probability.

import collections

from robsel.bench import COVER_FAMILY, COVER_UNIVERSE, tiny_discrete
from robsel.gen import gen_set_cover
from robsel.lp import find_L_star
from robsel.oracle import exact_two_stage
from robsel.rounding import RoundingFailure, RoundingParams, approximation_bound, solve_two_stage_discrete

inst = tiny_discrete()
L, x, y = find_L_star(inst)
print("tiny instance: L* =", L, "x =", x.round(3), "opt =", exact_two_stage(inst).objective)

# A set-cover shaped instance: the optimum is the smallest cover size (3).
cover = gen_set_cover(COVER_UNIVERSE, COVER_FAMILY)
opt = exact_two_stage(cover).objective
L = find_L_star(cover).value
print(f"set cover instance: n={cover.n}, K={cover.uncertainty.K}, opt={opt}, L*={L:.3f}")

outcomes = collections.Counter()
for seed in range(50):
    try:
        sol = solve_two_stage_discrete(cover, RoundingParams(retries=1, seed=seed))
        outcomes[sol.objective] += 1
    except RoundingFailure:
        outcomes["failed"] += 1
t_hat = sol.stats["t_hat"]
print("objective histogram over 50 single-shot runs:", dict(sorted(outcomes.items(), key=str)))
print(f"t_hat={t_hat}, guaranteed factor {approximation_bound(t_hat, cover.n, cover.uncertainty.K):.1f}")

# Smaller t_hat rounds less aggressively: cheaper solutions but more repairs.
for t in (1, 2, 4, 8):
    fails = 0
    for seed in range(100):
        try:
            solve_two_stage_discrete(cover, RoundingParams(t_hat=t, retries=1, seed=seed))
        except RoundingFailure:
            fails += 1
    print(f"t_hat={t}: {fails}/100 attempts could not be repaired")
