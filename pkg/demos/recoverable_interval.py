# Recoverable selection with interval costs.
# Pick p items now at price C, then after the costs settle swap at most k of
# them. Interval uncertainty only ever hurts through the upper bounds, so the
# worst case is the all-upper scenario.

import numpy as np

from robsel.lp import build_mip3_relaxation, solve_lp
from robsel.model import Instance, IntervalCosts
from robsel.oracle import exact_recoverable
from robsel.recoverable import iterate_states, phi, solve_recoverable_interval

inst = Instance([2, 3, 1, 5], IntervalCosts([0, 0, 0, 0], [4, 1, 6, 2]), p=2, k=1)

# The solver raises the multiplier theta until an exchange becomes free and
# grows the overlap of the two selections by one item each time.
for state, binding in iterate_states(inst):
    print(f"theta={state.theta:2d}  X-only={sorted(state.ex)}  Y-only={sorted(state.ey)}  "
          f"both={sorted(state.ez)}  phi={phi(state, inst)}  next={binding}")

sol = solve_recoverable_interval(inst)
print("first stage", sol.first_stage, "recovered", sol.per_scenario["upper"], "cost", sol.objective)
print("brute force agrees:", exact_recoverable(inst).objective == sol.objective)

# The pair LP behind the exact algorithm has integral optima.
res = solve_lp(build_mip3_relaxation(inst))
print("LP relaxation value", res.objective, "integral point:", np.allclose(res.x, np.round(res.x)))

# Recovery budget sweeps between "no change allowed" and "stages decouple".
for k in range(inst.p + 1):
    print(f"k={k}: {solve_recoverable_interval(Instance(inst.first_stage, inst.uncertainty, 2, k)).objective}")
