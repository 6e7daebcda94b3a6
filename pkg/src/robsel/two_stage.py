"""Two-stage selection under interval costs, in linear time."""

import numpy as np

from .model import Solution, validate_instance
from .select import select_p_smallest


def solve_two_stage_interval(inst):
    """Optimal two-stage selection for an interval instance.

    Each item is worth buying at ``min(C_e, cbar_e)``; the p cheapest by that
    measure are taken, now if ``C_e <= cbar_e`` and later otherwise. The
    adversary answers with the all-upper scenario.
    """
    if not inst.is_interval:
        raise TypeError("two-stage interval solver needs an interval instance")
    problems = validate_instance(inst)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))
    C = inst.first_stage
    cbar = inst.uncertainty.upper
    chat = np.minimum(C, cbar)
    Z = select_p_smallest(chat, inst.p)
    now = C[Z] <= cbar[Z]
    X = tuple(int(e) for e in Z[now])
    Y = tuple(int(e) for e in Z[~now])
    return Solution(X, {"upper": Y}, int(chat[Z].sum()), "ts-interval")
