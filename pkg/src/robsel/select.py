"""Deterministic p-selection: the p cheapest items in expected linear time."""

import numpy as np


def select_p_smallest(costs, p):
    """Return the indices of the ``p`` cheapest items, ascending.

    Items are ordered by ``(cost, index)`` so equal costs resolve to the
    smaller index. The cut value is found with ``np.partition`` (introselect),
    so no full sort of the cost vector is performed.
    """
    costs = np.asarray(costs)
    n = costs.shape[0]
    if p < 0 or p > n:
        raise ValueError(f"cannot select {p} items out of {n}")
    if p == 0:
        return np.empty(0, dtype=np.intp)
    if p == n:
        return np.arange(n)
    cut = np.partition(costs, p - 1)[p - 1]
    below = np.flatnonzero(costs < cut)
    ties = np.flatnonzero(costs == cut)[: p - below.size]
    return np.sort(np.concatenate([below, ties]))
