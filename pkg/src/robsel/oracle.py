"""Brute-force exact solvers for desk-scale instances.

Both problems are NP-hard under discrete scenarios, so these enumerate every
candidate first-stage set. Enumeration is vectorized: all subsets of one size
are evaluated as a single boolean mask matrix.
"""

from itertools import combinations, islice
from math import comb

import numpy as np

from .model import Solution, best_completion, best_recovery

DEFAULT_CAP = 2_000_000


class EnumerationTooLarge(ValueError):
    pass


def _chunks(n, size, chunk=50_000):
    """Yield boolean membership masks of all ``size``-subsets, in blocks."""
    it = combinations(range(n), size)
    while block := list(islice(it, chunk)):
        combos = np.array(block, dtype=np.intp).reshape(len(block), size)
        masks = np.zeros((combos.shape[0], n), dtype=bool)
        if size:
            masks[np.arange(combos.shape[0])[:, None], combos] = True
        yield masks


def _sorted_prefix(costs, masks, take_inside):
    """Prefix sums of per-row costs sorted ascending, restricted to a mask.

    Row r of the result holds 0, c1, c1+c2, ... over the items selected by
    ``masks[r]`` (or its complement); entries past the available items are inf.
    """
    keep = masks if take_inside else ~masks
    vals = np.where(keep, costs[None, :].astype(float), np.inf)
    vals.sort(axis=1)
    pref = np.concatenate([np.zeros((vals.shape[0], 1)), np.cumsum(vals, axis=1)], axis=1)
    return pref


def _check_cap(count, cap):
    if count > cap:
        raise EnumerationTooLarge(f"{count} candidate sets exceed the enumeration cap {cap}")


def exact_two_stage(inst, cap=DEFAULT_CAP):
    """Min-max two-stage selection by enumerating every X with |X| <= p."""
    n, p = inst.n, inst.p
    _check_cap(sum(comb(n, j) for j in range(p + 1)), cap)
    ids, S = inst.scenarios()
    C = inst.first_stage
    best = (np.inf, None)
    for size in range(p + 1):
        for masks in _chunks(n, size):
            first = masks @ C
            worst = np.full(masks.shape[0], -np.inf)
            for row in S:
                comp = _sorted_prefix(row, masks, take_inside=False)[:, p - size]
                worst = np.maximum(worst, first + comp)
            r = int(np.argmin(worst))
            if worst[r] < best[0]:
                best = (worst[r], tuple(int(e) for e in np.flatnonzero(masks[r])))
    value, X = best
    per = {s: best_completion(X, row, p)[0] for s, row in zip(ids, S)}
    return Solution(X, per, int(value), "oracle", {"enumerated": "two-stage"})


def exact_recoverable(inst, cap=DEFAULT_CAP):
    """Min-max recoverable selection by enumerating every X with |X| = p."""
    n, p, k = inst.n, inst.p, inst.k
    if k is None:
        raise ValueError("recoverable oracle needs a recovery parameter k")
    _check_cap(comb(n, p), cap)
    ids, S = inst.scenarios()
    C = inst.first_stage
    jmax = min(k, n - p)
    best = (np.inf, None)
    for masks in _chunks(n, p):
        first = masks @ C
        worst = np.full(masks.shape[0], -np.inf)
        for row in S:
            pin = _sorted_prefix(row, masks, take_inside=True)
            pout = _sorted_prefix(row, masks, take_inside=False)
            rec = np.min([pin[:, p - j] + pout[:, j] for j in range(jmax + 1)], axis=0)
            worst = np.maximum(worst, first + rec)
        r = int(np.argmin(worst))
        if worst[r] < best[0]:
            best = (worst[r], tuple(int(e) for e in np.flatnonzero(masks[r])))
    value, X = best
    per = {s: best_recovery(X, row, p, k)[0] for s, row in zip(ids, S)}
    return Solution(X, per, int(value), "oracle", {"enumerated": "recoverable"})
