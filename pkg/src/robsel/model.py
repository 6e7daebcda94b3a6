"""Instances, solutions and the inner second-stage minimizations.

Item sets are passed around as sorted tuples of item indices (0-based).
Costs are nonnegative integers held in ``int64`` arrays.
"""

from dataclasses import dataclass, field

import numpy as np

from .select import select_p_smallest


def _as_int_array(values, ndim):
    arr = np.asarray(values)
    if arr.size == 0:
        arr = arr.astype(np.int64)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d cost array, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class DiscreteScenarios:
    """K explicit second-stage cost vectors, shape ``(K, n)``."""

    costs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "costs", _as_int_array(self.costs, 2))

    @property
    def K(self):
        return self.costs.shape[0]


@dataclass(frozen=True, eq=False)
class IntervalCosts:
    """Per-item cost intervals ``[lower, upper]``.

    Only ``upper`` enters any optimization: the adversary's best reply inside a
    box of nonnegative costs is always the all-upper corner. ``lower`` is kept
    so instance files round-trip.
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", _as_int_array(self.lower, 1))
        object.__setattr__(self, "upper", _as_int_array(self.upper, 1))


@dataclass(frozen=True, eq=False)
class Instance:
    first_stage: np.ndarray
    uncertainty: object
    p: int
    k: int | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "first_stage", _as_int_array(self.first_stage, 1))

    @property
    def n(self):
        return self.first_stage.shape[0]

    @property
    def is_interval(self):
        return isinstance(self.uncertainty, IntervalCosts)

    @property
    def is_discrete(self):
        return isinstance(self.uncertainty, DiscreteScenarios)

    def scenarios(self):
        """Return ``(ids, matrix)`` of the scenarios the adversary may pick.

        Interval instances collapse to the single all-upper scenario ``"upper"``.
        """
        if self.is_interval:
            return ["upper"], self.uncertainty.upper[None, :]
        return [str(s) for s in range(self.uncertainty.K)], self.uncertainty.costs

    def to_dict(self):
        if self.is_interval:
            unc = {
                "type": "interval",
                "lower": self.uncertainty.lower.tolist(),
                "upper": self.uncertainty.upper.tolist(),
            }
        else:
            unc = {"type": "discrete", "scenarios": self.uncertainty.costs.tolist()}
        return {
            "n": self.n,
            "p": int(self.p),
            "k": None if self.k is None else int(self.k),
            "first_stage": self.first_stage.tolist(),
            "uncertainty": unc,
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, data):
        unc = data["uncertainty"]
        if unc["type"] == "interval":
            uncertainty = IntervalCosts(unc["lower"], unc["upper"])
        elif unc["type"] == "discrete":
            uncertainty = DiscreteScenarios(np.asarray(unc["scenarios"]).reshape(-1, len(data["first_stage"])))
        else:
            raise ValueError(f"unknown uncertainty type {unc['type']!r}")
        inst = cls(data["first_stage"], uncertainty, data["p"], data.get("k"), dict(data.get("meta", {})))
        if "n" in data and data["n"] != inst.n:
            raise ValueError(f"n={data['n']} does not match {inst.n} first-stage costs")
        return inst

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return self.to_dict() == other.to_dict()


@dataclass
class Solution:
    first_stage: tuple
    per_scenario: dict
    objective: int | float
    method: str
    stats: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "objective": self.objective,
            "first_stage": [int(e) for e in self.first_stage],
            "per_scenario": {str(s): [int(e) for e in ys] for s, ys in self.per_scenario.items()},
            "method": self.method,
            "stats": dict(self.stats),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            first_stage=tuple(sorted(data["first_stage"])),
            per_scenario={s: tuple(sorted(ys)) for s, ys in data["per_scenario"].items()},
            objective=data["objective"],
            method=data.get("method", ""),
            stats=dict(data.get("stats", {})),
        )


def _is_int_array(arr):
    return np.issubdtype(arr.dtype, np.integer) or arr.size == 0


def validate_instance(inst):
    """List every violated invariant of ``inst``; an empty list means valid."""
    problems = []
    n = inst.n
    C = inst.first_stage
    if n < 2:
        problems.append(f"need at least 2 items, got {n}")
    if not (1 <= inst.p <= n - 1):
        problems.append(f"p out of range: p={inst.p} must lie in 1..{n - 1}")
    if inst.k is not None and not (0 <= inst.k <= inst.p):
        problems.append(f"k out of range: k={inst.k} must lie in 0..{inst.p}")
    if not _is_int_array(C):
        problems.append("first-stage costs must be integers")
    elif (C < 0).any():
        problems.append(f"negative first-stage cost at items {np.flatnonzero(C < 0).tolist()}")

    unc = inst.uncertainty
    if isinstance(unc, IntervalCosts):
        lo, hi = unc.lower, unc.upper
        if lo.shape != (n,) or hi.shape != (n,):
            problems.append(f"interval bounds must have length {n}")
        elif not (_is_int_array(lo) and _is_int_array(hi)):
            problems.append("interval bounds must be integers")
        else:
            if (lo < 0).any():
                problems.append(f"negative lower bound at items {np.flatnonzero(lo < 0).tolist()}")
            for e in np.flatnonzero(lo > hi):
                problems.append(f"inverted interval at item {e}: lower={lo[e]} > upper={hi[e]}")
    elif isinstance(unc, DiscreteScenarios):
        S = unc.costs
        if S.shape[0] < 1:
            problems.append("need at least one scenario")
        if S.shape[1] != n:
            problems.append(f"scenario vectors must have length {n}, got {S.shape[1]}")
        elif not _is_int_array(S):
            problems.append("scenario costs must be integers")
        elif (S < 0).any():
            bad = sorted({int(s) for s in np.nonzero(S < 0)[0]})
            problems.append(f"negative scenario costs in scenarios {bad}")
    else:
        problems.append(f"unknown uncertainty description {type(unc).__name__}")
    return problems


def evaluate_cost(X, costs):
    """Total of ``costs`` over the item set ``X``."""
    costs = np.asarray(costs)
    X = list(X)
    for e in X:
        if not 0 <= e < costs.shape[0]:
            raise IndexError(f"item {e} out of range for {costs.shape[0]} items")
    return int(costs[X].sum()) if X else 0


def best_completion(X, costs, p):
    """Cheapest ``Y`` outside ``X`` with ``|X| + |Y| = p``.

    Returns ``(Y, cost of Y)``.
    """
    costs = np.asarray(costs)
    X = sorted(set(X))
    if len(X) > p:
        raise ValueError(f"|X|={len(X)} exceeds p={p}")
    rest = np.setdiff1d(np.arange(costs.shape[0]), X)
    picked = rest[select_p_smallest(costs[rest], p - len(X))]
    Y = tuple(int(e) for e in picked)
    return Y, evaluate_cost(Y, costs)


def best_recovery(X, costs, p, k):
    """Cheapest ``Y`` with ``|Y| = p`` and ``|Y \\ X| <= k``.

    For each swap count j the best move keeps the ``p - j`` cheapest items of X
    and brings in the ``j`` cheapest outsiders; the best j wins (smallest j on
    ties). Returns ``(Y, cost of Y)``.
    """
    costs = np.asarray(costs)
    X = np.array(sorted(set(X)), dtype=np.intp)
    if X.size != p:
        raise ValueError(f"|X|={X.size} must equal p={p}")
    if not 0 <= k <= p:
        raise ValueError(f"k={k} must lie in 0..{p}")
    outside = np.setdiff1d(np.arange(costs.shape[0]), X)
    in_order = X[np.lexsort((X, costs[X]))]
    out_order = outside[np.lexsort((outside, costs[outside]))]
    in_pref = np.concatenate([[0], np.cumsum(costs[in_order])])
    out_pref = np.concatenate([[0], np.cumsum(costs[out_order])])
    jmax = min(k, out_order.size)
    values = [in_pref[p - j] + out_pref[j] for j in range(jmax + 1)]
    j = int(np.argmin(values))
    Y = tuple(sorted(int(e) for e in np.concatenate([in_order[: p - j], out_order[:j]])))
    return Y, int(values[j])
