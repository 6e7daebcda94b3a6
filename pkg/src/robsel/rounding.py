"""Randomized LP rounding for two-stage selection with discrete scenarios.

The relaxation LP(L*) is solved for its smallest feasible budget, each
fractional value ``q`` is boosted to an inclusion probability
``1 - (1 - q)**t_hat`` and sampled, and the rounded sets are repaired into a
feasible two-stage solution. With ``t_hat = ceil(32 ln n + 8 ln 2K)`` the
result costs ``O(log K + log n)`` times the optimum with probability at least
``1 - 1/n^2``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .lp import find_L_star
from .model import Solution, best_completion, validate_instance

MAX_TOPUP = 4
CONTRACTION = 0.88


class RoundingFailure(RuntimeError):
    """Rounded sets could not be completed to p items in some scenarios."""

    def __init__(self, scenarios, stats=None):
        self.scenarios = list(scenarios)
        self.stats = dict(stats or {})
        super().__init__(f"rounding left too few items in scenarios {self.scenarios}")


@dataclass(frozen=True)
class RoundingParams:
    """``t_hat=None`` picks the default number of rounds for the instance.

    ``track_rounds`` replays the coin flips round by round (same distribution,
    different use of the random stream) and records per-round contraction.
    """

    t_hat: int | None = None
    retries: int = 10
    seed: int = 0
    track_rounds: bool = False

    def __post_init__(self):
        if self.t_hat is not None and self.t_hat < 1:
            raise ValueError("t_hat must be at least 1")
        if self.retries < 1:
            raise ValueError("retries must be at least 1")


def default_t_hat(n, K):
    return math.ceil(32 * math.log(n) + 8 * math.log(2 * K))


def approximation_bound(t_hat, n, K):
    """Per-scenario cost factor that rounding exceeds with prob. <= 1/(2Kn^2)."""
    return t_hat + (math.e - 1) * math.sqrt(t_hat * math.log(2 * K * n * n))


def _probabilities(q, t_hat):
    q = np.asarray(q, dtype=float)
    if (q < -1e-9).any() or (q > 1 + 1e-9).any():
        raise ValueError("fractional values must lie in [0, 1]")
    q = np.clip(q, 0.0, 1.0)
    return 1.0 - (1.0 - q) ** t_hat


def randomized_round(x_hat, y_hat, t_hat, rng):
    """One Bernoulli draw per variable with the boosted probability.

    Draws consume ``rng`` items-ascending for X, then scenario-major for Y.
    Returns ``(X, Y)`` with ``Y`` a list of per-scenario tuples.
    """
    px = _probabilities(x_hat, t_hat)
    py = _probabilities(y_hat, t_hat)
    hit_x = rng.random(px.shape) < px
    hit_y = rng.random(py.shape) < py
    X = tuple(int(e) for e in np.flatnonzero(hit_x))
    Y = [tuple(int(e) for e in np.flatnonzero(row)) for row in hit_y]
    return X, Y


def round_by_rounds(x_hat, y_hat, t_hat, rng, p):
    """Flip every coin ``t_hat`` times, one round at a time.

    Returns ``(X, Y, remaining)`` where ``remaining[S, t]`` is the number of
    items still missing under scenario S after t rounds (``remaining[:, 0] = p``).
    """
    qx = np.clip(np.asarray(x_hat, dtype=float), 0.0, 1.0)
    qy = np.clip(np.asarray(y_hat, dtype=float), 0.0, 1.0)
    K, n = qy.shape
    in_x = np.zeros(n, dtype=bool)
    in_y = np.zeros((K, n), dtype=bool)
    remaining = np.empty((K, t_hat + 1), dtype=np.int64)
    remaining[:, 0] = p
    for t in range(1, t_hat + 1):
        in_x |= rng.random(n) < qx
        in_y |= rng.random((K, n)) < qy
        covered = (in_x[None, :] | in_y).sum(axis=1)
        remaining[:, t] = np.maximum(p - covered, 0)
    X = tuple(int(e) for e in np.flatnonzero(in_x))
    Y = [tuple(int(e) for e in np.flatnonzero(row)) for row in in_y]
    return X, Y, remaining


def contraction_tally(remaining):
    """Count rounds that are successful in the sense of the round analysis.

    A round t is successful when fewer than 5 items were missing before it or
    the missing count shrank below ``0.88`` of its previous value. Returns
    ``(successful, total, nontrivial_successful, nontrivial_total)`` where the
    nontrivial counts only include rounds that started with 5 or more missing.
    """
    prev = remaining[:, :-1]
    cur = remaining[:, 1:]
    trivial = prev < 5
    shrink = cur < CONTRACTION * prev
    ok = trivial | shrink
    return int(ok.sum()), int(ok.size), int((shrink & ~trivial).sum()), int((~trivial).sum())


def repair(X, Y, inst):
    """Turn rounded sets into a feasible two-stage solution.

    The fewest items (at most four) needed to give every scenario ``p``
    candidates are added to X, cheapest first-stage cost first, taken from
    items no rounding step selected. X is trimmed to ``p`` items (most
    expensive dropped first), each scenario set loses what X already holds
    and its most expensive surplus items, and finally every scenario is
    completed optimally given X. Raises :class:`RoundingFailure`.
    """
    ids, S = inst.scenarios()
    C = inst.first_stage
    p = inst.p
    X = set(X)
    Y = [set(ys) for ys in Y]

    deficit = max(p - len(X | ys) for ys in Y)
    if deficit > 0:
        used = X.union(*Y)
        free = sorted((e for e in range(inst.n) if e not in used), key=lambda e: (C[e], e))
        X.update(free[:min(deficit, MAX_TOPUP)])
    short = [ids[s] for s, ys in enumerate(Y) if len(X | ys) < p]
    if short:
        raise RoundingFailure(short)

    if len(X) > p:
        X = set(sorted(X, key=lambda e: (C[e], e))[:p])
    trimmed_cost = 0
    for s, ys in enumerate(Y):
        keep = sorted(ys - X, key=lambda e: (S[s][e], e))[: p - len(X)]
        trimmed_cost = max(trimmed_cost, int(C[list(X)].sum()) + int(S[s][keep].sum()))

    Xt = tuple(sorted(int(e) for e in X))
    first = int(C[list(Xt)].sum())
    per = {}
    objective = 0
    for sid, row in zip(ids, S):
        ys, cost = best_completion(Xt, row, p)
        per[sid] = ys
        objective = max(objective, first + cost)
    return Solution(Xt, per, objective, "ts-discrete", {"repaired_cost": trimmed_cost})


def _zero_solution(inst):
    """Zero-cost integral solution, available whenever LP(0) is feasible."""
    ids, S = inst.scenarios()
    free_now = [e for e in range(inst.n) if inst.first_stage[e] == 0][: inst.p]
    X = tuple(free_now)
    per = {}
    objective = 0
    for sid, row in zip(ids, S):
        ys, cost = best_completion(X, row, inst.p)
        per[sid] = ys
        objective = max(objective, cost)
    assert objective == 0, "LP(0) feasible but no zero-cost completion exists"
    return Solution(X, per, 0, "ts-discrete", {"L_star": 0.0, "t_hat": 0, "attempts": 0, "failures": 0})


def solve_two_stage_discrete(inst, params=RoundingParams()):
    """Randomized approximation for two-stage selection with K scenarios.

    Rounds and repairs until a feasible solution appears or ``params.retries``
    attempts have failed, in which case :class:`RoundingFailure` is raised.
    Everything is deterministic given ``params.seed``.
    """
    if not inst.is_discrete:
        raise TypeError("randomized solver needs a discrete-scenario instance")
    if inst.k is not None:
        raise ValueError("randomized solver is for two-stage instances (k must be null)")
    problems = validate_instance(inst)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))
    n, K = inst.n, inst.uncertainty.K
    L_star, x_hat, y_hat = find_L_star(inst)
    if L_star <= 1e-12:
        return _zero_solution(inst)

    t_hat = params.t_hat or default_t_hat(n, K)
    rng = np.random.default_rng(params.seed)
    stats = {"L_star": L_star, "t_hat": t_hat, "attempts": 0, "failures": 0}
    if params.track_rounds:
        stats.update(rounds_successful=0, rounds_total=0, rounds_nontrivial_successful=0, rounds_nontrivial_total=0)
    failed_scenarios = []
    for _ in range(params.retries):
        stats["attempts"] += 1
        if params.track_rounds:
            X, Y, remaining = round_by_rounds(x_hat, y_hat, t_hat, rng, inst.p)
            ok, tot, nt_ok, nt_tot = contraction_tally(remaining)
            stats["rounds_successful"] += ok
            stats["rounds_total"] += tot
            stats["rounds_nontrivial_successful"] += nt_ok
            stats["rounds_nontrivial_total"] += nt_tot
        else:
            X, Y = randomized_round(x_hat, y_hat, t_hat, rng)
        try:
            sol = repair(X, Y, inst)
        except RoundingFailure as exc:
            stats["failures"] += 1
            failed_scenarios = exc.scenarios
            continue
        stats.update(sol.stats)
        stats["ratio"] = sol.objective / L_star
        sol.stats = stats
        return sol
    raise RoundingFailure(failed_scenarios, stats)
