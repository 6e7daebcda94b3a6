"""Exact recoverable selection under interval costs.

The pair problem ``min C(X) + cbar(Y)`` subject to ``|X| = |Y| = p`` and
``|X & Y| >= p - k`` is solved parametrically: the overlap constraint is
priced with a multiplier ``theta``; starting from two independent
p-selections at ``theta = 0``, the multiplier is raised to the next value at
which an exchange becomes free, the exchange is applied (growing the overlap
by one item), and so on until the overlap reaches ``p - k``.

A state is the partition ``(ex, ey, ez)`` of ``X | Y`` into ``X - Y``,
``Y - X`` and ``X & Y``. It stays optimal while every exchange slack below is
at least ``theta``:

* tcon1: ``C_u + cbar_u - C_i - cbar_j`` for i in ex, j in ey, u outside
* tcon2: ``cbar_u - cbar_j`` for u in ex, j in ey
* tcon3: ``C_u - C_i`` for i in ex, u in ey
* tcon4: ``C_m + cbar_l - (C_r + cbar_r)`` for l in ex, m in ey, r in ez

All arithmetic is exact integer arithmetic.
"""

from dataclasses import dataclass

import numpy as np

from .model import Solution, validate_instance
from .select import select_p_smallest

KINDS = ("tcon1", "tcon2", "tcon3", "tcon4")


class OptimalityError(AssertionError):
    """Raised when a transformation leaves a state that violates a condition."""


@dataclass(frozen=True)
class LagrangianState:
    theta: int
    ex: frozenset
    ey: frozenset
    ez: frozenset

    def check_partition(self, p):
        if self.ex & self.ey or self.ex & self.ez or self.ey & self.ez:
            raise OptimalityError(f"sets are not pairwise disjoint: {self}")
        if not (len(self.ex) == len(self.ey) == p - len(self.ez)):
            raise OptimalityError(f"cardinalities do not match p={p}: {self}")


@dataclass(frozen=True)
class BindingCondition:
    kind: str
    witnesses: dict

    def __str__(self):
        ws = ",".join(f"{name}={e}" for name, e in self.witnesses.items())
        return f"{self.kind}({ws})"


def _interval_costs(inst):
    if not inst.is_interval:
        raise TypeError("recoverable interval solver needs an interval instance")
    return inst.first_stage.astype(np.int64), inst.uncertainty.upper.astype(np.int64)


def initial_partition(inst):
    """Optimal state at ``theta = 0`` from two independent p-selections."""
    C, cbar = _interval_costs(inst)
    X = set(select_p_smallest(C, inst.p).tolist())
    Y = set(select_p_smallest(cbar, inst.p).tolist())
    return LagrangianState(0, frozenset(X - Y), frozenset(Y - X), frozenset(X & Y))


def phi(state, inst):
    """Lagrangian value of ``state`` at its own multiplier."""
    C, cbar = _interval_costs(inst)
    k = 0 if inst.k is None else inst.k
    total = sum(int(C[e]) for e in state.ex) + sum(int(cbar[e]) for e in state.ey)
    total += sum(int(C[e] + cbar[e]) - state.theta for e in state.ez)
    return total + (inst.p - k) * state.theta


def _idx(s):
    return np.fromiter(sorted(s), dtype=np.intp, count=len(s))


def _arg(values, items, pick):
    """Smallest-index item attaining the min (or max) of ``values``."""
    target = values.min() if pick == "min" else values.max()
    return int(items[np.flatnonzero(values == target)[0]]), int(target)


def _family_minmax(C, cbar, state, n):
    """Per-family (slack, witnesses) using min/max scans, O(n) each."""
    ex, ey, ez = _idx(state.ex), _idx(state.ey), _idx(state.ez)
    inside = np.zeros(n, dtype=bool)
    inside[ex] = inside[ey] = inside[ez] = True
    out = np.flatnonzero(~inside)
    found = {}
    if ex.size and ey.size:
        i, ci = _arg(C[ex], ex, "max")
        j, cj = _arg(cbar[ey], ey, "max")
        if out.size:
            u, cu = _arg(C[out] + cbar[out], out, "min")
            found["tcon1"] = (cu - ci - cj, {"i": i, "j": j, "u": u})
        u, cu = _arg(cbar[ex], ex, "min")
        found["tcon2"] = (cu - cj, {"u": u, "j": j})
        u, cu = _arg(C[ey], ey, "min")
        found["tcon3"] = (cu - ci, {"u": u, "i": i})
        if ez.size:
            l, cl = _arg(cbar[ex], ex, "min")
            m, cm = _arg(C[ey], ey, "min")
            r, cr = _arg(C[ez] + cbar[ez], ez, "max")
            found["tcon4"] = (cm + cl - cr, {"l": l, "m": m, "r": r})
    return found


def _pair_min(M, rows, cols):
    """Minimum of a 2-d slack table and its lexicographically first cell."""
    flat = int(np.argmin(M))
    a, b = divmod(flat, M.shape[1])
    return int(M[a, b]), int(rows[a]), int(cols[b])


def _family_pairwise(C, cbar, state, n):
    """Per-family (slack, witnesses) by tabulating every pair explicitly.

    This is the O(n^2)-per-step bookkeeping: each family is a table over two of
    the index sets, with the third (separable) index folded in by a scan.
    """
    ex, ey, ez = _idx(state.ex), _idx(state.ey), _idx(state.ez)
    inside = np.zeros(n, dtype=bool)
    inside[ex] = inside[ey] = inside[ez] = True
    out = np.flatnonzero(~inside)
    found = {}
    if ex.size and ey.size:
        if out.size:
            u, cu = _arg(C[out] + cbar[out], out, "min")
            s, i, j = _pair_min(cu - C[ex][:, None] - cbar[ey][None, :], ex, ey)
            found["tcon1"] = (s, {"i": i, "j": j, "u": u})
        s, u, j = _pair_min(cbar[ex][:, None] - cbar[ey][None, :], ex, ey)
        found["tcon2"] = (s, {"u": u, "j": j})
        s, u, i = _pair_min(C[ey][:, None] - C[ex][None, :], ey, ex)
        found["tcon3"] = (s, {"u": u, "i": i})
        if ez.size:
            r, cr = _arg(C[ez] + cbar[ez], ez, "max")
            s, l, m = _pair_min(cbar[ex][:, None] + C[ey][None, :] - cr, ex, ey)
            found["tcon4"] = (s, {"l": l, "m": m, "r": r})
    return found


_SCANS = {"minmax": _family_minmax, "pairwise": _family_pairwise}


def condition_slacks(state, inst, scan="minmax"):
    """Smallest slack of each nonempty condition family with its witnesses."""
    C, cbar = _interval_costs(inst)
    return _SCANS[scan](C, cbar, state, inst.n)


def min_threshold(state, inst, scan="minmax"):
    """Next multiplier at which some condition becomes tight.

    Returns ``(theta_next, binding)``. Families are compared by slack, then by
    the fixed order tcon1 < tcon2 < tcon3 < tcon4.
    """
    found = condition_slacks(state, inst, scan)
    assert found, f"no condition family is available at {state}"
    kind = min(found, key=lambda kd: (found[kd][0], KINDS.index(kd)))
    slack, witnesses = found[kind]
    if slack < state.theta:
        raise OptimalityError(f"{kind} slack {slack} is below theta={state.theta}")
    return slack, BindingCondition(kind, witnesses)


def witness_slack(binding, inst):
    """Slack of the single inequality instance named by ``binding``."""
    C, cbar = _interval_costs(inst)
    w = {name: int(e) for name, e in binding.witnesses.items()}
    if binding.kind == "tcon1":
        return int(C[w["u"]] + cbar[w["u"]] - C[w["i"]] - cbar[w["j"]])
    if binding.kind == "tcon2":
        return int(cbar[w["u"]] - cbar[w["j"]])
    if binding.kind == "tcon3":
        return int(C[w["u"]] - C[w["i"]])
    return int(C[w["m"]] + cbar[w["l"]] - C[w["r"]] - cbar[w["r"]])


def apply_transformation(state, binding, inst=None):
    """Apply the zero-cost exchange named by ``binding``.

    The overlap ``ez`` grows by exactly one item. When ``inst`` is given the
    binding is checked for tightness and the Lagrangian value for invariance.
    """
    w = binding.witnesses
    ex, ey, ez = set(state.ex), set(state.ey), set(state.ez)
    if binding.kind == "tcon1":
        ez.add(w["u"]); ex.discard(w["i"]); ey.discard(w["j"])
    elif binding.kind == "tcon2":
        ez.add(w["u"]); ex.discard(w["u"]); ey.discard(w["j"])
    elif binding.kind == "tcon3":
        ez.add(w["u"]); ex.discard(w["i"]); ey.discard(w["u"])
    elif binding.kind == "tcon4":
        ez |= {w["l"], w["m"]}; ez.discard(w["r"]); ex.discard(w["l"]); ey.discard(w["m"])
    else:
        raise ValueError(f"unknown condition {binding.kind!r}")
    new = LagrangianState(state.theta, frozenset(ex), frozenset(ey), frozenset(ez))
    if inst is not None:
        if witness_slack(binding, inst) != state.theta:
            raise OptimalityError(f"{binding} is not tight at theta={state.theta}")
        before, after = phi(state, inst), phi(new, inst)
        if before != after:
            raise OptimalityError(f"{binding} changed phi from {before} to {after}")
        new.check_partition(inst.p)
    return new


def iterate_states(inst, scan="minmax", check=True):
    """Yield ``(state, binding)`` for every visited state.

    ``binding`` is the exchange applied next, or ``None`` for the final state.
    Each state is yielded at the multiplier where it is used, i.e. after the
    multiplier has been raised to the binding threshold.
    """
    problems = validate_instance(inst)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))
    if inst.k is None:
        raise ValueError("recoverable solving needs a recovery parameter k")
    target = inst.p - inst.k
    state = initial_partition(inst)
    while len(state.ez) < target:
        theta, binding = min_threshold(state, inst, scan)
        state = LagrangianState(theta, state.ex, state.ey, state.ez)
        yield state, binding
        state = apply_transformation(state, binding, inst if check else None)
        if check:
            slacks = condition_slacks(state, inst, scan)
            low = {kd: s for kd, (s, _) in slacks.items() if s < state.theta}
            if low:
                raise OptimalityError(f"conditions violated after {binding}: {low}")
    yield state, None


def solve_recoverable_interval(inst, scan="minmax", trace=None, check=False):
    """Optimal recoverable selection for an interval instance.

    ``trace`` (a callable taking one string) receives a line per exchange.
    ``check=True`` re-verifies tightness, Lagrangian invariance and all four
    condition families after every exchange.
    """
    steps = []
    state = None
    for state, binding in iterate_states(inst, scan, check):
        if binding is not None:
            steps.append((state.theta, str(binding)))
            if trace is not None:
                trace(f"theta={state.theta} {binding} |ez|={len(state.ez) + 1}")
    C, cbar = _interval_costs(inst)
    X = tuple(sorted(state.ex | state.ez))
    Y = tuple(sorted(state.ey | state.ez))
    objective = int(C[list(X)].sum() + cbar[list(Y)].sum())
    return Solution(
        first_stage=X,
        per_scenario={"upper": Y},
        objective=objective,
        method="rec-interval",
        stats={"theta": state.theta, "transformations": len(steps), "phi": phi(state, inst)},
    )
