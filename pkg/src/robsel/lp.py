"""Dense two-phase simplex and the LP models used by the solvers.

``solve_lp`` is a small, deterministic tableau simplex (Bland's rule) meant
for programs with at most a few thousand variables. The model builders cover
the budgeted two-stage relaxation LP(L), the search for its smallest feasible
budget L*, and the continuous relaxation of the recoverable pair MIP.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

TOL = 1e-9
SENSES = ("<=", "==", ">=")


@dataclass
class LinearProgram:
    """Minimize ``objective @ x`` subject to rows and per-variable bounds."""

    objective: np.ndarray
    rows: list = field(default_factory=list)
    lower: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float)
        n = self.objective.shape[0]
        self.lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float)
        self.upper = np.full(n, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float)

    @property
    def num_vars(self):
        return self.objective.shape[0]

    def add(self, coeffs, sense, rhs):
        if sense not in SENSES:
            raise ValueError(f"unknown relation {sense!r}")
        self.rows.append((np.asarray(coeffs, dtype=float), sense, float(rhs)))

    def matrix(self):
        if not self.rows:
            return np.zeros((0, self.num_vars)), [], np.zeros(0)
        A = np.vstack([r[0] for r in self.rows])
        return A, [r[1] for r in self.rows], np.array([r[2] for r in self.rows])

    def violation(self, x):
        """Largest constraint or bound violation of ``x``."""
        A, senses, b = self.matrix()
        worst = max(0.0, float(np.max(self.lower - x, initial=0)), float(np.max(x - self.upper, initial=0)))
        lhs = A @ x
        for v, s, r in zip(lhs, senses, b):
            gap = {"<=": v - r, ">=": r - v, "==": abs(v - r)}[s]
            worst = max(worst, gap)
        return worst


@dataclass
class LpResult:
    status: str
    objective: float | None = None
    x: np.ndarray | None = None
    iterations: int = 0


class _Tableau:
    def __init__(self, T, basis):
        self.T = T
        self.basis = basis
        self.iterations = 0

    def pivot(self, r, j):
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.iterations += 1

    def run(self, max_iter):
        """Bland's rule on the objective in the last row. Returns a status."""
        T = self.T
        m = T.shape[0] - 1
        while True:
            if self.iterations > max_iter:
                raise RuntimeError(f"simplex exceeded {max_iter} pivots")
            red = T[-1, :-1]
            cand = np.flatnonzero(red < -TOL)
            if cand.size == 0:
                return "optimal"
            j = int(cand[0])
            col = T[:m, j]
            rows = np.flatnonzero(col > TOL)
            if rows.size == 0:
                return "unbounded"
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            tied = rows[ratios <= best + TOL * max(1.0, abs(best))]
            r = int(min(tied, key=lambda i: self.basis[i]))
            self.pivot(r, j)


def _standardize(prob):
    """Rewrite bounds so every remaining variable is simply ``>= 0``.

    Returns ``(offset, transform, A, senses, b, c)`` with
    ``x = offset + transform @ x_std``.
    """
    n = prob.num_vars
    lo, hi = prob.lower, prob.upper
    if lo.shape != (n,) or hi.shape != (n,):
        raise ValueError("bound vectors must match the variable count")
    if (lo > hi).any() or np.isposinf(lo).any() or np.isneginf(hi).any():
        raise ValueError("empty variable bound interval")
    A, senses, b = prob.matrix()
    if A.shape[1] != n:
        raise ValueError(f"constraint rows have {A.shape[1]} coefficients for {n} variables")
    offset = np.zeros(n)
    cols = []
    extra = []
    for j in range(n):
        if np.isfinite(lo[j]) and lo[j] == hi[j]:
            offset[j] = lo[j]
            continue
        if np.isfinite(lo[j]):
            offset[j] = lo[j]
            cols.append((j, 1.0))
            if np.isfinite(hi[j]):
                extra.append((len(cols) - 1, hi[j] - lo[j]))
        elif np.isfinite(hi[j]):
            offset[j] = hi[j]
            cols.append((j, -1.0))
        else:
            cols.append((j, 1.0))
            cols.append((j, -1.0))
    transform = np.zeros((n, len(cols)))
    for k, (j, sign) in enumerate(cols):
        transform[j, k] = sign
    A_std = A @ transform
    b_std = b - A @ offset
    senses = list(senses)
    for k, cap in extra:
        row = np.zeros(len(cols))
        row[k] = 1.0
        A_std = np.vstack([A_std, row])
        b_std = np.append(b_std, cap)
        senses.append("<=")
    c_std = prob.objective @ transform
    return offset, transform, A_std, senses, b_std, c_std


def solve_lp(prob, max_iter=100_000):
    """Solve ``prob`` with a two-phase dense simplex.

    Returns an :class:`LpResult` whose status is ``optimal``, ``infeasible``
    or ``unbounded``. Pivoting follows Bland's rule, so results are fully
    deterministic.
    """
    offset, transform, A, senses, b, c = _standardize(prob)
    m, nx = A.shape
    A = A.copy()
    b = b.copy()
    senses = list(senses)
    for i in range(m):
        if b[i] < 0:
            A[i] *= -1
            b[i] *= -1
            senses[i] = {"<=": ">=", ">=": "<=", "==": "=="}[senses[i]]

    n_slack = sum(s != "==" for s in senses)
    n_art = sum(s != "<=" for s in senses)
    ncols = nx + n_slack + n_art
    T = np.zeros((m + 1, ncols + 1))
    T[:m, :nx] = A
    T[:m, -1] = b
    basis = [0] * m
    si, ai = nx, nx + n_slack
    for i, s in enumerate(senses):
        if s == "<=":
            T[i, si] = 1.0
            basis[i] = si
            si += 1
        elif s == ">=":
            T[i, si] = -1.0
            si += 1
        if s != "<=":
            T[i, ai] = 1.0
            basis[i] = ai
            ai += 1
    is_art = np.zeros(ncols, dtype=bool)
    is_art[nx + n_slack:] = True

    tab = _Tableau(T, basis)
    # phase 1: minimize the sum of artificials
    T[-1, :] = 0.0
    T[-1, is_art.nonzero()[0]] = 1.0
    for i in range(m):
        if is_art[basis[i]]:
            T[-1] -= T[i]
    tab.run(max_iter)
    scale = max(1.0, float(np.abs(b).max(initial=0.0)))
    if -T[-1, -1] > 1e-7 * scale:
        return LpResult("infeasible", iterations=tab.iterations)

    # drive zero-level artificials out of the basis; drop redundant rows
    keep = []
    for i in range(m):
        if is_art[tab.basis[i]]:
            nz = np.flatnonzero((np.abs(tab.T[i, :ncols]) > TOL) & ~is_art)
            if nz.size == 0:
                continue
            tab.pivot(i, int(nz[0]))
        keep.append(i)
    T = np.vstack([tab.T[keep], tab.T[-1:]])
    T = np.delete(T, np.flatnonzero(is_art), axis=1)
    basis = [tab.basis[i] for i in keep]
    ncols = nx + n_slack

    tab2 = _Tableau(T, basis)
    tab2.iterations = tab.iterations
    cost = np.zeros(ncols)
    cost[:nx] = c
    T[-1, :] = 0.0
    T[-1, :ncols] = cost
    for i, bv in enumerate(basis):
        if cost[bv] != 0.0:
            T[-1] -= cost[bv] * T[i]
    status = tab2.run(max_iter)
    if status == "unbounded":
        return LpResult("unbounded", iterations=tab2.iterations)
    x_std = np.zeros(ncols)
    for i, bv in enumerate(basis):
        x_std[bv] = T[i, -1]
    x = offset + transform @ x_std[:nx]
    return LpResult("optimal", float(prob.objective @ x), x, tab2.iterations)


# ---------------------------------------------------------------------------
# two-stage relaxation LP(L)


def _discrete(inst):
    if not inst.is_discrete:
        raise TypeError("LP(L) needs a discrete-scenario instance")
    return inst.first_stage.astype(float), inst.uncertainty.costs.astype(float)


def _lp_L_model(inst, support, L=None, L_min=0.0):
    """LP(L) with supports taken at level ``support``.

    With ``L=None`` the budget becomes an extra last variable that is
    minimized, bounded below by ``L_min``.
    """
    C, S = _discrete(inst)
    K, n = S.shape
    nv = n + K * n + (L is None)
    obj = np.zeros(nv)
    upper = np.full(nv, np.inf)
    lower = np.zeros(nv)
    upper[:n][C > support] = 0.0
    upper[n:n + K * n][(S > support).ravel()] = 0.0
    if L is None:
        obj[-1] = 1.0
        lower[-1] = L_min
    lp = LinearProgram(obj, lower=lower, upper=upper)
    for s in range(K):
        row = np.zeros(nv)
        row[:n] = C
        row[n + s * n:n + (s + 1) * n] = S[s]
        if L is None:
            row[-1] = -1.0
            lp.add(row, "<=", 0.0)
        else:
            lp.add(row, "<=", L)
    for s in range(K):
        row = np.zeros(nv)
        row[:n] = 1.0
        row[n + s * n:n + (s + 1) * n] = 1.0
        lp.add(row, "==", inst.p)
    for s in range(K):
        for e in range(n):
            row = np.zeros(nv)
            row[e] = 1.0
            row[n + s * n + e] = 1.0
            lp.add(row, "<=", 1.0)
    return lp


def build_lp_L(inst, L):
    """Feasibility program LP(L).

    Variables are ``x_e`` (first ``n``) then ``y_e^S`` scenario-major. Items
    whose cost exceeds ``L`` are fixed to zero through their bounds.
    """
    return _lp_L_model(inst, support=L, L=L)


def split_lp_L_point(inst, x):
    n = inst.n
    K = inst.uncertainty.K
    return x[:n].copy(), x[n:n + K * n].reshape(K, n).copy()


class LStar(NamedTuple):
    value: float
    x: np.ndarray
    y: np.ndarray


def lp_L_feasible(inst, L):
    return solve_lp(build_lp_L(inst, L)).status == "optimal"


def find_L_star(inst, mode="breakpoints", tol=None):
    """Smallest budget ``L`` for which LP(L) is feasible, with a feasible point.

    ``mode="breakpoints"`` is exact: supports only change at cost values, so
    the breakpoint window holding L* is located by bisection over breakpoints
    and L* is then minimized as an LP variable with the supports frozen.
    ``mode="bisect"`` is plain bisection on ``[0, (n-1) c_max]`` down to
    ``tol`` (default ``1e-6 * c_max``).
    """
    C, S = _discrete(inst)
    n = inst.n
    c_max = float(max(C.max(), S.max()))
    top = (n - 1) * c_max
    top_res = solve_lp(build_lp_L(inst, top))
    assert top_res.status == "optimal", "LP(L) infeasible at (n-1)*c_max"

    if mode == "bisect":
        tol = 1e-6 * max(c_max, 1.0) if tol is None else tol
        lo, hi, best = 0.0, top, top_res
        res = solve_lp(build_lp_L(inst, 0.0))
        if res.status == "optimal":
            return LStar(0.0, *split_lp_L_point(inst, res.x))
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            res = solve_lp(build_lp_L(inst, mid))
            if res.status == "optimal":
                hi, best = mid, res
            else:
                lo = mid
        return LStar(hi, *split_lp_L_point(inst, best.x))
    if mode != "breakpoints":
        raise ValueError(f"unknown mode {mode!r}")

    bps = np.unique(np.concatenate([[0.0], C, S.ravel()]))
    results = {}

    def feasible(i):
        if i not in results:
            results[i] = solve_lp(build_lp_L(inst, bps[i]))
        return results[i].status == "optimal"

    # smallest breakpoint index with LP(b) feasible, or len(bps) if none
    lo, hi = 0, len(bps)
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    j = lo
    if j > 0:
        w = j - 1
        res = solve_lp(_lp_L_model(inst, support=bps[w], L=None, L_min=bps[w]))
        if res.status == "optimal" and (j == len(bps) or res.x[-1] < bps[j]):
            x, y = split_lp_L_point(inst, res.x[:-1])
            return LStar(float(res.x[-1]), x, y)
        assert j < len(bps), "LP(L) infeasible in the last breakpoint window"
    return LStar(float(bps[j]), *split_lp_L_point(inst, results[j].x))


# ---------------------------------------------------------------------------
# recoverable pair relaxation


def build_mip3_relaxation(inst):
    """Continuous relaxation of the recoverable pair MIP (interval costs).

    Variables ``x_i`` (first stage only), ``y_i`` (second stage only) and
    ``z_i`` (both), each in ``[0, 1]``, laid out as ``[x | y | z]``.
    """
    if not inst.is_interval or inst.k is None:
        raise TypeError("pair relaxation needs an interval instance with k")
    n, p, k = inst.n, inst.p, inst.k
    C = inst.first_stage.astype(float)
    cbar = inst.uncertainty.upper.astype(float)
    lp = LinearProgram(np.concatenate([C, cbar, C + cbar]), lower=np.zeros(3 * n), upper=np.ones(3 * n))
    ones, zeros = np.ones(n), np.zeros(n)
    lp.add(np.concatenate([ones, zeros, ones]), "==", p)
    lp.add(np.concatenate([zeros, ones, ones]), "==", p)
    lp.add(np.concatenate([zeros, zeros, ones]), ">=", p - k)
    eye = np.eye(n)
    for i in range(n):
        lp.add(np.concatenate([eye[i], zeros, eye[i]]), "<=", 1.0)
    for i in range(n):
        lp.add(np.concatenate([zeros, eye[i], eye[i]]), "<=", 1.0)
    return lp
