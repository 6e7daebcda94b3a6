"""Instance generators: uniform random instances and hardness-reduction fixtures.

The reduction generators map an instance of a known hard problem (balanced
partition, 3-SAT, minimum set cover) to a selection instance whose optimum
answers the source question. Each records the yes/no threshold in
``meta["threshold"]``, already multiplied by ``meta["scale"]``, the factor
that was applied to clear fractional costs.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .model import DiscreteScenarios, Instance, IntervalCosts

KINDS = ("random", "rec_partition", "ts_partition", "three_sat", "set_cover")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")


def generate(spec):
    """Dispatch a :class:`GenSpec` to its generator."""
    fn = {
        "random": gen_random,
        "rec_partition": gen_rec_partition,
        "ts_partition": gen_ts_partition,
        "three_sat": gen_three_sat,
        "set_cover": gen_set_cover,
    }[spec.kind]
    return fn(**spec.payload)


def gen_random(n, p, k=None, kind="interval", K=None, cost_bound=50, seed=0):
    """Costs uniform on ``0..cost_bound``; deterministic per ``seed``."""
    if n < 2 or not 1 <= p <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= p <= n-1, got n={n}, p={p}")
    if k is not None and not 0 <= k <= p:
        raise ValueError(f"k={k} must lie in 0..{p}")
    if cost_bound < 0:
        raise ValueError("cost_bound must be nonnegative")
    rng = np.random.default_rng(seed)
    C = rng.integers(0, cost_bound + 1, n)
    meta = {"generator": "random", "seed": seed, "cost_bound": cost_bound}
    if kind == "interval":
        ends = np.sort(rng.integers(0, cost_bound + 1, (2, n)), axis=0)
        unc = IntervalCosts(ends[0], ends[1])
    elif kind == "discrete":
        if K is None or K < 1:
            raise ValueError("discrete instances need K >= 1 scenarios")
        unc = DiscreteScenarios(rng.integers(0, cost_bound + 1, (K, n)))
    else:
        raise ValueError(f"unknown uncertainty kind {kind!r}")
    return Instance(C, unc, p, k, meta)


def _scaled(values, scale):
    out = [v * scale for v in values]
    assert all(v.denominator == 1 for v in out)
    return np.array([int(v) for v in out], dtype=np.int64)


def gen_rec_partition(A, k=1):
    """Recoverable instance (two scenarios) from balanced partition of ``A``.

    ``A`` has 2n entries with even sum 2b. The optimum is at most
    ``n*M1 + (n+1)*b`` exactly when A splits into two n-element halves of
    equal sum.
    """
    A = [int(a) for a in A]
    if len(A) < 2 or len(A) % 2 or sum(A) % 2 or any(a < 0 for a in A):
        raise ValueError("A needs an even number of nonnegative entries with even sum")
    if k < 1:
        raise ValueError("k must be at least 1")
    n = len(A) // 2
    b = sum(A) // 2
    M1 = 4 * n * b
    M2 = 2 * n * M1
    shift = Fraction(2 * b, n)
    scale = 1 if shift.denominator == 1 else n
    C = [Fraction(M1)] * (2 * n) + [Fraction(0)] * k + [Fraction(M2)] * k
    s1 = [Fraction(b + a) for a in A] + [Fraction(M2)] * k + [Fraction(0)] * k
    s2 = [b + shift - a for a in A] + [Fraction(M2)] * k + [Fraction(0)] * k
    labels = [f"e{i + 1}" for i in range(2 * n)] + [f"f{i + 1}" for i in range(k)] + [f"r{i + 1}" for i in range(k)]
    meta = {
        "generator": "rec_partition",
        "A": A,
        "b": b,
        "M1": M1,
        "M2": M2,
        "scale": scale,
        "threshold": scale * (n * M1 + (n + 1) * b),
        "labels": labels,
    }
    scen = np.vstack([_scaled(s1, scale), _scaled(s2, scale)])
    return Instance(_scaled(C, scale), DiscreteScenarios(scen), n + k, k, meta)


def gen_ts_partition(A):
    """Two-stage instance (three scenarios) from balanced partition of ``A``.

    The optimum is at most ``(3n/2 + 3) * b`` exactly when A splits into two
    halves of n/2 entries and equal sum, where ``b = sum(A) / 2``.
    """
    A = [int(a) for a in A]
    n = len(A)
    if n < 2 or n % 2 or any(a <= 0 for a in A):
        raise ValueError("A needs an even number of positive entries")
    b = Fraction(sum(A), 2)
    M = 4 * n * b
    avg = 6 * b / n
    if any(a > avg for a in A):
        raise ValueError(f"entries above 6b/n={avg} would give negative costs under the second scenario")
    scale = 1 if b.denominator == 1 and avg.denominator == 1 else n
    half = n // 2
    C = [3 * b + a for a in A] + [M] * half
    s1 = [Fraction(2 * a) for a in A] + [M] * half
    s2 = [avg - a for a in A] + [M] * half
    s3 = [M] * n + [Fraction(0)] * half
    labels = [f"e{i + 1}" for i in range(n)] + [f"f{i + 1}" for i in range(half)]
    threshold = (Fraction(3 * n, 2) + 3) * b * scale
    meta = {
        "generator": "ts_partition",
        "A": A,
        "b": str(b),
        "M": str(M),
        "scale": scale,
        "threshold": int(threshold),
        "labels": labels,
    }
    scen = np.vstack([_scaled(s, scale) for s in (s1, s2, s3)])
    return Instance(_scaled(C, scale), DiscreteScenarios(scen), n, None, meta)


def _check_cnf(clauses, num_vars):
    clauses = [tuple(int(l) for l in c) for c in clauses]
    if not clauses:
        raise ValueError("need at least one clause")
    for c in clauses:
        if len(c) != 3:
            raise ValueError(f"clause {c} does not have exactly 3 literals")
        if any(l == 0 or abs(l) > num_vars for l in c):
            raise ValueError(f"clause {c} uses a literal outside 1..{num_vars}")
    return clauses


def gen_three_sat(clauses, num_vars):
    """Recoverable instance (k=1) from a 3-CNF formula.

    Literals are DIMACS-style nonzero integers. One item per literal
    occurrence plus a recovery item ``r``. Scenarios come first one per
    contradictory occurrence pair, ordered by the (clause, position) of both
    occurrences, then one per clause. The optimum is 0 iff the formula is
    satisfiable, and at least 1 otherwise.
    """
    clauses = _check_cnf(clauses, num_vars)
    m = len(clauses)
    lits = [l for c in clauses for l in c]
    n_items = 3 * m + 1
    rows = []
    for a in range(3 * m):
        for b in range(a + 1, 3 * m):
            if lits[a] == -lits[b]:
                row = np.zeros(n_items, dtype=np.int64)
                row[[a, b]] = 1
                rows.append(row)
    for i in range(m):
        row = np.zeros(n_items, dtype=np.int64)
        row[3 * i:3 * i + 3] = 1
        rows.append(row)
    C = np.zeros(n_items, dtype=np.int64)
    C[-1] = num_vars
    labels = [f"e{j + 1}^{i + 1}" for i in range(m) for j in range(3)] + ["r"]
    meta = {
        "generator": "three_sat",
        "clauses": [list(c) for c in clauses],
        "num_vars": num_vars,
        "scale": 1,
        "threshold": 0,
        "labels": labels,
    }
    return Instance(C, DiscreteScenarios(np.vstack(rows)), m, 1, meta)


def gen_set_cover(universe, family):
    """Two-stage instance from minimum set cover; optimum = smallest cover size.

    Items are one per set (first-stage cost 1) followed by ``m = len(family)``
    filler items ``u_1..u_m`` (cost M). Scenario i prices the sets containing
    element i at M and leaves ``u_1..u_r`` free, r being the number of such
    sets. Families need at least two sets (p = m + 1 must stay below n = 2m).
    """
    universe = list(universe)
    family = [set(A) for A in family]
    m = len(family)
    if m < 2:
        raise ValueError("need at least two sets")
    covered = set().union(*family)
    if not set(universe) <= covered:
        raise ValueError(f"family does not cover elements {sorted(set(universe) - covered)}")
    M = len(universe) * m
    n_items = 2 * m
    rows = []
    for i in universe:
        row = np.full(n_items, M, dtype=np.int64)
        hits = [j for j, A in enumerate(family) if i in A]
        row[:m] = 0
        row[hits] = M
        row[m:m + len(hits)] = 0
        rows.append(row)
    C = np.array([1] * m + [M] * m, dtype=np.int64)
    labels = ["e{" + ",".join(map(str, sorted(A))) + "}" for A in family] + [f"u{i + 1}" for i in range(m)]
    meta = {
        "generator": "set_cover",
        "universe": universe,
        "family": [sorted(A) for A in family],
        "M": M,
        "scale": 1,
        "labels": labels,
    }
    return Instance(C, DiscreteScenarios(np.vstack(rows)), m + 1, None, meta)
