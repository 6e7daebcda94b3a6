"""Independent feasibility and objective check for solution records."""

from .model import best_completion, best_recovery, evaluate_cost


def check_solution(inst, sol, tol=1e-6):
    """Return a list of violated constraints; empty means the record is consistent.

    The objective is recomputed from scratch as the worst scenario cost of the
    first-stage set with an optimal second-stage reply, and every reported
    second-stage set must itself be such a reply.
    """
    problems = []
    ids, S = inst.scenarios()
    n, p, k = inst.n, inst.p, inst.k
    X = list(sol.first_stage)
    if len(set(X)) != len(X):
        problems.append("first stage lists an item twice")
    if any(not 0 <= e < n for e in X):
        problems.append("first stage uses an item index out of range")
        return problems
    if set(sol.per_scenario) != set(ids):
        problems.append(f"scenario ids {sorted(sol.per_scenario)} do not match {ids}")
        return problems

    if k is None and len(X) > p:
        problems.append(f"cardinality: |X|={len(X)} exceeds p={p}")
    if k is not None and len(X) != p:
        problems.append(f"cardinality: |X|={len(X)} must equal p={p}")
    if problems:
        return problems

    first = evaluate_cost(X, inst.first_stage)
    worst = None
    for sid, row in zip(ids, S):
        Y = list(sol.per_scenario[sid])
        if len(set(Y)) != len(Y) or any(not 0 <= e < n for e in Y):
            problems.append(f"scenario {sid}: malformed second-stage set")
            continue
        if k is None:
            if set(X) & set(Y):
                problems.append(f"scenario {sid}: disjointness violated, X and Y share {sorted(set(X) & set(Y))}")
            if len(X) + len(Y) != p:
                problems.append(f"scenario {sid}: cardinality |X|+|Y|={len(X) + len(Y)} != p={p}")
            _, best = best_completion(X, row, p)
        else:
            if len(Y) != p:
                problems.append(f"scenario {sid}: cardinality |Y|={len(Y)} != p={p}")
            if len(set(Y) - set(X)) > k:
                problems.append(f"scenario {sid}: recovery limit, {len(set(Y) - set(X))} new items > k={k}")
            _, best = best_recovery(X, row, p, k)
        if evaluate_cost(Y, row) != best:
            problems.append(f"scenario {sid}: second-stage set costs {evaluate_cost(Y, row)}, best reply costs {best}")
        total = first + best
        worst = total if worst is None else max(worst, total)
    if worst is not None and abs(worst - sol.objective) > tol:
        problems.append(f"objective mismatch: claimed {sol.objective}, recomputed {worst}")
    return problems
