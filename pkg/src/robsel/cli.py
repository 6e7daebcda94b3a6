"""Command-line front end: ``robsel gen|solve|verify|bench``."""

import argparse
import json
import sys

import numpy as np

from . import bench
from .gen import gen_random, gen_rec_partition, gen_set_cover, gen_three_sat, gen_ts_partition
from .model import Instance, Solution, validate_instance
from .oracle import EnumerationTooLarge
from .rounding import RoundingFailure
from .solvers import METHODS, NotApplicable, solve
from .verify import check_solution


def _jsonable(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _dump(data, path):
    text = json.dumps(data, default=_jsonable)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def parse_dimacs(text):
    """Return ``(clauses, num_vars)`` from DIMACS CNF text."""
    num_vars = None
    literals = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line {line!r}")
            num_vars = int(parts[2])
            continue
        literals.extend(int(tok) for tok in line.split())
    clauses, cur = [], []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    if num_vars is None:
        num_vars = max((abs(l) for c in clauses for l in c), default=0)
    return clauses, num_vars


def cmd_gen(args):
    if args.kind == "random":
        kind = "discrete" if args.discrete else "interval"
        inst = gen_random(args.n, args.p, args.k, kind, K=args.K, cost_bound=args.cost_bound, seed=args.seed)
    elif args.kind == "rec-partition":
        inst = gen_rec_partition(_ints(args.a), args.k)
    elif args.kind == "ts-partition":
        inst = gen_ts_partition(_ints(args.a))
    elif args.kind == "three-sat":
        with open(args.cnf) as fh:
            clauses, num_vars = parse_dimacs(fh.read())
        inst = gen_three_sat(clauses, num_vars)
    else:
        family = [_ints(block) for block in args.sets.split(";")]
        universe = _ints(args.universe) if args.universe else sorted(set().union(*map(set, family)))
        inst = gen_set_cover(universe, family)
    _dump(inst.to_dict(), args.output)
    return 0


def _read_instance(path):
    inst = Instance.from_dict(_load_json(path))
    problems = validate_instance(inst)
    if problems:
        raise ValueError("invalid instance: " + "; ".join(problems))
    return inst


def cmd_solve(args):
    inst = _read_instance(args.instance)
    trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    sol = solve(inst, args.method, seed=args.seed, retries=args.retries, trace=trace)
    _dump(sol.to_dict(), args.output)
    return 0


def cmd_verify(args):
    inst = _read_instance(args.instance)
    sol = Solution.from_dict(_load_json(args.solution))
    problems = check_solution(inst, sol)
    for line in problems:
        print(f"violation: {line}", file=sys.stderr)
    if problems:
        return 1
    print(f"ok: objective {sol.objective}")
    return 0


def cmd_bench(args):
    rows = [row for *_, row in bench.run_suite(seed=args.seed)]
    if not args.no_ladder:
        rows += bench.ladder(sizes=tuple(_ints(args.ladder_sizes)), seed=args.seed)
    if args.sweep:
        rows += bench.rounding_sweep(bench.tiny_discrete(), seeds=args.sweep)
    if args.output in (None, "-"):
        bench.write_csv(rows, sys.stdout)
    else:
        with open(args.output, "w", newline="") as fh:
            bench.write_csv(rows, fh)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="robsel", description="Robust selection solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write an instance file")
    gsub = g.add_subparsers(dest="kind", required=True)
    r = gsub.add_parser("random")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--k", type=int, default=None)
    unc = r.add_mutually_exclusive_group()
    unc.add_argument("--interval", action="store_true", help="interval uncertainty (default)")
    unc.add_argument("--discrete", action="store_true")
    r.add_argument("--K", type=int, default=None, help="scenario count for --discrete")
    r.add_argument("--cost-bound", type=int, default=50)
    r.add_argument("--seed", type=int, default=0)
    rp = gsub.add_parser("rec-partition")
    rp.add_argument("--a", required=True, help="comma-separated integers")
    rp.add_argument("--k", type=int, default=1)
    tp = gsub.add_parser("ts-partition")
    tp.add_argument("--a", required=True, help="comma-separated integers")
    sat = gsub.add_parser("three-sat")
    sat.add_argument("--cnf", required=True, help="DIMACS file")
    sc = gsub.add_parser("set-cover")
    sc.add_argument("--sets", required=True, help="sets separated by ';', elements by ','")
    sc.add_argument("--universe", default=None, help="defaults to the union of the sets")
    for p in (r, rp, tp, sat, sc):
        p.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--retries", type=int, default=10)
    s.add_argument("--trace", action="store_true", help="print exchanges to stderr")
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a solution against its instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run the benchmark suite and write CSV")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--ladder-sizes", default="250,500,1000,2000")
    b.add_argument("--no-ladder", action="store_true")
    b.add_argument("--sweep", type=int, default=100, help="rounding seeds on the tiny discrete instance (0 skips)")
    b.add_argument("-o", "--output", default="-")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotApplicable, EnumerationTooLarge, RoundingFailure, ValueError, TypeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
