"""Method dispatch shared by the CLI and the benchmark suite."""

from .oracle import exact_recoverable, exact_two_stage
from .recoverable import solve_recoverable_interval
from .rounding import RoundingParams, solve_two_stage_discrete
from .two_stage import solve_two_stage_interval

METHODS = ("auto", "rec-interval", "ts-interval", "ts-discrete", "oracle")


class NotApplicable(ValueError):
    pass


def pick_method(inst):
    if inst.is_interval:
        return "rec-interval" if inst.k is not None else "ts-interval"
    return "oracle" if inst.k is not None else "ts-discrete"


def solve(inst, method="auto", seed=0, retries=10, trace=None):
    if method == "auto":
        method = pick_method(inst)
    if method == "rec-interval":
        if not inst.is_interval or inst.k is None:
            raise NotApplicable("rec-interval needs an interval instance with k")
        return solve_recoverable_interval(inst, trace=trace)
    if method == "ts-interval":
        if not inst.is_interval or inst.k is not None:
            raise NotApplicable("ts-interval needs an interval instance without k")
        return solve_two_stage_interval(inst)
    if method == "ts-discrete":
        if not inst.is_discrete or inst.k is not None:
            raise NotApplicable("ts-discrete needs a discrete instance without k")
        return solve_two_stage_discrete(inst, RoundingParams(retries=retries, seed=seed))
    if method == "oracle":
        return exact_recoverable(inst) if inst.k is not None else exact_two_stage(inst)
    raise NotApplicable(f"unknown method {method!r}")
