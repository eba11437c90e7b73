"""Seeded benchmark grid comparing the exact DP, the FPTAS and the oracle."""
from __future__ import annotations

import itertools
import json
import math
import time
from fractions import Fraction

from .exact import solve_exact
from .fptas import parse_rational, solve_fptas
from .instances import generate_instance
from .model import objective_z
from .oracle import brute_force_optimum

BUILTIN_SUITE = {
    "items": [2, 3, 4, 5, 6],
    "cycles": [2, 3, 4, 6],
    "max_sizes": [10, 100],
    "eps": ["1", "1/2", "1/5", "1/10"],
    "seeds": 5,
    "oracle_limit": 10**5,
}


def load_suite(path) -> dict:
    """Read a JSON suite; missing keys fall back to the builtin grid."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    unknown = set(data) - set(BUILTIN_SUITE)
    if unknown:
        raise ValueError(f"unknown suite keys: {sorted(unknown)}")
    return {**BUILTIN_SUITE, **data}


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, (time.perf_counter() - start) * 1000.0


def _base(instance_id, inst):
    return {"instance_id": instance_id, "n": inst.n, "k": inst.joint_cycle,
            "D": inst.total_demand}


def bench_instance(instance_id, inst, eps_list, oracle_limit, timing=False):
    rows = []
    (sol, peak), ms = _timed(solve_exact, inst)
    rows.append({**_base(instance_id, inst), "engine": "exact", "eps": None, "peak": peak,
                 "z": sol.objective, "states": sol.states_visited,
                 "millis": ms if timing else None, "ratio_bound": Fraction(1),
                 "times": sol.times})
    for eps in eps_list:
        res, ms = _timed(solve_fptas, inst, eps)
        rows.append({**_base(instance_id, inst), "engine": "fptas", "eps": res.scale.eps_prime,
                     "peak": res.value, "z": objective_z(inst, res.times),
                     "states": res.dp.states_visited, "millis": ms if timing else None,
                     "ratio_bound": res.ratio_bound, "times": res.times})
    if math.prod(inst.cycles) <= oracle_limit:
        orc, ms = _timed(brute_force_optimum, inst, oracle_limit)
        rows.append({**_base(instance_id, inst), "engine": "oracle", "eps": None,
                     "peak": orc.best_peak, "z": objective_z(inst, orc.best_times),
                     "states": orc.assignments_evaluated, "millis": ms if timing else None,
                     "ratio_bound": None, "times": orc.best_times})
    return rows


def run_suite(suite=None, timing=False):
    suite = {**BUILTIN_SUITE, **(suite or {})}
    eps_list = [parse_rational(e) for e in suite["eps"]]
    rows = []
    grid = itertools.product(suite["items"], suite["cycles"], suite["max_sizes"],
                             range(suite["seeds"]))
    for n, k, smax, rep in grid:
        inst = generate_instance(n, k, smax, seed=rep)
        iid = f"n{n}-k{k}-s{smax}-r{rep}"
        rows.extend(bench_instance(iid, inst, eps_list, suite["oracle_limit"], timing))
    return rows


def guarantee_violations(rows):
    """FPTAS rows whose peak exceeds ``(1 + eps') * V*`` of the same instance."""
    exact = {r["instance_id"]: r["peak"] for r in rows if r["engine"] == "exact"}
    return [r for r in rows if r["engine"] == "fptas" and r["instance_id"] in exact
            and r["peak"] > (1 + r["eps"]) * exact[r["instance_id"]]]
