"""Command line entry point: ``rsp <command> ...``.

Exit codes: 0 success, 2 invalid input, 3 budget or joint-cycle guard exceeded.
"""
from __future__ import annotations

import argparse
import shlex
import sys
import time
from pathlib import Path

from . import bench, plotting
from .errors import BudgetExceeded, GuardError, InvalidInput
from .exact import DEFAULT_STATE_BUDGET, solve_exact
from .fptas import certify, parse_rational, relaxed_feasible, solve_fptas
from .instances import generate_instance, parse_instance, render_instance
from .model import (cascading_check, constant_C, inventory_profile, is_valid_assignment,
                    objective_z, order_quantities, shift_normalize)
from .oracle import DEFAULT_ENUMERATION_BUDGET, brute_force_optimum
from .report import both, decimal, rational, times_str, write_csv

EXIT_OK, EXIT_INVALID, EXIT_BUDGET = 0, 2, 3


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    return parse_instance(text)


def _header(argv, inst, out):
    print(f"command: {shlex.join(argv)}", file=out)
    print(f"instance: n={inst.n} k={inst.joint_cycle} D={both(inst.total_demand)} "
          f"C={both(constant_C(inst))}", file=out)


def _engine_lines(name, inst, times, peak, out):
    prof = inventory_profile(inst, times)
    print(f"engine: {name}", file=out)
    print(f"  peak: {both(peak)}", file=out)
    print(f"  times: {times_str(times)}", file=out)
    print(f"  z: {objective_z(inst, times)}", file=out)
    print(f"  V_k: {both(prof.levels[-1])}", file=out)
    return prof


def _base_row(args, inst):
    return {"instance_id": Path(args.file).stem, "n": inst.n, "k": inst.joint_cycle,
            "D": inst.total_demand}


def _emit_csv(args, rows, inst=None, prof=None, times=None):
    if not args.csv:
        return
    write_csv(rows, args.csv)
    if not args.no_plots and prof is not None:
        (fig,) = plotting.figure_paths(args.csv, "profile")
        plotting.plot_profile(inst, prof, times, fig)


def cmd_solve(args, argv, out):
    inst = _load(args.file)
    _header(argv, inst, out)
    start = time.perf_counter()
    sol, peak = solve_exact(inst, args.budget)
    ms = (time.perf_counter() - start) * 1000.0
    prof = _engine_lines("exact", inst, sol.times, peak, out)
    print(f"  states: {sol.states_visited} table: {sol.value_table_size} millis: {ms:.3f}",
          file=out)
    row = {**_base_row(args, inst), "engine": "exact", "eps": None, "peak": peak,
           "z": sol.objective, "states": sol.states_visited,
           "millis": ms if args.timing else None, "ratio_bound": 1}
    _emit_csv(args, [row], inst, prof, sol.times)
    return EXIT_OK


def cmd_approx(args, argv, out):
    inst = _load(args.file)
    eps_prime = parse_rational(args.eps)
    _header(argv, inst, out)
    start = time.perf_counter()
    res = solve_fptas(inst, eps_prime, args.budget)
    ms = (time.perf_counter() - start) * 1000.0
    prof = _engine_lines("fptas", inst, res.times, res.value, out)
    sc = res.scale
    print(f"  eps': {rational(sc.eps_prime)} eps: {rational(sc.eps)} "
          f"scale: {both(sc.factor)}", file=out)
    print(f"  scaled sizes: {times_str(sc.scaled_sizes)} scaled D: {both(sc.scaled_demand)}",
          file=out)
    print(f"  value: {both(res.value)}", file=out)
    print(f"  lower_bound: {both(res.lower_bound)}", file=out)
    print(f"  ratio_bound: {both(res.ratio_bound)} (guarantee {rational(1 + sc.eps_prime)})",
          file=out)
    print(f"  states: {res.dp.states_visited} table: {res.dp.value_table_size} "
          f"millis: {ms:.3f}", file=out)
    row = {**_base_row(args, inst), "engine": "fptas", "eps": sc.eps_prime, "peak": res.value,
           "z": objective_z(inst, res.times), "states": res.dp.states_visited,
           "millis": ms if args.timing else None, "ratio_bound": res.ratio_bound}
    _emit_csv(args, [row], inst, prof, res.times)
    return EXIT_OK


def cmd_oracle(args, argv, out):
    inst = _load(args.file)
    _header(argv, inst, out)
    res = brute_force_optimum(inst, args.limit)
    _engine_lines("oracle", inst, res.best_times, res.best_peak, out)
    print(f"  assignments: {res.assignments_evaluated}", file=out)
    return EXIT_OK


def _parse_times(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InvalidInput(f"--times must be comma-separated integers, got {text!r}") from None


def cmd_check(args, argv, out):
    inst = _load(args.file)
    times = _parse_times(args.times)
    _header(argv, inst, out)
    valid = is_valid_assignment(inst, times)
    print(f"valid: {str(valid).lower()}", file=out)
    if not valid:
        return EXIT_INVALID
    k, d = inst.joint_cycle, inst.total_demand
    prof = inventory_profile(inst, times)
    q = order_quantities(inst, times)
    z = objective_z(inst, times)
    c = constant_C(inst)
    vk = prof.levels[-1]
    print(f"levels: {' '.join(rational(v) for v in prof.levels)}", file=out)
    print(f"peak: {both(prof.peak)} at time {prof.peak_time}", file=out)
    print(f"Q: {' '.join(map(str, q))}", file=out)
    print(f"z: {z}", file=out)
    print(f"V_k: {both(vk)}", file=out)
    print(f"identity k*V_k + z = C: {str(k * vk + z == c).lower()} "
          f"({rational(k * vk + z)} vs {rational(c)})", file=out)
    prefix = 0
    recurrence = True
    for ell in range(1, k + 1):
        prefix += q[ell - 1]
        recurrence &= prof.levels[ell - 1] == vk - ell * d + prefix
    print(f"recurrence V_l = V_k - l*D + sum Q: {str(recurrence).lower()}", file=out)
    ok, viol = cascading_check(inst, times)
    print(f"cascading: {str(ok).lower()} max_violation: {both(viol)}", file=out)
    shifted = shift_normalize(inst, times)
    print(f"shift_normalized: {times_str(shifted)} "
          f"(V_k {both(inventory_profile(inst, shifted).levels[-1])})", file=out)
    if args.eps is not None:
        eps = parse_rational(args.eps)
        upper, lower, ratio = certify(inst, times, eps)
        print(f"eps: {rational(eps)}", file=out)
        print(f"relaxed_feasible: {str(relaxed_feasible(inst, times, eps)).lower()}", file=out)
        print(f"certificate: upper {both(upper)} lower_bound {both(lower)} "
              f"ratio_bound {both(ratio)}", file=out)
    return EXIT_OK


def cmd_gen(args, argv, out):
    inst = generate_instance(args.items, args.cycle, args.max_size, args.seed)
    text = render_instance(
        inst, f"gen --items {args.items} --cycle {args.cycle} "
              f"--max-size {args.max_size} --seed {args.seed}")
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def cmd_bench(args, argv, out):
    try:
        suite = bench.load_suite(args.suite) if args.suite else None
    except (OSError, ValueError) as exc:
        raise InvalidInput(f"bad suite file: {exc}") from None
    rows = bench.run_suite(suite, timing=args.timing)
    write_csv(rows, args.csv)
    bad = bench.guarantee_violations(rows)
    ids = {r["instance_id"] for r in rows}
    print(f"command: {shlex.join(argv)}", file=out)
    print(f"instances: {len(ids)} rows: {len(rows)} csv: {args.csv}", file=out)
    exact = {r["instance_id"]: r["peak"] for r in rows if r["engine"] == "exact"}
    ratios = [r["peak"] / exact[r["instance_id"]] for r in rows if r["engine"] == "fptas"]
    if ratios:
        print(f"worst fptas ratio: {decimal(max(ratios))}", file=out)
    print(f"guarantee violations: {len(bad)}", file=out)
    if not args.no_plots:
        ratio_png, states_png = plotting.figure_paths(args.csv, "ratio", "states")
        plotting.plot_ratios(rows, ratio_png)
        plotting.plot_states(rows, states_png)
        print(f"figures: {ratio_png} {states_png}", file=out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="rsp", description="Replenishment storage solvers.")
    sub = p.add_subparsers(dest="command", required=True)

    def csv_opts(sp):
        sp.add_argument("--csv", metavar="OUT", help="also write a CSV row here")
        sp.add_argument("--timing", action="store_true",
                        help="fill the CSV millis column (output is then not reproducible)")
        sp.add_argument("--no-plots", action="store_true", help="skip figures next to the CSV")

    sp = sub.add_parser("solve", help="exact dynamic program")
    sp.add_argument("file")
    sp.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    csv_opts(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("approx", help="FPTAS with exact certification")
    sp.add_argument("file")
    sp.add_argument("--eps", required=True, help="eps' as p/q or decimal")
    sp.add_argument("--budget", type=int, default=DEFAULT_STATE_BUDGET)
    csv_opts(sp)
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("oracle", help="brute-force enumeration")
    sp.add_argument("file")
    sp.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_BUDGET)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("check", help="evaluate a given schedule")
    sp.add_argument("file")
    sp.add_argument("--times", required=True, help="t1,...,tn")
    sp.add_argument("--eps")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("gen", help="generate a seeded random instance")
    sp.add_argument("--items", type=int, required=True)
    sp.add_argument("--cycle", type=int, required=True)
    sp.add_argument("--max-size", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="run the benchmark grid")
    sp.add_argument("--suite", help="JSON grid overriding the builtin suite")
    sp.add_argument("--csv", required=True)
    sp.add_argument("--timing", action="store_true")
    sp.add_argument("--no-plots", action="store_true")
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args, argv, out)
    except (GuardError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
