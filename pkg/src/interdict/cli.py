"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 configuration error (bad flags or an
algorithm that does not fit the instance kind), 4 resource guard tripped.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from . import bench, formats
from .errors import (
    BadK, InconsistentSolution, InterdictError, InvalidDecomposition, NotAForest, TooLarge, WrongKind,
)
from .graph import Kind, count_customer_joints, validate_instance

OK, INPUT_ERROR, CONFIG_ERROR, RESOURCE_GUARD = 0, 2, 3, 4

log = logging.getLogger("interdict")


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(CONFIG_ERROR, f"{self.prog}: error: {message}\n")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_instance(path):
    inst = formats.read_instance(_read(path))
    problems = validate_instance(inst)
    if problems:
        raise _InputError("; ".join(map(str, problems)))
    return inst


class _InputError(Exception):
    pass


def _seed(args):
    env = os.environ.get("INTERDICT_SEED")
    if env is not None and env.strip():
        try:
            return int(env, 0)
        except ValueError:
            raise ConfigError(f"INTERDICT_SEED={env!r} is not an integer") from None
    return args.seed


def _ids(items):
    return " ".join(map(str, sorted(items)))


def solution_report(solution) -> str:
    what = "edges" if solution.kind is Kind.EDGE else "facilities"
    lines = [
        "SOLUTION v1",
        f"problem {solution.kind.value}",
        f"objective {formats.format_weight(float(solution.objective))}",
        f"removed_{what} {_ids(solution.removed)}".rstrip(),
        f"disconnected {_ids(solution.disconnected)}".rstrip(),
    ]
    return "\n".join(lines) + "\n"


# subcommands -----------------------------------------------------------------

def cmd_generate(args):
    from .instgen import GenConfig, generate

    if args.r is not None and args.r_ratio is not None:
        raise ConfigError("give either --r or --r-ratio")
    if args.r is None and args.r_ratio is None:
        args.r = 1
    try:
        cfg = GenConfig(
            family=args.family, n=args.n, p=args.p, weights=args.weights,
            budget=args.r if args.r_ratio is None else None, budget_ratio=args.r_ratio,
            seed=_seed(args), kind=Kind(args.kind), planes=args.planes,
            per_plane=args.per_plane, ring=args.ring, stations=args.stations,
        )
        inst = generate(cfg)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _write(args.out, formats.write_instance(inst))
    return OK


def _decomposition_for(inst, path):
    from .treewidth import heuristic_decomposition, to_extended_nice, tree_decomposition_of_tree

    g = inst.graph
    if path:
        dec = formats.read_treedec(_read(path))
    elif g.is_forest():
        dec = tree_decomposition_of_tree(g)
    else:
        dec = heuristic_decomposition(g)
    return to_extended_nice(g, dec)


def cmd_solve(args):
    inst = _load_instance(args.input)
    if args.decomp and args.algo != "btw":
        raise ConfigError("--decomp only applies to --algo btw")
    if args.algo == "rfic":
        if inst.kind is not Kind.FACILITY:
            raise WrongKind("--algo rfic needs a facility instance")
        from .tree_rfic import solve_tree_rfic

        solution, table = solve_tree_rfic(inst)
    elif inst.kind is not Kind.EDGE:
        raise WrongKind(f"--algo {args.algo} needs an edge instance")
    elif args.algo == "tree":
        from .tree_reic import solve_tree_reic

        solution, table = solve_tree_reic(inst)
    else:
        from .btw_reic import solve_btw_reic

        solution, table = solve_btw_reic(inst, _decomposition_for(inst, args.decomp))
    report = solution_report(solution)
    sys.stdout.write(report)
    if args.out:
        _write(args.out, report)
    if args.emit_table:
        sys.stdout.write(_table_dump(table))
    return OK


def _table_dump(table) -> str:
    from .btw_reic import BtwDpTable

    lines = []
    if isinstance(table, BtwDpTable):
        for t, vals in enumerate(table.values):
            for f in range(vals.shape[0]):
                lines.append(f"state {t} {f} " + " ".join(formats.format_weight(float(x)) for x in vals[f]))
    else:
        for v in range(table.values.shape[0]):
            for xy, row in (("00", 0), ("10", 1), ("X1", 2)):
                lines.append(f"state {v} {xy} " + " ".join(formats.format_weight(float(x)) for x in table.values[v, row]))
    return "\n".join(lines) + "\n"


def cmd_oracle(args):
    from .oracle import brute_force

    inst = _load_instance(args.input)
    report = solution_report(brute_force(inst))
    sys.stdout.write(report)
    if args.out:
        _write(args.out, report)
    return OK


def cmd_export_lp(args):
    from .ilp_export import export_reic_lp, import_solution

    inst = _load_instance(args.input)
    text = export_reic_lp(inst)
    if args.solution:
        solution = import_solution(text, _read(args.solution))
        sys.stdout.write(solution_report(solution))
        return OK
    _write(args.out, text)
    return OK


def cmd_decompose(args):
    from .treewidth import grid_decomposition, heuristic_decomposition, tree_decomposition_of_tree

    if args.method == "grid":
        if args.planes is None or args.per_plane is None:
            raise ConfigError("--method grid needs --planes and --per-plane")
        dec = grid_decomposition(args.planes, args.per_plane)
    else:
        inst = _load_instance(args.input) if args.input else None
        if inst is None:
            raise ConfigError(f"--method {args.method} needs --in")
        g = inst.graph
        if args.method == "tree" or (args.method == "auto" and g.is_forest()):
            dec = tree_decomposition_of_tree(g)
        else:
            dec = heuristic_decomposition(g)
    _write(args.out, formats.write_treedec(dec))
    log.info("width %d, %d bags", dec.width, len(dec.bags))
    return OK


def cmd_validate(args):
    from .treewidth import validate_decomposition

    inst = formats.read_instance(_read(args.input))
    problems = [str(p) for p in validate_instance(inst, for_tree=args.tree)]
    if args.decomp:
        dec = formats.read_treedec(_read(args.decomp))
        problems += [str(v) for v in validate_decomposition(inst.graph, dec)]
    for p in problems:
        print(p)
    if problems:
        return INPUT_ERROR
    print("ok")
    return OK


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise ConfigError(f"bad integer list {text!r}") from None


def cmd_bench(args):
    if args.r is not None and args.r_ratio is not None:
        raise ConfigError("give either --r or --r-ratio")
    if args.r is None and args.r_ratio is None:
        args.r = 1
    if args.reps < 1 or args.jobs < 1:
        raise ConfigError("--reps and --jobs must be positive")
    extra = {}
    if args.family == "walker-grid":
        extra = dict(planes=args.planes, per_plane=args.per_plane, ring=args.ring, stations=args.stations)
    try:
        tasks = bench.plan(
            args.family, _int_list(args.sizes), args.p, args.reps, _seed(args), args.algo,
            budget=args.r, budget_ratio=args.r_ratio, weights=args.weights,
            verify_small=args.verify_small, **extra,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    fh = open(args.out, "w") if args.out else sys.stdout
    try:
        bench.write_records([], fh)

        def sink(rec):
            bench.write_records([rec], fh, header=False)
            fh.flush()

        bench.run_benchmark(tasks, jobs=args.jobs, sink=sink)
    finally:
        if args.out:
            fh.close()
    return OK


def cmd_stats(args):
    with open(args.input) if args.input != "-" else sys.stdin as fh:
        try:
            records = bench.read_records(fh)
        except (ValueError, KeyError, TypeError) as exc:
            raise _InputError(str(exc)) from None
    keys = tuple(k for k in args.by.split(",") if k)
    bad = [k for k in keys + (args.metric,) if k not in bench.CSV_HEADER]
    if bad:
        raise ConfigError(f"unknown column(s) {bad}")
    out = sys.stdout if not args.out else open(args.out, "w")
    try:
        bench.write_summary(bench.summarize(records, keys, args.metric), keys, out, args.metric)
    finally:
        if args.out:
            out.close()
    return OK


def cmd_joints(args):
    inst = _load_instance(args.input)
    print(count_customer_joints(inst))
    return OK


# parser ----------------------------------------------------------------------

def _gen_flags(p):
    p.add_argument("--family", default="prufer", choices=("prufer", "leaf-cluster", "walker-grid"))
    p.add_argument("--p", type=float, default=0.4, help="facility probability")
    p.add_argument("--weights", default="unit", help="unit or uniform:W")
    p.add_argument("--r", type=int, default=None, help="fixed budget")
    p.add_argument("--r-ratio", type=float, default=None, help="budget as a fraction of n")
    p.add_argument("--seed", type=int, default=0, help="master seed (INTERDICT_SEED overrides)")
    p.add_argument("--planes", type=int, default=2)
    p.add_argument("--per-plane", type=int, default=4)
    p.add_argument("--ring", action="store_true")
    p.add_argument("--stations", type=int, default=2)


def build_parser():
    top = _Parser(prog="interdict", description="Covering interdiction solvers.")
    top.add_argument("-v", "--verbose", action="store_true")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="emit a random instance")
    _gen_flags(p)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--kind", default="edge", choices=("edge", "facility"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve an instance exactly")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--algo", required=True, choices=("tree", "btw", "rfic"))
    p.add_argument("--decomp", help="TREEDEC file for --algo btw")
    p.add_argument("--out")
    p.add_argument("--emit-table", action="store_true", help="print the DP value rows")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force solve a small instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-lp", help="write the integer program in LP format")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.add_argument("--solution", help="read a 'name value' listing back instead of exporting")
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("decompose", help="emit a tree decomposition")
    p.add_argument("--in", dest="input")
    p.add_argument("--method", default="auto", choices=("auto", "tree", "heuristic", "grid"))
    p.add_argument("--planes", type=int)
    p.add_argument("--per-plane", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate", help="check an instance and optional decomposition")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--decomp")
    p.add_argument("--tree", action="store_true", help="also require a tree")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="timed runs over a parameter grid, CSV out")
    _gen_flags(p)
    p.add_argument("--sizes", default="100", help="comma-separated n values")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--algo", default="tree", choices=bench.ALGORITHMS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verify-small", action="store_true", help="check small instances against the oracle")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="summarize a benchmark CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--by", default="family,n,p,r,algorithm")
    p.add_argument("--metric", default="runtime_ns")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("joints", help="count customer joints")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_joints)
    return top


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else CONFIG_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RESOURCE_GUARD
    except (ConfigError, WrongKind, BadK) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    except (_InputError, InvalidDecomposition, NotAForest, InconsistentSolution, InterdictError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
