"""Benchmark runner and summary statistics.

Instances are generated from seeds derived from a master seed, solved one
at a time under a monotonic nanosecond clock, and written as CSV rows.
Generation and file I/O are outside the timed region.
"""
from __future__ import annotations

import csv
import logging
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .graph import Kind
from .instgen import GenConfig, generate

log = logging.getLogger(__name__)

CSV_HEADER = ("instance_id", "family", "n", "m", "p", "r", "seed", "algorithm", "objective", "runtime_ns")
ALGORITHMS = ("tree", "btw", "rfic", "oracle")
SMALL = 12
Z95 = 1.96


class VerificationFailed(AssertionError):
    pass


@dataclass(frozen=True)
class BenchRecord:
    instance_id: str
    family: str
    n: int
    m: int
    p: float
    r: int
    seed: int
    algorithm: str
    objective: float
    runtime_ns: int


@dataclass(frozen=True)
class StatSummary:
    key: tuple
    count: int
    mean: float
    std: float | None
    ci95: float | None
    cv: float | None


def kind_for(algorithm: str) -> Kind:
    return Kind.FACILITY if algorithm == "rfic" else Kind.EDGE


def solve(instance, algorithm: str):
    """Run one solver; returns its :class:`Solution`."""
    if algorithm == "tree":
        from .tree_reic import solve_tree_reic

        return solve_tree_reic(instance)[0]
    if algorithm == "rfic":
        from .tree_rfic import solve_tree_rfic

        return solve_tree_rfic(instance)[0]
    if algorithm == "btw":
        from .btw_reic import solve_btw_reic
        from .treewidth import heuristic_decomposition, to_extended_nice, tree_decomposition_of_tree

        g = instance.graph
        dec = tree_decomposition_of_tree(g) if g.is_forest() else heuristic_decomposition(g)
        return solve_btw_reic(instance, to_extended_nice(g, dec), check=False)[0]
    if algorithm == "oracle":
        from .oracle import brute_force

        return brute_force(instance)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def derive_seed(master: int, *key: int) -> int:
    return int(np.random.SeedSequence(master, spawn_key=key).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class _Task:
    index: int
    config: GenConfig
    algorithm: str
    rep: int
    verify_small: bool


def _verify(instance, algorithm, objective, label):
    from .oracle import brute_force

    truth = brute_force(instance).objective
    if not math.isclose(truth, objective, rel_tol=1e-9, abs_tol=1e-9):
        raise VerificationFailed(f"{label}: {algorithm} gave {objective}, oracle {truth}")


def _run_task(task: _Task) -> BenchRecord:
    cfg = task.config
    instance = generate(cfg)
    start = time.perf_counter_ns()
    solution = solve(instance, task.algorithm)
    elapsed = max(1, time.perf_counter_ns() - start)
    label = f"{cfg.family}-n{cfg.n}-p{cfg.p:g}-r{instance.budget}-{task.rep}"
    if task.verify_small and task.algorithm != "oracle":
        if instance.n <= SMALL:
            _verify(instance, task.algorithm, solution.objective, label)
        if cfg.family == "walker-grid":
            return _record(task, instance, solution, elapsed, label)
        # shrunken control instance from the same stream, small enough for the oracle
        control = generate(replace(cfg, n=SMALL, budget=min(instance.budget, 4), budget_ratio=None))
        _verify(control, task.algorithm, solve(control, task.algorithm).objective, label + "-control")
    return _record(task, instance, solution, elapsed, label)


def _record(task, instance, solution, elapsed, label):
    cfg = task.config
    return BenchRecord(
        instance_id=label,
        family=cfg.family,
        n=instance.n,
        m=instance.graph.edge_count,
        p=cfg.p,
        r=instance.budget,
        seed=cfg.seed,
        algorithm=task.algorithm,
        objective=solution.objective,
        runtime_ns=elapsed,
    )


def plan(family, sizes, p, reps, seed, algorithm, budget=None, budget_ratio=None,
         weights="unit", verify_small=False, **extra) -> list[_Task]:
    """Deterministic task list: grid point ``i``, repetition ``j`` gets seed
    ``derive_seed(seed, i, j)``."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    tasks = []
    for i, n in enumerate(sizes):
        for j in range(reps):
            cfg = GenConfig(
                family=family, n=n, p=p, weights=weights, budget=budget, budget_ratio=budget_ratio,
                seed=derive_seed(seed, i, j), kind=kind_for(algorithm), **extra,
            )
            tasks.append(_Task(len(tasks), cfg, algorithm, j, verify_small))
    return tasks


def run_benchmark(tasks, jobs: int = 1, sink=None) -> list[BenchRecord]:
    """Run ``tasks`` in order; ``sink(record)`` is called as rows complete.

    With ``jobs > 1`` instances run on a process pool but rows are still
    emitted in task order. On failure the rows finished so far have already
    gone to ``sink``; the failing seed is logged and the error re-raised.
    """
    records = []

    def emit(rec):
        records.append(rec)
        if sink is not None:
            sink(rec)

    if jobs <= 1:
        for t in tasks:
            try:
                emit(_run_task(t))
            except Exception:
                log.error("instance %d (seed %d) failed", t.index, t.config.seed)
                raise
        return records
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_task, t) for t in tasks]
        for t, fut in zip(tasks, futures):
            try:
                emit(fut.result())
            except Exception:
                log.error("instance %d (seed %d) failed", t.index, t.config.seed)
                for f in futures:
                    f.cancel()
                raise
    return records


def summarize_values(values) -> tuple:
    """``(count, mean, std, ci95, cv)``; std/ci95/cv are ``None`` when undefined."""
    m = len(values)
    if m == 0:
        raise ValueError("no values to summarize")
    mean = math.fsum(values) / m
    if m == 1:
        return m, mean, None, None, None
    std = statistics.stdev(values)
    ci95 = Z95 * std / math.sqrt(m)
    cv = std / mean if mean != 0 else None
    return m, mean, std, ci95, cv


def summarize(records, keys=("family", "n", "p", "r", "algorithm"), metric="runtime_ns") -> list[StatSummary]:
    groups = {}
    for rec in records:
        row = asdict(rec) if not isinstance(rec, dict) else rec
        groups.setdefault(tuple(row[k] for k in keys), []).append(float(row[metric]))
    return [StatSummary(key, *summarize_values(vals)) for key, vals in groups.items()]


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x) if not x.is_integer() else str(int(x))
    return str(x)


def write_records(records, fh, header=True):
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow([_fmt(getattr(rec, name)) for name in CSV_HEADER])


def read_records(fh) -> list[BenchRecord]:
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    types = {f.name: f.type for f in fields(BenchRecord)}
    out = []
    for row in reader:
        conv = {}
        for k, v in row.items():
            t = types[k]
            conv[k] = int(v) if t == "int" else float(v) if t == "float" else v
        out.append(BenchRecord(**conv))
    return out


def write_summary(summaries, keys, fh, metric="runtime_ns"):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow([*keys, "metric", "count", "mean", "std", "ci95", "cv"])
    for s in summaries:
        w.writerow([*map(_fmt, s.key), metric, s.count, _fmt(s.mean), _fmt(s.std), _fmt(s.ci95), _fmt(s.cv)])
