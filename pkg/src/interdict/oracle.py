"""Exhaustive solvers for small instances.

Subsets are scanned in colexicographic order (increasing characteristic
bitmask), and the first maximizer is kept, so the returned strategy is the
colex-smallest optimal one. Size guards are hard errors.
"""
from __future__ import annotations

from itertools import combinations
from math import comb

from .errors import TooLarge, WrongKind
from .graph import Instance, Kind, Solution, evaluate_strategy

MAX_SUBSETS = 10**6


def subset_count(ground: int, r: int) -> int:
    return sum(comb(ground, i) for i in range(min(r, ground) + 1))


def colex_subsets(ground: int, r: int) -> list[tuple]:
    """Subsets of ``range(ground)`` with at most ``r`` elements, colex order."""
    r = min(r, ground)
    subsets = [c for k in range(r + 1) for c in combinations(range(ground), k)]
    subsets.sort(key=lambda c: sum(1 << i for i in c))
    return subsets


def _search(instance, elements, r):
    best_value, best_set, best_report = None, (), None
    for idx in colex_subsets(len(elements), r):
        chosen = [elements[i] for i in idx]
        report = evaluate_strategy(instance, chosen)
        if best_value is None or report.disconnected_weight > best_value:
            best_value, best_set, best_report = report.disconnected_weight, chosen, report
    return Solution(instance.kind, frozenset(best_set), best_value, best_report.disconnected)


def brute_force_reic(instance: Instance) -> Solution:
    """Best set of at most ``budget`` edges to remove, by enumeration."""
    if instance.kind is not Kind.EDGE:
        raise WrongKind("edge oracle needs an edge instance")
    m = instance.graph.edge_count
    count = subset_count(m, instance.budget)
    if m > 24 or count > MAX_SUBSETS:
        raise TooLarge(f"{m} edges, {count} subsets exceeds the oracle guard")
    return _search(instance, list(range(m)), instance.budget)


def brute_force_rfic(instance: Instance) -> Solution:
    """Best set of at most ``budget`` facilities to remove, by enumeration."""
    if instance.kind is not Kind.FACILITY:
        raise WrongKind("facility oracle needs a facility instance")
    facilities = instance.facilities
    count = subset_count(len(facilities), instance.budget)
    if len(facilities) > 20 or count > MAX_SUBSETS:
        raise TooLarge(f"{len(facilities)} facilities, {count} subsets exceeds the oracle guard")
    return _search(instance, facilities, instance.budget)


def brute_force(instance: Instance) -> Solution:
    if instance.kind is Kind.EDGE:
        return brute_force_reic(instance)
    return brute_force_rfic(instance)
