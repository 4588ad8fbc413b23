"""Facility interdiction on trees in O(n r^2) time.

Same four conditions as the edge variant, but budget is spent on deleting
facility nodes: a facility forced to Y=0 is itself removed, which costs one
unit before the remaining budget is split among its children.
"""
from __future__ import annotations

import numpy as np

from ._treedp import (
    C00, C10, CX1, KEEP_00, KEEP_10, KEEP_11, PASS_01,
    TreeDpTable, best_of, check_objective,
)
from .errors import WrongKind
from .graph import Instance, Kind, Solution, require_tree
from .knapsack import NEG_INF, MckpFolder, shift


def solve_tree_rfic(instance: Instance, root: int = 0):
    """Optimal facility-removal strategy on a tree; returns ``(Solution, TreeDpTable)``."""
    if instance.kind is not Kind.FACILITY:
        raise WrongKind("facility-interdiction solver needs a facility instance")
    require_tree(instance.graph)
    budget = min(instance.budget, len(instance.facilities))
    table = TreeDpTable(instance, budget, root)
    values = table.values
    for v in reversed(table.order):
        kids = table.children[v]
        if instance.facility[v]:
            gone = MckpFolder(budget)  # v removed: children see nothing above
            kept = MckpFolder(budget)
            links_gone, links_kept = [], []
            for u in kids:
                v00, v10, vx1 = values[u]
                vals, codes = best_of([(KEEP_00, v00), (PASS_01, vx1)])
                gone.add_dense(vals)
                links_gone.append((codes, None))
                vals, codes = best_of([(KEEP_10, v10), (KEEP_11, vx1)])
                kept.add_dense(vals)
                links_kept.append((codes, None))
            removed = shift(gone.values)
            values[v, C00] = removed
            values[v, C10] = removed
            values[v, CX1] = kept.values
            # both Y=0 rows read the same fold one budget unit lower
            table.folds[v].update({C00: gone.table(), C10: gone.table(), CX1: kept.table()})
            table.choices[v].update({C00: links_gone, C10: links_gone, CX1: links_kept})
            table.shifted[v] = frozenset({C00, C10})
            continue
        f00 = MckpFolder(budget)
        f10 = MckpFolder(budget)
        f1 = MckpFolder(budget, constrained=True)
        links00, links10, links1 = [], [], []
        for u in kids:
            v00, v10, vx1 = values[u]
            keep00 = np.full(v00.shape, KEEP_00, dtype=np.int8)
            keep10 = np.full(v00.shape, KEEP_10, dtype=np.int8)
            keep11 = np.full(v00.shape, KEEP_11, dtype=np.int8)
            f00.add_dense(v00)
            f10.add_dense(v10)
            f1.add_dense(v10, vx1)
            links00.append((keep00, None))
            links10.append((keep10, None))
            links1.append((keep10, keep11))
        values[v, C00] = f00.values + instance.w(v)
        values[v, C10] = f10.values
        values[v, CX1] = f1.values
        table.folds[v].update({C00: f00.table(), C10: f10.table(), CX1: f1.table()})
        table.choices[v].update({C00: links00, C10: links10, CX1: links1})

    _, best = table.root_choice()
    _, removed = table.strategy()
    report = check_objective(instance, removed, best)
    solution = Solution(Kind.FACILITY, frozenset(removed), report.disconnected_weight, report.disconnected)
    return solution, table
