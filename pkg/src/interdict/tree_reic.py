"""Edge interdiction on trees in O(n r^2) time.

Each node is solved under four conditions: whether a facility is reachable
through its parent (X) and whether one is reachable inside its own subtree
(Y). A node combines its children by a multiple-choice knapsack over budget
splits; a customer that must reach a facility inside its subtree needs the
constrained variant (at least one child link supplies the facility).
"""
from __future__ import annotations

import numpy as np

from ._treedp import (
    C00, C10, CX1, CUT_00, CUT_01, KEEP_00, KEEP_10, KEEP_11,
    TreeDpTable, best_of, check_objective,
)
from .errors import WrongKind
from .graph import Instance, Kind, Solution, require_tree
from .knapsack import NEG_INF, MckpFolder, shift


def child_options(child_values: np.ndarray) -> dict:
    """Per-budget item values one child contributes under each parent context.

    ``child_values`` has rows (V00, V10, V_X1) over budgets. Keys:

    ``"00"``       customer parent, X=0, Y=0: keep as 00, or cut and take 01 at b-1
    ``"10"``       customer parent, X=1, Y=0: keep as 10, or cut (00 or 01 at b-1)
    ``"facility"`` facility parent: keep as 10 or 11, or cut and take 00 at b-1
    ``"linked"``   customer parent with Y=1 supplied through this child: keep as 11

    Each value is ``(values, option_codes)``; ties prefer keeping the edge.
    """
    v00, v10, vx1 = child_values
    cut00 = shift(v00)
    cut01 = shift(vx1)
    return {
        "00": best_of([(KEEP_00, v00), (CUT_01, cut01)]),
        "10": best_of([(KEEP_10, v10), (CUT_00, cut00), (CUT_01, cut01)]),
        "facility": best_of([(KEEP_10, v10), (KEEP_11, vx1), (CUT_00, cut00)]),
        "linked": (vx1, np.full(vx1.shape, KEEP_11, dtype=np.int8)),
    }


def solve_tree_reic(instance: Instance, root: int = 0):
    """Optimal edge-removal strategy on a tree.

    Returns ``(Solution, TreeDpTable)``. Raises ``NotConnected`` /
    ``NotATree`` for non-tree graphs and ``WrongKind`` for facility instances.
    """
    if instance.kind is not Kind.EDGE:
        raise WrongKind("edge-interdiction solver needs an edge instance")
    require_tree(instance.graph)
    budget = min(instance.budget, instance.graph.edge_count)
    table = TreeDpTable(instance, budget, root)
    L = budget + 1
    values = table.values
    for v in reversed(table.order):
        kids = table.children[v]
        if instance.facility[v]:
            fold = MckpFolder(budget)
            links = []
            for u in kids:
                vals, codes = child_options(values[u])["facility"]
                fold.add_dense(vals)
                links.append((codes, None))
            values[v, CX1] = fold.values
            table.folds[v][CX1] = fold.table()
            table.choices[v][CX1] = links
            continue
        f00 = MckpFolder(budget)
        f10 = MckpFolder(budget)
        f1 = MckpFolder(budget, constrained=True)
        links00, links10, links1 = [], [], []
        for u in kids:
            opts = child_options(values[u])
            vals00, codes00 = opts["00"]
            vals10, codes10 = opts["10"]
            linked, linked_codes = opts["linked"]
            f00.add_dense(vals00)
            f10.add_dense(vals10)
            f1.add_dense(vals10, linked)
            links00.append((codes00, None))
            links10.append((codes10, None))
            links1.append((codes10, linked_codes))
        values[v, C00] = f00.values + instance.w(v)
        values[v, C10] = f10.values
        values[v, CX1] = f1.values
        table.folds[v].update({C00: f00.table(), C10: f10.table(), CX1: f1.table()})
        table.choices[v].update({C00: links00, C10: links10, CX1: links1})
        assert values[v].shape == (3, L)

    _, best = table.root_choice()
    cut, _ = table.strategy()
    report = check_objective(instance, cut, best)
    solution = Solution(Kind.EDGE, frozenset(cut), report.disconnected_weight, report.disconnected)
    return solution, table
