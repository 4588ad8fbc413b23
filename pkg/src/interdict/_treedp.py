"""Machinery shared by the tree dynamic programs.

Each node keeps three value rows over budgets ``0..R``: condition 00,
condition 10, and the shared row for 01/11 (those two always coincide).
Per node and context we keep the knapsack fold over the children, and per
child the option code that produced each item value, which together form
the predecessor/indicator information used for reconstruction.
"""
from __future__ import annotations

import math

import numpy as np

from .graph import Instance, evaluate_strategy, rooted_order
from .knapsack import NEG_INF, reconstruct

C00, C10, CX1 = 0, 1, 2
ROW = {"00": C00, "10": C10, "01": CX1, "11": CX1}

# option code -> (child condition label, child row, budget consumed on the link, edge removed)
OPTIONS = (
    ("00", C00, 0, False),  # KEEP_00
    ("10", C10, 0, False),  # KEEP_10
    ("11", CX1, 0, False),  # KEEP_11
    ("00", C00, 1, True),  # CUT_00
    ("01", CX1, 1, True),  # CUT_01
    ("01", CX1, 0, False),  # PASS_01: parent facility removed, child sees no facility above
)
KEEP_00, KEEP_10, KEEP_11, CUT_00, CUT_01, PASS_01 = range(6)


def best_of(candidates):
    """Elementwise max over ``(code, values)`` pairs; ties go to the earlier pair."""
    codes = np.array([c for c, _ in candidates], dtype=np.int8)
    stack = np.vstack([v for _, v in candidates])
    pick = np.argmax(stack, axis=0)
    return stack[pick, np.arange(stack.shape[1])], codes[pick]


class TreeDpTable:
    """DP values and predecessor data for one solved tree instance."""

    def __init__(self, instance: Instance, budget: int, root: int = 0):
        self.instance = instance
        self.budget = budget  # effective budget; larger budgets saturate
        self.root = root
        order, parent, parent_edge = rooted_order(instance.graph, root)
        self.order = order
        self.parent = parent
        self.parent_edge = parent_edge
        self.children = [[] for _ in range(instance.n)]
        for v in order[1:]:
            self.children[parent[v]].append(v)
        self.values = np.full((instance.n, 3, budget + 1), NEG_INF)
        self.folds = [dict() for _ in range(instance.n)]
        # per node, per context: list over children of (plain codes, prop codes or None)
        self.choices = [dict() for _ in range(instance.n)]
        # contexts whose fold result is read at budget b - 1 (node itself removed)
        self.shifted = [frozenset() for _ in range(instance.n)]

    def value(self, v: int, xy: str, b: int) -> float:
        """V_XY(v, b); budgets above the effective budget saturate."""
        return float(self.values[v, ROW[xy], min(b, self.budget)])

    @property
    def entry_count(self) -> int:
        """Stored numbers: three value rows per node plus one option code
        per (child, context, budget) and the fold predecessors."""
        count = self.values.size
        for per_ctx in self.choices:
            for links in per_ctx.values():
                for plain, prop in links:
                    count += plain.size + (0 if prop is None else prop.size)
        for per_ctx in self.folds:
            for t in per_ctx.values():
                for arrays in (t.item0, t.item1, t.from1):
                    count += sum(a.size for a in arrays if a is not None)
        return count

    def root_choice(self):
        """Best condition at the root, scanning 00, 01, 10, 11."""
        b = self.budget
        best, label = NEG_INF, "00"
        for xy in ("00", "01", "10", "11"):
            x = self.value(self.root, xy, b)
            if x > best:
                best, label = x, xy
        return label, best

    def predecessors(self, v: int, xy: str, b: int):
        """Child states behind V_XY(v, b).

        Returns ``(removed_self, [(child, child_xy, child_budget, edge_removed), ...])``;
        empty when the state is infeasible.
        """
        b = min(b, self.budget)
        row = ROW[xy]
        if self.values[v, row, b] == NEG_INF:
            return False, []
        removed_self = row in self.shifted[v]
        fold = self.folds[v].get(row)
        if fold is None:  # no children
            return removed_self, []
        cap = b - 1 if removed_self else b
        L = self.budget + 1
        items = reconstruct(fold, cap)
        out = []
        for child, j, (plain, prop) in zip(self.children[v], items, self.choices[v][row]):
            if j < L:
                code = int(plain[j])
                spent = j
            else:
                code = KEEP_11
                spent = j - L
            label, _, delta, cut = OPTIONS[code]
            out.append((child, label, spent - delta, cut))
        return removed_self, out

    def strategy(self):
        """Removed edges and removed nodes for the optimal root state."""
        label, best = self.root_choice()
        cut_edges, removed_nodes = set(), set()
        if best == NEG_INF:
            return cut_edges, removed_nodes
        stack = [(self.root, label, self.budget)]
        while stack:
            v, xy, b = stack.pop()
            removed_self, links = self.predecessors(v, xy, b)
            if removed_self:
                removed_nodes.add(v)
            for child, child_xy, child_b, cut in links:
                if cut:
                    cut_edges.add(self.parent_edge[child])
                stack.append((child, child_xy, child_b))
        return cut_edges, removed_nodes


def subtree_weights(table: TreeDpTable) -> np.ndarray:
    inst = table.instance
    total = np.zeros(inst.n)
    for v in reversed(table.order):
        total[v] += inst.w(v)
        if table.parent[v] >= 0:
            total[table.parent[v]] += total[v]
    return total


def check_objective(instance, removed, dp_value):
    """Re-score ``removed`` and confirm it reproduces the DP optimum."""
    report = evaluate_strategy(instance, removed)
    if not math.isclose(report.disconnected_weight, dp_value, rel_tol=1e-9, abs_tol=1e-9):
        raise AssertionError(
            f"reconstructed strategy scores {report.disconnected_weight}, DP says {dp_value}"
        )
    return report
