"""Multiple-choice knapsack and its constrained variant.

Values are floats where ``-inf`` marks an infeasible state. IEEE ``-inf``
absorbs finite addends and nothing here ever adds ``+inf``, so sums
saturate instead of producing NaN.

All tables use "total cost at most c" semantics, which makes every value
array nondecreasing in capacity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import EmptyBucket, Infeasible

NEG_INF = float("-inf")


def is_finite(x) -> bool:
    return x != NEG_INF


def shift(values, by: int = 1):
    """``out[b] = values[b - by]``, ``-inf`` where ``b < by``."""
    values = np.asarray(values, dtype=np.float64)
    out = np.full(values.shape, NEG_INF)
    if by < values.shape[-1]:
        out[..., by:] = values[..., : values.shape[-1] - by]
    return out


@dataclass
class KnapsackTable:
    """Result of a (constrained) multiple-choice knapsack fold.

    ``values[c]`` is the optimum at capacity ``c``. ``costs[i][j]`` is the cost
    of item ``j`` of bucket ``i``; the predecessor arrays hold, per bucket and
    capacity, the chosen item for the unconstrained state (``item0``), for the
    constrained state (``item1``), and whether the constrained state came
    from an already-satisfied prefix (``from1``).
    """

    values: np.ndarray
    constrained: bool
    costs: list = field(default_factory=list)
    properties: list = field(default_factory=list)
    item0: list = field(default_factory=list)
    item1: list = field(default_factory=list)
    from1: list = field(default_factory=list)

    @property
    def capacity(self) -> int:
        return len(self.values) - 1


class MckpFolder:
    """Fold buckets one at a time into a running value array.

    With ``constrained=True`` two arrays are kept: ``v0`` (no property item
    chosen yet) and ``v1`` (at least one chosen). Not shareable mid-fold.
    """

    def __init__(self, capacity: int, constrained: bool = False):
        if capacity < 0:
            raise ValueError("capacity must be nonnegative")
        self.capacity = capacity
        self.constrained = constrained
        self.v0 = np.zeros(capacity + 1)
        self.v1 = np.full(capacity + 1, NEG_INF)
        self._table = KnapsackTable(self.v1 if constrained else self.v0, constrained)

    def add_bucket(self, items: Sequence[tuple]) -> None:
        """Add a bucket of ``(cost, value)`` or ``(cost, value, property)`` items."""
        if len(items) == 0:
            raise EmptyBucket("every bucket needs at least one item")
        L = self.capacity + 1
        costs = np.array([int(it[0]) for it in items], dtype=np.int64)
        if (costs < 0).any():
            raise ValueError("item costs must be nonnegative")
        values = [float(it[1]) for it in items]
        props = np.array([bool(it[2]) if len(it) > 2 else False for it in items])
        new0 = np.full(L, NEG_INF)
        item0 = np.zeros(L, dtype=np.int64)
        new1 = np.full(L, NEG_INF)
        item1 = np.zeros(L, dtype=np.int64)
        from1 = np.ones(L, dtype=bool)
        for j, (cost, value) in enumerate(zip(costs, values)):
            if cost >= L:
                continue
            span = L - cost
            if not self.constrained or not props[j]:
                _improve(new0, item0, None, self.v0[:span] + value, cost, j, None)
            if self.constrained:
                _improve(new1, item1, from1, self.v1[:span] + value, cost, j, True)
                if props[j]:
                    _improve(new1, item1, from1, self.v0[:span] + value, cost, j, False)
        self._record(costs, props, new0, new1, item0, item1, from1)

    def add_dense(self, plain, prop=None):
        """Bucket whose item ``j`` costs ``j``: ``plain[j]`` without the
        property and, when constrained, ``prop[j]`` with it.

        Item ids are ``j`` for plain items and ``L + j`` for property items.
        """
        L = self.capacity + 1
        plain = np.asarray(plain, dtype=np.float64)
        if plain.shape != (L,):
            raise ValueError(f"dense bucket must have {L} entries")
        costs = np.concatenate([np.arange(L), np.arange(L)])
        if not self.constrained:
            new0, item0 = kernels.maxplus_fold(self.v0, plain)
            props = np.zeros(2 * L, dtype=bool)
            self._record(costs, props, new0, self.v1, item0, None, None)
            return
        prop = np.asarray(prop, dtype=np.float64)
        new0, new1, item0, j1, src = kernels.cmckp_fold(self.v0, self.v1, plain, prop)
        item1 = np.where(src == 0, j1, j1 + L)
        from1 = src != 2
        props = np.concatenate([np.zeros(L, dtype=bool), np.ones(L, dtype=bool)])
        self._record(costs, props, new0, new1, item0, item1, from1)

    def _record(self, costs, props, new0, new1, item0, item1, from1):
        t = self._table
        t.costs.append(costs)
        t.properties.append(props)
        t.item0.append(item0)
        t.item1.append(item1)
        t.from1.append(from1)
        self.v0 = new0
        self.v1 = new1
        t.values = new1 if self.constrained else new0

    @property
    def values(self) -> np.ndarray:
        return self._table.values

    def table(self) -> KnapsackTable:
        return self._table


def _improve(best, arg, src, cand, offset, j, flag):
    view = best[offset:]
    better = cand > view
    view[better] = cand[better]
    arg[offset:][better] = j
    if src is not None:
        src[offset:][better] = flag


def solve_mckp(buckets: Sequence[Sequence[tuple]], capacity: int) -> KnapsackTable:
    """Exactly one item per bucket, total cost at most ``c`` for every ``c``."""
    folder = MckpFolder(capacity)
    for bucket in buckets:
        folder.add_bucket([(it[0], it[1]) for it in bucket])
    return folder.table()


def solve_cmckp(buckets: Sequence[Sequence[tuple]], capacity: int) -> KnapsackTable:
    """Like :func:`solve_mckp` but at least one chosen item must carry the
    property flag (third tuple field)."""
    folder = MckpFolder(capacity, constrained=True)
    for bucket in buckets:
        folder.add_bucket(bucket)
    return folder.table()


def reconstruct(table: KnapsackTable, capacity: int) -> list[int]:
    """Chosen item index per bucket for the optimum at ``capacity``."""
    if not 0 <= capacity <= table.capacity:
        raise ValueError(f"capacity {capacity} outside 0..{table.capacity}")
    if table.values[capacity] == NEG_INF:
        raise Infeasible(f"no feasible selection at capacity {capacity}")
    chosen = [0] * len(table.costs)
    c = capacity
    z = table.constrained
    for i in range(len(table.costs) - 1, -1, -1):
        if z:
            j = int(table.item1[i][c])
            z = bool(table.from1[i][c])
        else:
            j = int(table.item0[i][c])
        chosen[i] = j
        c -= int(table.costs[i][j])
    return chosen
