"""Undirected graphs, interdiction instances and coverage evaluation."""
from __future__ import annotations

import enum
import math
import operator
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NotAFacility, NotATree, NotConnected, UnknownEdge


class Graph:
    """Simple undirected graph on nodes ``0..node_count-1``.

    Edges are stored normalized as ``(u, v)`` with ``u < v`` in insertion
    order; ``adjacency[x]`` lists ``(neighbor, edge_index)`` pairs.
    """

    __slots__ = ("node_count", "edges", "adjacency", "_index")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 0:
            raise ValueError("node_count must be nonnegative")
        norm = []
        index = {}
        adjacency = [[] for _ in range(node_count)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) has an endpoint out of range")
            if u > v:
                u, v = v, u
            if (u, v) in index:
                raise ValueError(f"duplicate edge ({u}, {v})")
            e = len(norm)
            index[(u, v)] = e
            norm.append((u, v))
            adjacency[u].append((v, e))
            adjacency[v].append((u, e))
        self.node_count = node_count
        self.edges = tuple(norm)
        self.adjacency = tuple(tuple(a) for a in adjacency)
        self._index = index

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise UnknownEdge(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def neighbors(self, v: int) -> list[int]:
        return [u for u, _ in self.adjacency[v]]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def components(self, removed_edges=frozenset(), removed_nodes=frozenset()) -> list[int]:
        """Component label per node (``-1`` for removed nodes)."""
        label = [-1] * self.node_count
        current = 0
        for s in range(self.node_count):
            if label[s] != -1 or s in removed_nodes:
                continue
            label[s] = current
            stack = [s]
            while stack:
                x = stack.pop()
                for y, e in self.adjacency[x]:
                    if label[y] == -1 and e not in removed_edges and y not in removed_nodes:
                        label[y] = current
                        stack.append(y)
            current += 1
        return label

    def is_connected(self) -> bool:
        if self.node_count == 0:
            return False
        return max(self.components()) == 0

    def is_forest(self) -> bool:
        return self.edge_count == self.node_count - max(self.components(), default=-1) - 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.edge_count == self.node_count - 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.node_count == other.node_count and self.edges == other.edges

    def __hash__(self):
        return hash((self.node_count, self.edges))

    def __repr__(self):
        return f"Graph(n={self.node_count}, m={self.edge_count})"


class Kind(enum.Enum):
    EDGE = "edge"
    FACILITY = "facility"


@dataclass(frozen=True, eq=True)
class Instance:
    """An interdiction instance.

    ``weight[v]`` is the customer weight, or ``None`` when ``v`` is a
    facility. The constructor does not check weights or budget; call
    :func:`validate_instance` for that.
    """

    graph: Graph
    facility: tuple[bool, ...]
    weight: tuple[float | None, ...]
    budget: int
    kind: Kind = Kind.EDGE

    def __post_init__(self):
        n = self.graph.node_count
        if len(self.facility) != n or len(self.weight) != n:
            raise ValueError("role and weight vectors must have one entry per node")
        for v in range(n):
            if self.facility[v] and self.weight[v] is not None:
                raise ValueError(f"facility {v} carries a weight")
            if not self.facility[v] and self.weight[v] is None:
                raise ValueError(f"customer {v} has no weight")

    @classmethod
    def build(cls, node_count, edges, facilities, weights=None, budget=0, kind=Kind.EDGE):
        """Convenience constructor.

        ``weights`` may be a mapping or sequence indexed by node id; missing
        customer weights default to 1.
        """
        fac = set(facilities)
        facility = tuple(v in fac for v in range(node_count))
        wt = []
        for v in range(node_count):
            if facility[v]:
                wt.append(None)
            elif weights is None:
                wt.append(1.0)
            elif isinstance(weights, dict):
                wt.append(float(weights.get(v, 1.0)))
            else:
                wt.append(float(weights[v]))
        return cls(Graph(node_count, edges), facility, tuple(wt), int(budget), Kind(kind))

    @property
    def n(self) -> int:
        return self.graph.node_count

    @property
    def facilities(self) -> list[int]:
        return [v for v, f in enumerate(self.facility) if f]

    @property
    def customers(self) -> list[int]:
        return [v for v, f in enumerate(self.facility) if not f]

    def w(self, v: int) -> float:
        """Customer weight, 0 for facilities."""
        x = self.weight[v]
        return 0.0 if x is None else x

    @property
    def total_weight(self) -> float:
        return math.fsum(x for x in self.weight if x is not None)

    def with_budget(self, budget: int) -> "Instance":
        return Instance(self.graph, self.facility, self.weight, int(budget), self.kind)

    def with_kind(self, kind) -> "Instance":
        return Instance(self.graph, self.facility, self.weight, self.budget, Kind(kind))


@dataclass(frozen=True)
class CoverageReport:
    covered: frozenset
    disconnected: frozenset
    disconnected_weight: float


@dataclass(frozen=True)
class Solution:
    kind: Kind
    removed: frozenset
    objective: float
    disconnected: frozenset = field(default=frozenset())

    @property
    def removed_edges(self) -> frozenset:
        if self.kind is not Kind.EDGE:
            raise AttributeError("facility-removal solution has no removed_edges")
        return self.removed

    @property
    def removed_facilities(self) -> frozenset:
        if self.kind is not Kind.FACILITY:
            raise AttributeError("edge-removal solution has no removed_facilities")
        return self.removed


def evaluate_strategy(instance: Instance, removed) -> CoverageReport:
    """Covering objective of removing ``removed`` from the instance graph.

    For edge instances ``removed`` holds edge indices; for facility instances
    it holds facility node ids, which are deleted with their incident edges.
    """
    g = instance.graph
    if instance.kind is Kind.EDGE:
        removed = _as_ids(removed, UnknownEdge)
        for e in removed:
            if not 0 <= e < g.edge_count:
                raise UnknownEdge(f"edge index {e} out of range")
        cut_edges, dead = removed, frozenset()
    else:
        removed = _as_ids(removed, NotAFacility)
        for v in removed:
            if not (0 <= v < g.node_count and instance.facility[v]):
                raise NotAFacility(f"node {v} is not a facility")
        cut_edges, dead = frozenset(), removed

    reached = [False] * g.node_count
    queue = deque()
    for v in range(g.node_count):
        if instance.facility[v] and v not in dead:
            reached[v] = True
            queue.append(v)
    adjacency = g.adjacency
    while queue:
        x = queue.popleft()
        for y, e in adjacency[x]:
            if not reached[y] and e not in cut_edges and y not in dead:
                reached[y] = True
                queue.append(y)

    covered, lost = [], []
    for v in range(g.node_count):
        if not instance.facility[v]:
            (covered if reached[v] else lost).append(v)
    weight = math.fsum(instance.weight[v] for v in lost)
    return CoverageReport(frozenset(covered), frozenset(lost), weight)


def _as_ids(items, error):
    try:
        return frozenset(operator.index(x) for x in items)
    except TypeError:
        raise error(f"removal set must hold integer ids, got {items!r}") from None


def make_solution(instance: Instance, removed) -> Solution:
    """Score ``removed`` and package it as a :class:`Solution`."""
    removed = frozenset(int(x) for x in removed)
    report = evaluate_strategy(instance, removed)
    return Solution(instance.kind, removed, report.disconnected_weight, report.disconnected)


def count_customer_joints(instance: Instance) -> int:
    """Number of customers whose deletion splits their component into at
    least three pieces that each still contain a facility.

    Uses one iterative DFS with low-links: the pieces left by deleting ``v``
    are the DFS child subtrees ``c`` with ``low[c] >= disc[v]`` plus the rest
    of ``v``'s component.
    """
    g = instance.graph
    n = g.node_count
    disc = [-1] * n
    low = [0] * n
    fac_below = [0] * n  # facilities in the DFS subtree
    comp_fac = [0] * n  # facilities in the component, per node
    split_fac = [[] for _ in range(n)]  # facility counts of separated child subtrees
    time = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        members = []
        disc[root] = low[root] = time
        time += 1
        stack = [(root, -1, iter(g.adjacency[root]))]
        members.append(root)
        while stack:
            x, parent_edge, it = stack[-1]
            advanced = False
            for y, e in it:
                if e == parent_edge:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = time
                    time += 1
                    members.append(y)
                    stack.append((y, e, iter(g.adjacency[y])))
                    advanced = True
                    break
                low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            fac_below[x] += int(instance.facility[x])
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                fac_below[p] += fac_below[x]
                if low[x] >= disc[p]:
                    split_fac[p].append(fac_below[x])
        total = fac_below[root]
        for v in members:
            comp_fac[v] = total

    joints = 0
    for v in range(n):
        if instance.facility[v] or disc[v] == -1:
            continue
        pieces = split_fac[v]
        # for a DFS root every child subtree is separated, so rest is 0
        rest = comp_fac[v] - sum(pieces)
        with_fac = sum(1 for c in pieces if c > 0) + (1 if rest > 0 else 0)
        if with_fac >= 3:
            joints += 1
    return joints


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str = ""

    def __str__(self):
        return f"{self.code}: {self.detail}" if self.detail else self.code


def validate_instance(instance: Instance, for_tree: bool = False) -> list[Violation]:
    """Check the instance invariants; with ``for_tree`` also require a
    connected acyclic graph. Returns an empty list when everything holds."""
    out = []
    for v, x in enumerate(instance.weight):
        if x is None:
            continue
        if not math.isfinite(x):
            out.append(Violation("NonFiniteWeight", f"node {v}"))
        elif x < 0:
            out.append(Violation("NegativeWeight", f"node {v} has weight {x!r}"))
    if not isinstance(instance.budget, int) or instance.budget < 0:
        out.append(Violation("NegativeBudget", f"budget {instance.budget!r}"))
    if for_tree:
        g = instance.graph
        if not g.is_connected():
            out.append(Violation("NotConnected", "tree solvers need a connected graph"))
        elif g.edge_count != g.node_count - 1:
            out.append(Violation("NotATree", f"{g.edge_count} edges on {g.node_count} nodes"))
    return out


def require_tree(graph: Graph) -> None:
    if not graph.is_connected():
        raise NotConnected("graph is not connected")
    if graph.edge_count != graph.node_count - 1:
        raise NotATree(f"graph has a cycle ({graph.edge_count} edges, {graph.node_count} nodes)")


def rooted_order(graph: Graph, root: int = 0):
    """BFS order from ``root`` with parent node and parent edge per node."""
    n = graph.node_count
    parent = [-1] * n
    parent_edge = [-1] * n
    seen = [False] * n
    order = [root]
    seen[root] = True
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for y, e in graph.adjacency[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                parent_edge[y] = e
                order.append(y)
    return order, parent, parent_edge


def relabel(instance: Instance, perm: Sequence[int]) -> Instance:
    """Copy of ``instance`` with node ``v`` renamed ``perm[v]``."""
    n = instance.n
    facility = [False] * n
    weight = [None] * n
    for v in range(n):
        facility[perm[v]] = instance.facility[v]
        weight[perm[v]] = instance.weight[v]
    edges = [(perm[u], perm[v]) for u, v in instance.graph.edges]
    return Instance(Graph(n, edges), tuple(facility), tuple(weight), instance.budget, instance.kind)
