"""Tree decompositions and extended nice tree decompositions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidDecomposition, NotAForest
from .graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple  # of frozenset
    links: tuple  # of (a, b) bag-index pairs
    root: int | None = None

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class Violation:
    code: str
    witness: object = None

    def __str__(self):
        return f"{self.code}({self.witness})" if self.witness is not None else self.code


def _is_tree(count, links):
    if count == 0:
        return not links
    if len(links) != count - 1:
        return False
    parent = list(range(count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in links:
        if not (0 <= a < count and 0 <= b < count):
            return False
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def validate_decomposition(graph: Graph, dec: TreeDecomposition) -> list[Violation]:
    """Check the three defining conditions (plus that the bag links form a tree)."""
    out = []
    t = len(dec.bags)
    if not _is_tree(t, dec.links):
        out.append(Violation("LinksNotATree"))
        return out
    if dec.root is not None and not 0 <= dec.root < t:
        out.append(Violation("BadRoot", dec.root))
    occurs = [[] for _ in range(graph.node_count)]
    for i, bag in enumerate(dec.bags):
        for v in bag:
            if not 0 <= v < graph.node_count:
                out.append(Violation("UnknownVertex", v))
                continue
            occurs[v].append(i)
    for v in range(graph.node_count):
        if not occurs[v]:
            out.append(Violation("VertexNotCovered", v))
    for u, v in graph.edges:
        if not any(v in dec.bags[i] for i in occurs[u]):
            out.append(Violation("EdgeNotCovered", (u, v)))
    adjacency = [[] for _ in range(t)]
    for a, b in dec.links:
        adjacency[a].append(b)
        adjacency[b].append(a)
    for v in range(graph.node_count):
        nodes = occurs[v]
        if len(nodes) < 2:
            continue
        inside = set(nodes)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if y in inside and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(inside):
            out.append(Violation("OccurrenceDisconnected", v))
    return out


def tree_decomposition_of_tree(graph: Graph) -> TreeDecomposition:
    """Width-1 decomposition of a forest: one bag per edge, linked along the tree."""
    if not graph.is_forest():
        raise NotAForest("graph has a cycle")
    n = graph.node_count
    bags = []
    links = []
    # bag holding v together with its parent edge, per node
    home = [-1] * n
    visited = [False] * n
    previous_root_bag = -1
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        if not graph.adjacency[root]:
            bags.append(frozenset({root}))
            home[root] = len(bags) - 1
        stack = [root]
        while stack:
            x = stack.pop()
            for y, _ in graph.adjacency[x]:
                if visited[y]:
                    continue
                visited[y] = True
                bags.append(frozenset({x, y}))
                b = len(bags) - 1
                if home[x] != -1:
                    links.append((home[x], b))
                else:
                    home[x] = b  # x is a component root; its first edge bag anchors it
                home[y] = b
                stack.append(y)
        anchor = home[root]
        if anchor != -1:
            if previous_root_bag != -1:
                links.append((previous_root_bag, anchor))
            previous_root_bag = anchor
    # siblings under a component root attach to the root's anchor bag
    return TreeDecomposition(tuple(bags), tuple(links), 0 if bags else None)


def grid_decomposition(k: int, n: int) -> TreeDecomposition:
    """Path decomposition of width ``min(k, n)`` for the ``k x n`` grid.

    Vertex ``(plane a, position i)`` has id ``a * n + i``. Vertices are
    ordered along the long side; each bag is a window of ``min(k, n) + 1``
    consecutive vertices in that order.
    """
    if k < 1 or n < 1:
        raise ValueError("grid dimensions must be positive")
    short = min(k, n)
    if k <= n:
        order = [a * n + i for i in range(n) for a in range(k)]
    else:
        order = [a * n + i for a in range(k) for i in range(n)]
    total = k * n
    if total <= short + 1:
        return TreeDecomposition((frozenset(order),), (), 0)
    bags = tuple(frozenset(order[p : p + short + 1]) for p in range(total - short))
    links = tuple((p, p + 1) for p in range(len(bags) - 1))
    return TreeDecomposition(bags, links, 0)


def heuristic_decomposition(graph: Graph) -> TreeDecomposition:
    """Min-degree elimination ordering (ties by lowest id).

    The width is an upper bound on the treewidth with no optimality
    guarantee; read it from ``.width``.
    """
    n = graph.node_count
    if n == 0:
        return TreeDecomposition((), (), None)
    nbrs = [set(graph.neighbors(v)) for v in range(n)]
    alive = set(range(n))
    position = [0] * n
    order = []
    bags = []
    for step in range(n):
        v = min(alive, key=lambda x: (len(nbrs[x]), x))
        position[v] = step
        order.append(v)
        bag = frozenset(nbrs[v] | {v})
        bags.append(bag)
        for a in nbrs[v]:
            nbrs[a].discard(v)
            nbrs[a] |= nbrs[v] - {a}
        alive.discard(v)
    links = []
    for step, v in enumerate(order[:-1]):
        later = [u for u in bags[step] if u != v]
        if later:
            target = min(position[u] for u in later)
        else:
            target = step + 1
        links.append((step, target))
    return TreeDecomposition(tuple(bags), tuple(links), n - 1)


LEAF, INTRODUCE_VERTEX, INTRODUCE_EDGE, FORGET, JOIN = (
    "leaf", "introduce_vertex", "introduce_edge", "forget", "join",
)


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: tuple  # sorted vertex ids
    children: tuple = ()
    vertex: int | None = None  # introduced or forgotten vertex
    edge: tuple | None = None  # (u, v) for introduce-edge nodes


@dataclass(frozen=True)
class NiceDecomposition:
    """Nodes listed children-first; the last node is the root."""

    nodes: tuple

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(x.bag) for x in self.nodes), default=0) - 1

    def as_tree_decomposition(self) -> TreeDecomposition:
        links = tuple((c, i) for i, x in enumerate(self.nodes) for c in x.children)
        return TreeDecomposition(tuple(frozenset(x.bag) for x in self.nodes), links, self.root)


class _Builder:
    def __init__(self, graph):
        self.graph = graph
        self.nodes = []
        self.forgotten = [False] * graph.node_count

    def add(self, kind, bag, children=(), vertex=None, edge=None):
        self.nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex, edge))
        return len(self.nodes) - 1

    def forget(self, top, bag, v):
        """Introduce the pending edges at ``v``, then forget it."""
        for u, e in sorted(self.graph.adjacency[v]):
            if u in bag and not self.forgotten[u]:
                top = self.add(INTRODUCE_EDGE, bag, (top,), edge=self.graph.edges[e])
        self.forgotten[v] = True
        bag = bag - {v}
        return self.add(FORGET, bag, (top,), vertex=v), bag

    def bridge(self, top, have, want):
        """Forget ``have - want`` then introduce ``want - have``."""
        bag = have
        for v in sorted(have - want):
            top, bag = self.forget(top, bag, v)
        for v in sorted(want - have):
            bag = bag | {v}
            top = self.add(INTRODUCE_VERTEX, bag, (top,), vertex=v)
        return top


def to_extended_nice(graph: Graph, dec: TreeDecomposition) -> NiceDecomposition:
    """Normalize a validated decomposition into an extended nice one.

    Each bag keeps its width; parent/child bag differences are bridged by
    forget-then-introduce chains, multiple children are joined left-leaning,
    and edge ``(u, v)`` is introduced just below the forget node of whichever
    endpoint is forgotten first.
    """
    problems = validate_decomposition(graph, dec)
    if problems:
        raise InvalidDecomposition("; ".join(map(str, problems)))
    b = _Builder(graph)
    t = len(dec.bags)
    if t == 0:
        b.add(LEAF, ())
        return NiceDecomposition(tuple(b.nodes))
    root = dec.root if dec.root is not None else 0
    adjacency = [[] for _ in range(t)]
    for x, y in dec.links:
        adjacency[x].append(y)
        adjacency[y].append(x)
    parent = [-1] * t
    order = [root]
    seen = [False] * t
    seen[root] = True
    for x in order:
        for y in sorted(adjacency[x]):
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                order.append(y)
    kids = [[] for _ in range(t)]
    for x in order[1:]:
        kids[parent[x]].append(x)

    top_of = [None] * t  # nice node whose bag equals dec.bags[x]
    for x in reversed(order):
        bag = frozenset(dec.bags[x])
        branches = []
        for c in kids[x]:
            branches.append(b.bridge(top_of[c], frozenset(dec.bags[c]), bag))
        if not branches:
            leaf = b.add(LEAF, ())
            branches.append(b.bridge(leaf, frozenset(), bag))
        top = branches[0]
        for other in branches[1:]:
            top = b.add(JOIN, bag, (top, other))
        top_of[x] = top
    b.bridge(top_of[root], frozenset(dec.bags[root]), frozenset())
    return NiceDecomposition(tuple(b.nodes))


def validate_nice(graph: Graph, nice: NiceDecomposition) -> list[Violation]:
    """Check the node-type rules, empty root/leaf bags, each edge introduced
    exactly once, and the underlying tree-decomposition conditions."""
    out = []
    nodes = nice.nodes
    if not nodes:
        return [Violation("Empty")]
    parents = [0] * len(nodes)
    for i, x in enumerate(nodes):
        bag = set(x.bag)
        if list(x.bag) != sorted(bag):
            out.append(Violation("BagNotSorted", i))
        for c in x.children:
            if not 0 <= c < i:
                out.append(Violation("ChildOrder", i))
                continue
            parents[c] += 1
        kids = [set(nodes[c].bag) for c in x.children if 0 <= c < i]
        if x.kind == LEAF:
            if x.children or bag:
                out.append(Violation("BadLeaf", i))
        elif x.kind == INTRODUCE_VERTEX:
            if len(kids) != 1 or x.vertex in kids[0] or bag != kids[0] | {x.vertex}:
                out.append(Violation("BadIntroduceVertex", i))
        elif x.kind == INTRODUCE_EDGE:
            u, v = x.edge if x.edge else (None, None)
            if len(kids) != 1 or bag != kids[0] or u not in bag or v not in bag:
                out.append(Violation("BadIntroduceEdge", i))
        elif x.kind == FORGET:
            if len(kids) != 1 or x.vertex not in kids[0] or bag != kids[0] - {x.vertex}:
                out.append(Violation("BadForget", i))
        elif x.kind == JOIN:
            if len(kids) != 2 or kids[0] != bag or kids[1] != bag:
                out.append(Violation("BadJoin", i))
        else:
            out.append(Violation("UnknownKind", i))
    if nodes[-1].bag:
        out.append(Violation("RootBagNotEmpty"))
    if any(p != 1 for p in parents[:-1]) or parents[-1] != 0:
        out.append(Violation("NotARootedTree"))
    introduced = {}
    for x in nodes:
        if x.kind == INTRODUCE_EDGE and x.edge:
            key = tuple(sorted(x.edge))
            introduced[key] = introduced.get(key, 0) + 1
    for e in graph.edges:
        if introduced.get(e, 0) != 1:
            out.append(Violation("EdgeIntroducedCount", (e, introduced.get(e, 0))))
    for e in introduced:
        if not graph.has_edge(*e):
            out.append(Violation("UnknownEdge", e))
    out.extend(validate_decomposition(graph, nice.as_tree_decomposition()))
    return out


def edge_census(nice: NiceDecomposition) -> list[tuple]:
    """Sorted multiset of edges introduced by the decomposition."""
    return sorted(tuple(sorted(x.edge)) for x in nice.nodes if x.kind == INTRODUCE_EDGE)
