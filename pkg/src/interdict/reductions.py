"""Constructions relating facility interdiction to other problems.

* subset selection with minimum bipartite vertex expansion on trees, solved
  through the tree facility-interdiction DP;
* the normal form in which every customer component is collapsed into one
  customer, making the instance bipartite;
* the gadget that encodes k-clique as facility interdiction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadK, NotATree, NotConnected, WrongKind
from .graph import Graph, Instance, Kind, require_tree
from .tree_rfic import solve_tree_rfic


@dataclass(frozen=True)
class BipartiteInstance:
    """Left vertices ``0..n_left-1``, right vertices ``0..n_right-1``.

    ``edges`` holds ``(left, right)`` index pairs.
    """

    n_left: int
    n_right: int
    edges: tuple
    k: int

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n_left and 0 <= v < self.n_right):
                raise ValueError(f"edge ({u}, {v}) leaves the bipartition")
        if not 0 <= self.k <= self.n_left:
            raise BadK(f"k={self.k} outside [0, {self.n_left}]")

    def graph(self) -> Graph:
        """Left side first, then right side offset by ``n_left``."""
        return Graph(self.n_left + self.n_right, [(u, self.n_left + v) for u, v in self.edges])

    def neighborhood(self, chosen) -> set:
        chosen = set(chosen)
        return {v for u, v in self.edges if u in chosen}


def solve_ssbve_tree(bip: BipartiteInstance):
    """Pick ``k`` left vertices with the fewest right neighbors.

    Returns ``(chosen left ids as a sorted tuple, neighborhood size)``.
    """
    if not 0 <= bip.k <= bip.n_left:
        raise BadK(f"k={bip.k} outside [0, {bip.n_left}]")
    g = bip.graph()
    try:
        require_tree(g)
    except NotConnected as exc:
        raise NotATree(str(exc)) from None
    n = g.node_count
    removals = bip.n_left - bip.k
    inst = Instance.build(
        n, g.edges, range(bip.n_left), budget=removals, kind=Kind.FACILITY,
    )
    solution, _ = solve_tree_rfic(inst)
    removed = set(solution.removed_facilities)
    # removing further facilities never lowers the objective; drop largest ids first
    for u in range(bip.n_left - 1, -1, -1):
        if len(removed) >= removals:
            break
        removed.add(u)
    chosen = tuple(u for u in range(bip.n_left) if u not in removed)
    return chosen, len(bip.neighborhood(chosen))


def to_bip_rfic(instance: Instance):
    """Collapse each customer component into one aggregated customer.

    Returns ``(new_instance, origin)`` where ``origin[i]`` is the original
    facility id behind new node ``i`` for facility nodes, and the sorted
    tuple of original customer ids for aggregated customers. Facilities come
    first in original id order; aggregated customers follow, ordered by
    their smallest member.
    """
    if instance.kind is not Kind.FACILITY:
        raise WrongKind("bipartite normal form applies to facility instances")
    g = instance.graph
    facilities = instance.facilities
    labels = g.components(removed_nodes=set(facilities))
    members = {}
    for v in range(instance.n):
        if not instance.facility[v]:
            members.setdefault(labels[v], []).append(v)
    groups = sorted(members.values(), key=lambda vs: vs[0])
    new_id = {f: i for i, f in enumerate(facilities)}
    edges, weights, origin = [], {}, list(facilities)
    for gi, vs in enumerate(groups):
        c = len(facilities) + gi
        weights[c] = math.fsum(instance.w(v) for v in vs)
        near = sorted({new_id[u] for v in vs for u in g.neighbors(v) if instance.facility[u]})
        edges.extend((f, c) for f in near)
        origin.append(tuple(vs))
    out = Instance.build(
        len(facilities) + len(groups), edges, range(len(facilities)), weights,
        instance.budget, Kind.FACILITY,
    )
    return out, tuple(origin)


def clique_gadget(graph: Graph, k: int) -> Instance:
    """Facilities are the vertices of ``graph``; each edge becomes a unit
    customer adjacent to its endpoints. Removing ``k`` facilities cuts off
    ``C(k, 2)`` customers exactly when they form a clique."""
    n = graph.node_count
    edges = []
    for i, (u, v) in enumerate(graph.edges):
        edges.append((u, n + i))
        edges.append((v, n + i))
    return Instance.build(n + graph.edge_count, edges, range(n), budget=k, kind=Kind.FACILITY)
