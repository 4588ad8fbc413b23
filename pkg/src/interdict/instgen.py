"""Seeded instance generators.

Every random draw comes from a PCG64 stream derived from the master seed
with a fixed spawn key, so the tree shape, the roles, the weights and the
station placement are independent of each other and of call order:

=====  ==========================
key    stream
=====  ==========================
0      tree shape / Prüfer code
1      facility roles
2      customer weights
3      ground-station placement
=====  ==========================
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .graph import Instance, Kind

FAMILIES = ("prufer", "leaf-cluster", "walker-grid")
SHAPE, ROLES, WEIGHTS, STATIONS = range(4)


def stream(seed: int, key: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(key,))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class GenConfig:
    family: str = "prufer"
    n: int = 10
    p: float = 0.4
    weights: str = "unit"  # "unit" or "uniform:W"
    budget: int | None = 1
    budget_ratio: float | None = None  # r = floor(ratio * n) when set
    seed: int = 0
    kind: Kind = Kind.EDGE
    # walker-grid only
    planes: int = 2
    per_plane: int = 4
    ring: bool = False
    stations: int = 2

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        parse_weights(self.weights)
        if self.budget_ratio is None and (self.budget is None or self.budget < 0):
            raise ValueError("need a nonnegative budget or a budget ratio")
        if self.budget_ratio is not None and self.budget_ratio < 0:
            raise ValueError("budget ratio must be nonnegative")

    def budget_for(self, n: int) -> int:
        if self.budget_ratio is not None:
            return int(self.budget_ratio * n)
        return self.budget


def parse_weights(spec: str):
    """``"unit"`` -> ``None``; ``"uniform:W"`` -> ``W``."""
    if spec == "unit":
        return None
    head, _, tail = spec.partition(":")
    if head == "uniform" and tail.isdigit() and int(tail) >= 1:
        return int(tail)
    raise ValueError(f"bad weight distribution {spec!r}")


def prufer_decode(seq, n: int) -> list[tuple]:
    """Labeled tree on ``range(n)`` with the given Prüfer code (length n-2)."""
    if n < 2 or len(seq) != n - 2:
        raise ValueError("Prüfer code must have length n - 2 with n >= 2")
    degree = [1] * n
    for x in seq:
        if not 0 <= x < n:
            raise ValueError(f"code entry {x} out of range")
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return sorted(edges)


def _weights(cfg, customers, n):
    top = parse_weights(cfg.weights)
    if top is None:
        return None
    draws = stream(cfg.seed, WEIGHTS).integers(1, top + 1, size=n)
    return {v: int(draws[v]) for v in customers}


def _random_tree(cfg):
    code = stream(cfg.seed, SHAPE).integers(0, cfg.n, size=cfg.n - 2)
    return prufer_decode(code.tolist(), cfg.n)


def gen_prufer_tree(cfg: GenConfig) -> Instance:
    """Uniform random labeled tree; each node a facility with probability p."""
    if cfg.n < 2:
        raise ValueError("trees need n >= 2")
    edges = _random_tree(cfg)
    roles = stream(cfg.seed, ROLES).random(cfg.n) < cfg.p
    facilities = [v for v in range(cfg.n) if roles[v]]
    customers = [v for v in range(cfg.n) if not roles[v]]
    return Instance.build(
        cfg.n, edges, facilities, _weights(cfg, customers, cfg.n), cfg.budget_for(cfg.n), cfg.kind
    )


def gen_leaf_facility_cluster(cfg: GenConfig) -> Instance:
    """Random tree whose facilities are leaves, each with probability p.

    At least one leaf is always a facility.
    """
    if cfg.n < 3:
        raise ValueError("leaf clusters need n >= 3")
    edges = _random_tree(cfg)
    degree = [0] * cfg.n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    leaves = [v for v in range(cfg.n) if degree[v] == 1]
    rng = stream(cfg.seed, ROLES)
    draws = rng.random(len(leaves))
    facilities = [v for v, x in zip(leaves, draws) if x < cfg.p]
    if not facilities:
        facilities = [leaves[int(rng.integers(len(leaves)))]]
    fac = set(facilities)
    customers = [v for v in range(cfg.n) if v not in fac]
    return Instance.build(
        cfg.n, edges, facilities, _weights(cfg, customers, cfg.n), cfg.budget_for(cfg.n), cfg.kind
    )


def grid_edges(planes: int, per_plane: int, ring: bool = False) -> list[tuple]:
    """Satellite ``(a, i)`` is node ``a * per_plane + i``."""
    edges = set()
    for a in range(planes):
        base = a * per_plane
        for i in range(per_plane - 1):
            edges.add((base + i, base + i + 1))
        if ring and per_plane > 2:
            edges.add((base, base + per_plane - 1))
        if a + 1 < planes:
            for i in range(per_plane):
                edges.add((base + i, base + per_plane + i))
    return sorted(edges)


def gen_walker_grid(cfg: GenConfig) -> Instance:
    """Grid of customer satellites plus ``stations`` facility leaves.

    Stations get ids after the satellites and attach to distinct satellites
    drawn from the station stream (with replacement once every satellite
    already hosts one).
    """
    k, m = cfg.planes, cfg.per_plane
    if k < 1 or m < 2:
        raise ValueError("walker grid needs planes >= 1 and per_plane >= 2")
    sats = k * m
    edges = grid_edges(k, m, cfg.ring)
    rng = stream(cfg.seed, STATIONS)
    hosts = []
    for i in range(cfg.stations):
        if i < sats:
            pool = [s for s in range(sats) if s not in hosts]
            hosts.append(pool[int(rng.integers(len(pool)))])
        else:
            hosts.append(int(rng.integers(sats)))
    n = sats + cfg.stations
    edges += [(h, sats + i) for i, h in enumerate(hosts)]
    facilities = list(range(sats, n))
    return Instance.build(
        n, edges, facilities, _weights(cfg, range(sats), n), cfg.budget_for(n), cfg.kind
    )


def generate(cfg: GenConfig) -> Instance:
    return {
        "prufer": gen_prufer_tree,
        "leaf-cluster": gen_leaf_facility_cluster,
        "walker-grid": gen_walker_grid,
    }[cfg.family](cfg)
