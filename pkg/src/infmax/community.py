"""Louvain community detection and candidate-pool budgeting.

The partition feeds two consumers: the budgeting step that ranks nodes into
the candidate pool the swarm optimizers search over, and the gateway-aware
centrality baseline. Budget value is the node's degree in the full graph,
the simplest monotone proxy for spreading potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import Graph, NodeId


@dataclass(frozen=True)
class Partition:
    """Node -> community assignment with contiguous labels in [0, num_communities)."""

    assignment: tuple[int, ...]
    num_communities: int
    modularity: float
    pass_modularity: tuple[float, ...] = ()  # quality recorded after each pass

    def __post_init__(self) -> None:
        labels = set(self.assignment)
        if labels != set(range(self.num_communities)):
            raise ValueError("community labels must be contiguous in [0, num_communities)")
        if not -0.5 - 1e-12 <= self.modularity <= 1.0 + 1e-12:
            raise ValueError(f"modularity {self.modularity} outside [-0.5, 1]")

    def members(self, label: int) -> list[NodeId]:
        return [v for v, c in enumerate(self.assignment) if c == label]

    def community_sizes(self) -> list[int]:
        sizes = [0] * self.num_communities
        for c in self.assignment:
            sizes[c] += 1
        return sizes


@dataclass(frozen=True)
class CandidatePool:
    """Budget-ranked candidate nodes; positions in swarm space index into ``ranked``."""

    ranked: tuple[NodeId, ...]
    budget: dict[NodeId, float]
    pool_size: int

    def __post_init__(self) -> None:
        if len(set(self.ranked)) != len(self.ranked):
            raise ValueError("ranked candidate list contains duplicates")
        if self.pool_size != len(self.ranked):
            raise ValueError("pool_size does not match ranked length")
        vals = [self.budget[v] for v in self.ranked]
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("budget values must be non-increasing along ranked")


def modularity(g: Graph, assignment: tuple[int, ...] | list[int]) -> float:
    """Newman-Girvan modularity: sum over communities of e_c/m - (d_c/2m)^2."""
    if g.m == 0:
        raise ValueError("modularity undefined for graphs with no edges")
    if len(assignment) != g.n:
        raise ValueError("assignment length does not match node count")
    m = g.m
    intra: dict[int, int] = {}
    deg: dict[int, int] = {}
    for v in range(g.n):
        c = assignment[v]
        deg[c] = deg.get(c, 0) + g.degree(v)
    for u, v in g.edges:
        if assignment[u] == assignment[v]:
            c = assignment[u]
            intra[c] = intra.get(c, 0) + 1
    return sum(
        intra.get(c, 0) / m - (deg[c] / (2.0 * m)) ** 2 for c in deg
    )


class _LevelGraph:
    """Weighted working graph for one Louvain level (self-loops carry intra weight)."""

    def __init__(self, adj: list[dict[int, float]], self_w: list[float]):
        self.adj = adj
        self.self_w = self_w
        self.n = len(adj)
        # Weighted degree counts self-loops twice.
        self.k = [sum(nbrs.values()) + 2.0 * self_w[i] for i, nbrs in enumerate(adj)]
        self.m2 = sum(self.k)  # = 2 * total edge weight

    @classmethod
    def from_graph(cls, g: Graph) -> "_LevelGraph":
        adj = [{v: 1.0 for v in nbrs} for nbrs in g.adjacency]
        return cls(adj, [0.0] * g.n)

    def aggregate(self, labels: list[int], num_comms: int) -> "_LevelGraph":
        adj: list[dict[int, float]] = [{} for _ in range(num_comms)]
        self_w = [0.0] * num_comms
        for v in range(self.n):
            cv = labels[v]
            self_w[cv] += self.self_w[v]
            for u, w in self.adj[v].items():
                cu = labels[u]
                if cu == cv:
                    if u > v:
                        self_w[cv] += w
                else:
                    adj[cv][cu] = adj[cv].get(cu, 0.0) + w
        return _LevelGraph(adj, self_w)


def _local_moving(level: _LevelGraph, resolution: float, rng: np.random.Generator) -> list[int]:
    """One Louvain phase: greedy node moves until no strictly positive gain remains."""
    labels = list(range(level.n))
    comm_tot = list(level.k)  # total weighted degree per community
    m2 = level.m2

    improved = True
    while improved:
        improved = False
        for v in rng.permutation(level.n):
            v = int(v)
            cv = labels[v]
            kv = level.k[v]
            # Links from v into each neighboring community (self-loop excluded).
            links: dict[int, float] = {cv: 0.0}
            for u, w in level.adj[v].items():
                links[labels[u]] = links.get(labels[u], 0.0) + w
            comm_tot[cv] -= kv
            # score(c) differs from the true modularity gain by a constant in c
            best_c, best_score = cv, links.get(cv, 0.0) - resolution * comm_tot[cv] * kv / m2
            for c, w in links.items():
                if c == cv:
                    continue
                score = w - resolution * comm_tot[c] * kv / m2
                if score > best_score or (score == best_score and c < best_c):
                    best_c, best_score = c, score
            comm_tot[best_c] += kv
            if best_c != cv:
                labels[v] = best_c
                improved = True
    return labels


def louvain(g: Graph, resolution: float = 1.0, rng_seed: int = 0) -> Partition:
    """Two-phase Louvain with a seeded node-visiting order.

    Local moves only ever apply strictly positive quality gains, so the
    recorded per-pass modularity never decreases (at resolution 1.0 it is the
    classic modularity of the projected partition).
    """
    if g.n == 0:
        raise ValueError("cannot partition an empty graph")
    if g.m == 0:
        raise ValueError("louvain requires at least one edge")
    if resolution <= 0:
        raise ValueError("resolution must be positive")

    rng = np.random.default_rng(rng_seed)
    level = _LevelGraph.from_graph(g)
    node_to_comm = list(range(g.n))  # original node -> current top-level community
    passes: list[float] = []

    while True:
        labels = _local_moving(level, resolution, rng)
        # Renumber communities contiguously by first appearance.
        remap: dict[int, int] = {}
        for c in labels:
            if c not in remap:
                remap[c] = len(remap)
        labels = [remap[c] for c in labels]
        num_comms = len(remap)

        node_to_comm = [labels[c] for c in node_to_comm]
        passes.append(modularity(g, node_to_comm))
        if num_comms == level.n:  # no merge happened; converged
            break
        level = level.aggregate(labels, num_comms)

    final: dict[int, int] = {}
    for c in node_to_comm:
        if c not in final:
            final[c] = len(final)
    assignment = tuple(final[c] for c in node_to_comm)
    return Partition(
        assignment=assignment,
        num_communities=len(final),
        modularity=modularity(g, assignment),
        pass_modularity=tuple(passes),
    )


def build_candidate_pool(
    g: Graph, p: Partition, k: int, pool_factor: float = 5.0
) -> CandidatePool:
    """Select pool_size = min(n, ceil(pool_factor * k)) nodes with per-community quotas.

    Quotas are proportional to community size (at least one node each); the
    within-community ranking and the final order are by descending degree,
    ties to the smaller node index. Quota surplus or deficit against
    pool_size is reconciled by global budget rank.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > g.n:
        raise ValueError(f"k={k} exceeds node count {g.n}")
    if pool_factor < 1:
        raise ValueError("pool_factor must be >= 1")

    pool_size = min(g.n, math.ceil(pool_factor * k))
    budget = {v: float(g.degree(v)) for v in range(g.n)}
    rank_key = lambda v: (-budget[v], v)

    selected: set[NodeId] = set()
    for label in range(p.num_communities):
        members = sorted(p.members(label), key=rank_key)
        quota = max(1, int(pool_size * len(members) / g.n + 0.5))
        selected.update(members[:quota])

    protected = {
        label
        for label, size in enumerate(p.community_sizes())
        if size >= g.n / p.num_communities
    }
    if len(selected) > pool_size:
        # Drop the globally weakest, never orphaning a protected community.
        per_comm: dict[int, int] = {}
        for v in selected:
            per_comm[p.assignment[v]] = per_comm.get(p.assignment[v], 0) + 1
        for v in sorted(selected, key=rank_key, reverse=True):
            if len(selected) == pool_size:
                break
            c = p.assignment[v]
            if c in protected and per_comm[c] == 1:
                continue
            selected.remove(v)
            per_comm[c] -= 1
        # If protection alone blocked the target size, the size contract wins.
        for v in sorted(selected, key=rank_key, reverse=True):
            if len(selected) == pool_size:
                break
            selected.remove(v)
    elif len(selected) < pool_size:
        for v in sorted((set(range(g.n)) - selected), key=rank_key):
            if len(selected) == pool_size:
                break
            selected.add(v)

    ranked = tuple(sorted(selected, key=rank_key))
    return CandidatePool(ranked=ranked, budget=budget, pool_size=len(ranked))


def write_partition(g: Graph, p: Partition, path: str | Path) -> None:
    """Dump one "original_id community_label" line per node."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for v in range(g.n):
            fh.write(f"{g.original_ids[v]} {p.assignment[v]}\n")
