"""Local influence estimator: the closed-form fitness the swarms maximize.

The estimator scores a seed set by its guaranteed size plus, for every
one-hop neighbor u, the probability that at least one seeding edge activates
u, weighted up by u's reach into the untouched two-hop shell:

    score(S) = |S| + sum over u in frontier(S) of
               (1 - (1-p)^c_u) * (1 + p * d_u)

where c_u counts u's neighbors inside S and d_u counts u's neighbors outside
S and the frontier. The exact 1-(1-p)^c aggregation (rather than c*p) keeps
the per-node activation term a true probability under independent edge
trials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, NodeId


@dataclass(frozen=True)
class SeedSet:
    """An immutable set of k distinct seed nodes."""

    nodes: frozenset[NodeId]

    def __init__(self, nodes) -> None:
        object.__setattr__(self, "nodes", frozenset(nodes))

    @property
    def k(self) -> int:
        return len(self.nodes)

    def validate(self, g: Graph) -> None:
        for v in self.nodes:
            if not 0 <= v < g.n:
                raise IndexError(f"seed {v} out of range [0, {g.n})")

    def __iter__(self):
        return iter(self.nodes)

    def __contains__(self, v) -> bool:
        return v in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)


def check_probability(p: float) -> float:
    if not 0.0 < p <= 1.0:
        raise ValueError(f"infection probability must be in (0, 1], got {p}")
    return p


def lie(g: Graph, s: SeedSet | frozenset[NodeId] | set[NodeId], p: float) -> float:
    """Expected local spread of seed set ``s`` under infection probability ``p``."""
    check_probability(p)
    seeds = s.nodes if isinstance(s, SeedSet) else frozenset(s)
    for v in seeds:
        if not 0 <= v < g.n:
            raise IndexError(f"seed {v} out of range [0, {g.n})")

    nbr = g.neighbor_sets
    frontier: set[NodeId] = set()
    for v in seeds:
        frontier.update(nbr[v])
    frontier -= seeds

    blocked = seeds | frontier
    total = float(len(seeds))
    q = 1.0 - p
    for u in frontier:
        c_u = len(nbr[u] & seeds)
        d_u = len(nbr[u] - blocked)
        total += (1.0 - q**c_u) * (1.0 + p * d_u)
    return total
