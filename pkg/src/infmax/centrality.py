"""Centrality-based seed selectors: PageRank, H-index, coreness-based ENC,
and a gateway-aware local rank that rewards nodes bridging communities."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .community import Partition
from .graph import Graph, NodeId
from .objective import SeedSet


@dataclass(frozen=True)
class ScoreVector:
    scores: tuple[float, ...]
    method: str
    converged: bool = True

    def top_k(self, k: int) -> SeedSet:
        return top_k_seeds(self, k)


def pagerank(
    g: Graph, damping: float = 0.85, tol: float = 1e-10, max_iter: int = 200
) -> ScoreVector:
    """Power iteration with uniform teleport; degree-0 nodes spread uniformly.

    Converges when the L1 change between iterations drops below ``tol``;
    if that never happens within ``max_iter`` the result carries
    ``converged=False`` and a warning is emitted.
    """
    if g.n == 0:
        raise ValueError("pagerank requires a non-empty graph")
    n = g.n
    deg = g.degrees.astype(np.float64)
    dangling = deg == 0
    x = np.full(n, 1.0 / n)

    src, dst = g.edge_arrays
    converged = False
    for _ in range(max_iter):
        contrib = np.divide(x, deg, out=np.zeros_like(x), where=~dangling)
        nxt = np.zeros(n)
        np.add.at(nxt, dst, contrib[src])
        np.add.at(nxt, src, contrib[dst])
        nxt = damping * (nxt + x[dangling].sum() / n) + (1.0 - damping) / n
        if np.abs(nxt - x).sum() < tol:
            x = nxt
            converged = True
            break
        x = nxt
    if not converged:
        warnings.warn(f"pagerank did not converge within {max_iter} iterations")
    return ScoreVector(scores=tuple(x.tolist()), method="PR", converged=converged)


def h_index(g: Graph) -> ScoreVector:
    """score(v) = largest h such that v has at least h neighbors of degree >= h."""
    scores = []
    for v in range(g.n):
        nd = sorted((g.degree(u) for u in g.adjacency[v]), reverse=True)
        h = 0
        for i, d in enumerate(nd, start=1):
            if d >= i:
                h = i
            else:
                break
        scores.append(float(h))
    return ScoreVector(scores=tuple(scores), method="HI")


def k_shell(g: Graph) -> list[int]:
    """Shell index per node from iterative minimum-degree peeling."""
    deg = [g.degree(v) for v in range(g.n)]
    remaining = set(range(g.n))
    shell = [0] * g.n
    k = 0
    while remaining:
        k = max(k, min(deg[v] for v in remaining))
        peel = [v for v in remaining if deg[v] <= k]
        while peel:
            v = peel.pop()
            shell[v] = k
            remaining.discard(v)
            for u in g.adjacency[v]:
                if u in remaining:
                    deg[u] -= 1
                    if deg[u] <= k and u not in peel:
                        peel.append(u)
    return shell


def enc(g: Graph) -> ScoreVector:
    """Extended neighborhood coreness: sum of neighbors' summed shell indices."""
    ks = k_shell(g)
    cnc = [sum(ks[u] for u in g.adjacency[v]) for v in range(g.n)]
    plus = [float(sum(cnc[u] for u in g.adjacency[v])) for v in range(g.n)]
    return ScoreVector(scores=tuple(plus), method="ENC")


def glr(g: Graph, p: Partition, gateway_weight: float = 2.0) -> ScoreVector:
    """Degree plus a bonus per neighbor in a different community."""
    scores = []
    for v in range(g.n):
        cross = sum(1 for u in g.adjacency[v] if p.assignment[u] != p.assignment[v])
        scores.append(g.degree(v) + gateway_weight * cross)
    return ScoreVector(scores=tuple(scores), method="GLR")


def top_k_seeds(scores: ScoreVector, k: int) -> SeedSet:
    """k highest-scoring nodes; ties go to the smaller node index (and thus
    the smaller original ID, since loading assigns indices in ID order)."""
    n = len(scores.scores)
    if k > n:
        raise ValueError(f"k={k} exceeds node count {n}")
    order = sorted(range(n), key=lambda v: (-scores.scores[v], v))
    return SeedSet(order[:k])


def write_scores(g: Graph, scores: ScoreVector, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write("original_id,score\n")
        for v in range(g.n):
            fh.write(f"{g.original_ids[v]},{scores.scores[v]!r}\n")
