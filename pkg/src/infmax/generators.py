"""Seeded synthetic graph generators.

Used by the test suites and as stand-ins for real datasets when the edge-list
files are not on disk. All generators are deterministic under a fixed seed.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, from_edges


def path_graph(n: int) -> Graph:
    return from_edges([(i, i + 1) for i in range(n - 1)], name=f"path{n}", node_ids=list(range(n)))


def cycle_graph(n: int) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    return from_edges(edges, name=f"cycle{n}")


def star_graph(leaves: int) -> Graph:
    """Center node 0 plus ``leaves`` pendant nodes."""
    return from_edges([(0, i + 1) for i in range(leaves)], name=f"star{leaves}")


def complete_graph(n: int) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return from_edges(edges, name=f"K{n}")


def disjoint_triangles(count: int = 2) -> Graph:
    edges = []
    for t in range(count):
        a = 3 * t
        edges += [(a, a + 1), (a + 1, a + 2), (a, a + 2)]
    return from_edges(edges, name=f"triangles{count}")


def gnm_random_graph(n: int, m: int, seed: int, name: str | None = None) -> Graph:
    """Uniform random simple graph with exactly n nodes and m edges."""
    max_m = n * (n - 1) // 2
    if m > max_m:
        raise ValueError(f"m={m} exceeds max {max_m} for n={n}")
    rng = np.random.default_rng(seed)
    # Sample distinct pairs by index into the upper triangle.
    picks = rng.choice(max_m, size=m, replace=False)
    us = (np.floor((2 * n - 1 - np.sqrt((2 * n - 1) ** 2 - 8 * picks)) / 2)).astype(np.int64)
    offs = picks - us * (2 * n - us - 1) // 2
    vs = us + 1 + offs
    edges = list(zip(us.tolist(), vs.tolist()))
    return from_edges(edges, name=name or f"gnm_{n}_{m}_{seed}", node_ids=list(range(n)))
