"""Immutable undirected simple graph and edge-list ingestion.

Graphs are loaded from plain-text edge lists (one edge per line), cleaned
to simple form (self-loops dropped, duplicate edges collapsed) and remapped
to contiguous node indices 0..n-1. The original file IDs are kept for
reporting. All downstream stages treat the graph as read-only, so a loaded
graph can be shared freely across concurrent evaluations.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

NodeId = int


class EdgeListError(ValueError):
    """Raised for unreadable, unparseable or empty edge-list files."""


@dataclass(frozen=True)
class DatasetDescriptor:
    """How to read one edge-list file.

    ``id_base`` records whether the file's node IDs start at 0 or 1 (IDs are
    remapped to contiguous indices either way). ``header`` controls dimension
    headers: "auto" skips a matrix-market style "rows cols nnz" line when the
    leading comments declare one, "skip" always skips the first data line,
    "none" never skips.
    """

    path: str | Path
    name: str = ""
    id_base: int = 0
    delimiter: str | None = None  # None = any run of whitespace
    comment_prefixes: tuple[str, ...] = ("%", "#")
    header: str = "auto"

    def __post_init__(self) -> None:
        if self.id_base not in (0, 1):
            raise ValueError(f"id_base must be 0 or 1, got {self.id_base}")
        if self.header not in ("auto", "skip", "none"):
            raise ValueError(f"unknown header policy {self.header!r}")
        if not self.name:
            object.__setattr__(self, "name", Path(self.path).stem)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with contiguous node indices.

    ``adjacency[v]`` is a sorted tuple of the neighbors of v. ``original_ids``
    maps index -> ID in the source file (indices are assigned in ascending
    original-ID order, so index order preserves original-ID order).
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    name: str = "graph"
    original_ids: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n != len(self.adjacency):
            raise ValueError("adjacency length does not match node count")
        if not self.original_ids:
            object.__setattr__(self, "original_ids", tuple(range(self.n)))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: NodeId) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"node {v} out of range [0, {self.n})")
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, sorted."""
        return tuple(
            (u, v) for u in range(self.n) for v in self.adjacency[u] if u < v
        )

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays (src, dst) over ``edges``; used by vectorized diffusion."""
        if self.m == 0:
            return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
        e = np.array(self.edges, dtype=np.int64)
        return e[:, 0], e[:, 1]

    def index_of(self, original_id: int) -> NodeId:
        return self._id_to_index[original_id]

    @cached_property
    def _id_to_index(self) -> dict[int, int]:
        return {oid: i for i, oid in enumerate(self.original_ids)}

    def check_invariants(self) -> None:
        """Verify simplicity and symmetry; raises AssertionError on violation."""
        for u, nbrs in enumerate(self.adjacency):
            assert list(nbrs) == sorted(set(nbrs)), f"adjacency[{u}] not sorted/unique"
            assert u not in nbrs, f"self-loop at {u}"
            for v in nbrs:
                assert 0 <= v < self.n, f"neighbor {v} out of range"
                assert u in self.adjacency[v], f"missing reverse edge {v}->{u}"


def from_edges(
    edges: list[tuple[int, int]] | set[tuple[int, int]],
    name: str = "graph",
    node_ids: list[int] | None = None,
) -> Graph:
    """Build a Graph from raw (possibly dirty) edges over arbitrary integer IDs.

    Self-loops are dropped with a warning; duplicates collapse silently.
    ``node_ids`` may list IDs that must exist even if isolated.
    """
    ids: set[int] = set(node_ids or ())
    clean: set[tuple[int, int]] = set()
    loops = 0
    for u, v in edges:
        ids.add(u)
        ids.add(v)
        if u == v:
            loops += 1
            continue
        clean.add((u, v) if u < v else (v, u))
    if loops:
        warnings.warn(f"dropped {loops} self-loop(s) while building {name!r}")
    if not ids:
        raise EdgeListError(f"no nodes found for graph {name!r}")

    order = sorted(ids)
    index = {oid: i for i, oid in enumerate(order)}
    adj: list[list[int]] = [[] for _ in order]
    for u, v in clean:
        adj[index[u]].append(index[v])
        adj[index[v]].append(index[u])
    return Graph(
        n=len(order),
        adjacency=tuple(tuple(sorted(a)) for a in adj),
        name=name,
        original_ids=tuple(order),
    )


def load_edge_list(descriptor: DatasetDescriptor) -> Graph:
    """Load an edge list per the descriptor's parsing policy.

    Comment lines (by prefix) and blank lines are skipped, a third numeric
    field (edge weight) is ignored, and a matrix-market style dimension
    header is skipped under the "auto"/"skip" policies.
    """
    path = Path(descriptor.path)
    if not path.is_file():
        raise EdgeListError(f"dataset file not found: {path}")

    edges: list[tuple[int, int]] = []
    saw_mm_comment = False
    first_data_line = True
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if any(line.startswith(p) for p in descriptor.comment_prefixes):
                lowered = line.lower()
                if "matrixmarket" in lowered or "symmetric" in lowered:
                    saw_mm_comment = True
                continue
            fields = line.split(descriptor.delimiter)
            if first_data_line:
                first_data_line = False
                if descriptor.header == "skip" or (
                    descriptor.header == "auto"
                    and saw_mm_comment
                    and len(fields) == 3
                ):
                    continue
            if len(fields) < 2:
                raise EdgeListError(f"{path}:{lineno}: expected at least 2 fields, got {line!r}")
            try:
                u, v = int(fields[0]), int(fields[1])
            except ValueError as exc:
                raise EdgeListError(f"{path}:{lineno}: non-integer node id in {line!r}") from exc
            edges.append((u, v))

    if not edges:
        raise EdgeListError(f"{path}: no edges found")
    return from_edges(edges, name=descriptor.name)


def write_edge_list(g: Graph, path: str | Path) -> None:
    """Write the canonical form: "#" header with n and m, then 0-based sorted "u v" lines."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(f"# n={g.n} m={g.m}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def degree(g: Graph, v: NodeId) -> int:
    return g.degree(v)


def neighborhood(g: Graph, s: set[NodeId] | frozenset[NodeId], hops: int = 1) -> set[NodeId]:
    """One-hop frontier of s, or the two-hop frontier (excluding s and the one-hop set)."""
    if hops not in (1, 2):
        raise ValueError(f"hops must be 1 or 2, got {hops}")
    for v in s:
        if not 0 <= v < g.n:
            raise IndexError(f"node {v} out of range [0, {g.n})")
    one = set()
    for v in s:
        one.update(g.adjacency[v])
    one -= set(s)
    if hops == 1:
        return one
    two = set()
    for v in one:
        two.update(g.adjacency[v])
    two -= set(s)
    two -= one
    return two
