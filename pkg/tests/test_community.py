import numpy as np
import pytest

from infmax.community import build_candidate_pool, louvain, modularity, write_partition
from infmax.generators import complete_graph, disjoint_triangles, gnm_random_graph, star_graph
from infmax.graph import Graph, from_edges

networkx = pytest.importorskip("networkx")


def _edgeless() -> Graph:
    return Graph(n=2, adjacency=((), ()))


def test_two_disjoint_triangles_split():
    g = disjoint_triangles(2)
    part = louvain(g, rng_seed=3)
    assert part.num_communities == 2
    assert part.modularity == pytest.approx(0.5, abs=1e-12)
    # Each triangle intact.
    for base in (0, 3):
        labels = {part.assignment[base + i] for i in range(3)}
        assert len(labels) == 1


def test_single_edge_merges_into_one_community():
    g = from_edges([(0, 1)])
    part = louvain(g, rng_seed=0)
    assert part.num_communities == 1
    assert part.modularity == pytest.approx(0.0, abs=1e-12)


def test_complete_graph_one_community():
    part = louvain(complete_graph(5), rng_seed=1)
    assert part.num_communities == 1
    assert part.modularity == pytest.approx(0.0, abs=1e-12)


def test_modularity_one_community_is_zero():
    for seed in range(5):
        g = gnm_random_graph(10, 20, seed=seed)
        assert modularity(g, [0] * g.n) == pytest.approx(0.0, abs=1e-12)


def test_modularity_hand_values():
    g = disjoint_triangles(2)
    split = [0, 0, 0, 1, 1, 1]
    assert modularity(g, split) == pytest.approx(0.5, abs=1e-12)
    assert modularity(g, [0] * 6) == pytest.approx(0.0, abs=1e-12)


def test_modularity_errors_on_empty_edge_set():
    with pytest.raises(ValueError):
        modularity(_edgeless(), [0, 0])
    g = from_edges([(0, 1)], node_ids=[0, 1, 2])
    with pytest.raises(ValueError):
        modularity(g, [0, 0])  # wrong length


def test_modularity_matches_networkx():
    for seed in range(8):
        g = gnm_random_graph(16, 30, seed=seed)
        part = louvain(g, rng_seed=seed)
        nxg = networkx.Graph(list(g.edges))
        nxg.add_nodes_from(range(g.n))
        comms = [set(part.members(c)) for c in range(part.num_communities)]
        expected = networkx.algorithms.community.modularity(nxg, comms)
        assert part.modularity == pytest.approx(expected, abs=1e-12)


def test_louvain_passes_monotone_and_beats_singletons():
    for seed in range(10):
        g = gnm_random_graph(20, 40, seed=100 + seed)
        part = louvain(g, rng_seed=seed)
        trace = part.pass_modularity
        assert all(b >= a - 1e-12 for a, b in zip(trace, trace[1:]))
        singletons = modularity(g, list(range(g.n)))
        assert part.modularity >= singletons
        assert part.modularity >= -1e-12  # one community already scores 0


def test_louvain_deterministic_under_seed():
    g = gnm_random_graph(25, 60, seed=5)
    a = louvain(g, rng_seed=11)
    b = louvain(g, rng_seed=11)
    assert a.assignment == b.assignment
    assert a.modularity == b.modularity


def test_louvain_validates_inputs():
    g = disjoint_triangles()
    with pytest.raises(ValueError):
        louvain(g, resolution=0.0)
    with pytest.raises(ValueError):
        louvain(_edgeless())


def test_pool_star_center_first():
    g = star_graph(4)
    part = louvain(g, rng_seed=0)
    pool = build_candidate_pool(g, part, k=1, pool_factor=3.0)
    assert pool.ranked[0] == 0
    assert pool.pool_size == min(g.n, 3)


def test_pool_quota_split_across_triangles():
    g = disjoint_triangles(2)
    part = louvain(g, rng_seed=2)
    pool = build_candidate_pool(g, part, k=2, pool_factor=3.0)
    assert pool.pool_size == 6
    per_comm = {}
    for v in pool.ranked:
        per_comm[part.assignment[v]] = per_comm.get(part.assignment[v], 0) + 1
    assert sorted(per_comm.values()) == [3, 3]


def test_pool_k_equals_n():
    g = gnm_random_graph(9, 14, seed=3)
    part = louvain(g, rng_seed=0)
    pool = build_candidate_pool(g, part, k=g.n, pool_factor=2.0)
    assert set(pool.ranked) == set(range(g.n))


def test_pool_budget_non_increasing_and_contains_big_communities():
    for seed in range(10):
        g = gnm_random_graph(24, 50, seed=200 + seed)
        part = louvain(g, rng_seed=seed)
        pool = build_candidate_pool(g, part, k=3, pool_factor=5.0)
        budgets = [pool.budget[v] for v in pool.ranked]
        assert all(a >= b for a, b in zip(budgets, budgets[1:]))
        if pool.pool_size >= part.num_communities:
            threshold = g.n / part.num_communities
            covered = {part.assignment[v] for v in pool.ranked}
            for c, size in enumerate(part.community_sizes()):
                if size >= threshold:
                    assert c in covered


def test_pool_validates_k():
    g = disjoint_triangles()
    part = louvain(g, rng_seed=0)
    with pytest.raises(ValueError):
        build_candidate_pool(g, part, k=0)
    with pytest.raises(ValueError):
        build_candidate_pool(g, part, k=g.n + 1)


def test_partition_dump(tmp_path):
    g = disjoint_triangles(2)
    part = louvain(g, rng_seed=3)
    out = tmp_path / "partition.txt"
    write_partition(g, part, out)
    lines = out.read_text().strip().splitlines()
    assert len(lines) == g.n
    first_id, first_label = lines[0].split()
    assert int(first_id) == g.original_ids[0]
    assert int(first_label) == part.assignment[0]
