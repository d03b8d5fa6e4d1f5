import numpy as np
import pytest

from infmax.generators import complete_graph, gnm_random_graph, path_graph, star_graph
from infmax.graph import from_edges
from infmax.objective import SeedSet, lie


def test_empty_seed_set_scores_zero():
    g = path_graph(3)
    assert lie(g, SeedSet(()), 0.1) == 0.0


def test_star_center_hand_value():
    # 1 + 4 * [1 - 0.9] * (1 + 0.1 * 0) = 1.4
    g = star_graph(4)
    assert lie(g, SeedSet({0}), 0.1) == pytest.approx(1.4, abs=1e-12)


def test_path_end_hand_value():
    # 1 + 0.1 * (1 + 0.1 * 1) = 1.11; the middle node sees one untouched node.
    g = path_graph(3)
    assert lie(g, SeedSet({0}), 0.1) == pytest.approx(1.11, abs=1e-12)


def test_multi_seed_counts_shared_frontier_once():
    # Square 0-1-2-3: seeds {0, 2} touch 1 and 3, each with two seeding edges
    # and no third shell: 2 + 2 * (1 - 0.81) * 1
    g = from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert lie(g, SeedSet({0, 2}), 0.1) == pytest.approx(2 + 2 * (1 - 0.81), abs=1e-12)


def test_invalid_inputs():
    g = path_graph(3)
    with pytest.raises(IndexError):
        lie(g, SeedSet({7}), 0.1)
    with pytest.raises(ValueError):
        lie(g, SeedSet({0}), 0.0)
    with pytest.raises(ValueError):
        lie(g, SeedSet({0}), 1.5)


def test_lower_bound_and_isolated_node_increment():
    rng = np.random.default_rng(1)
    for trial in range(20):
        n = int(rng.integers(4, 16))
        m = int(rng.integers(1, n * (n - 1) // 2))
        g = gnm_random_graph(n, m, seed=trial)
        k = int(rng.integers(1, n))
        seeds = SeedSet(rng.choice(n, size=k, replace=False).tolist())
        value = lie(g, seeds, 0.1)
        assert value >= seeds.k - 1e-12
        frontier_empty = all(set(g.adjacency[v]) <= seeds.nodes for v in seeds)
        if frontier_empty:
            assert value == pytest.approx(seeds.k)

    # Adding an isolated node raises the estimate by exactly 1.
    g = from_edges([(0, 1), (1, 2)], node_ids=[0, 1, 2, 3])
    base = lie(g, SeedSet({0}), 0.3)
    assert lie(g, SeedSet({0, 3}), 0.3) == pytest.approx(base + 1.0, abs=1e-12)


def test_isomorphism_invariance():
    rng = np.random.default_rng(7)
    for trial in range(10):
        g = gnm_random_graph(8, 13, seed=30 + trial)
        perm = rng.permutation(8)
        relabeled = from_edges(
            [(int(perm[u]), int(perm[v])) for u, v in g.edges], node_ids=list(range(8))
        )
        seeds = {0, 3}
        mapped = {int(perm[v]) for v in seeds}
        assert lie(g, SeedSet(seeds), 0.2) == pytest.approx(
            lie(relabeled, SeedSet(mapped), 0.2), abs=1e-9
        )


def test_monotone_in_p():
    g = gnm_random_graph(12, 24, seed=4)
    seeds = SeedSet({0, 5})
    values = [lie(g, seeds, p) for p in (0.05, 0.1, 0.3, 0.6, 1.0)]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))


def test_complete_graph_symmetry():
    g = complete_graph(5)
    values = {lie(g, SeedSet({v}), 0.1) for v in range(5)}
    assert len(values) == 1
