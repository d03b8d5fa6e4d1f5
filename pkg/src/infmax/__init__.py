"""Influence maximization toolkit: community-budgeted candidate pools,
quantum-enhanced swarm optimizers, centrality baselines, and Independent
Cascade evaluation."""

__version__ = "0.1.0"

from .community import CandidatePool, Partition, build_candidate_pool, louvain, modularity
from .diffusion import DiffusionConfig, DiffusionResult, exact_expected_spread, fis, ic_single_run
from .graph import DatasetDescriptor, Graph, from_edges, load_edge_list, neighborhood, write_edge_list
from .objective import SeedSet, lie
from .swarm import ALGORITHMS, SwarmConfig, Trace, discretize, optimize, quantum_mutation, reverse_learning

__all__ = [
    "__version__",
    "ALGORITHMS",
    "CandidatePool",
    "DatasetDescriptor",
    "DiffusionConfig",
    "DiffusionResult",
    "Graph",
    "Partition",
    "SeedSet",
    "SwarmConfig",
    "Trace",
    "build_candidate_pool",
    "discretize",
    "exact_expected_spread",
    "fis",
    "from_edges",
    "ic_single_run",
    "lie",
    "load_edge_list",
    "louvain",
    "modularity",
    "neighborhood",
    "optimize",
    "quantum_mutation",
    "reverse_learning",
    "write_edge_list",
]
