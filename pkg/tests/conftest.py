import os
from pathlib import Path

import pytest

from infmax.generators import gnm_random_graph
from infmax.graph import DatasetDescriptor, Graph, load_edge_list

# Published sizes of the benchmark datasets; used for synthetic stand-ins
# when the real edge lists are not on disk (this sandbox cannot download).
DATASET_SIZES = {
    "jazz": (198, 2742),
    "soc-wiki-vote": (889, 2914),
    "email-univ": (1133, 5451),
    "hamsterster": (2426, 16631),
}


def data_dir() -> Path:
    return Path(os.environ.get("INFMAX_DATA", Path(__file__).resolve().parent.parent / "data"))


def dataset_graph(name: str) -> tuple[Graph, bool]:
    """Real dataset graph if the file exists, else a seeded stand-in of the
    published size. Returns (graph, is_real)."""
    n, m = DATASET_SIZES[name]
    for ext in (".edges", ".txt", ".mtx", ".el"):
        path = data_dir() / f"{name}{ext}"
        if path.is_file():
            return load_edge_list(DatasetDescriptor(path=path, name=name)), True
    seed = sum(ord(c) for c in name)
    return gnm_random_graph(n, m, seed=seed, name=name), False


@pytest.fixture
def tmp_edge_file(tmp_path):
    def write(content: str, name: str = "g.edges") -> Path:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return path

    return write
