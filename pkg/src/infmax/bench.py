"""Experiment harness: runs algorithm x dataset x spreader-fraction grids and
emits machine-readable result tables.

Configuration comes from an INI file (sections: experiment, datasets, swarm,
diffusion) with CLI flag overrides. Datasets are either edge-list paths or
seeded synthetic specs of the form ``gnm:<n>:<m>:<seed>``, so the harness
runs end to end without any downloaded data.

Per cell the harness times the seed-selection phase only (graph loading,
community detection and pool construction are cached per dataset and shared
by every algorithm), then scores the selected seeds with the local influence
estimate and a cascade simulation.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .centrality import enc, glr, h_index, pagerank, top_k_seeds
from .community import CandidatePool, Partition, build_candidate_pool, louvain
from .diffusion import DiffusionConfig, fis
from .generators import gnm_random_graph
from .graph import DatasetDescriptor, Graph, load_edge_list
from .objective import SeedSet, lie
from .swarm import ALGORITHMS as SWARM_ALGORITHMS
from .swarm import SwarmConfig, optimize

CENTRALITY_ALGORITHMS = ("HI", "GLR", "PR", "ENC")
ALL_ALGORITHMS = SWARM_ALGORITHMS + CENTRALITY_ALGORITHMS

RESULT_COLUMNS = (
    "dataset",
    "algorithm",
    "fraction",
    "k",
    "repetition",
    "rng_seed",
    "lie_value",
    "fis_mean",
    "fis_variance",
    "wall_clock_seconds",
    "error",
)


@dataclass(frozen=True)
class DatasetSpec:
    """A named dataset: either a file-backed descriptor or a synthetic recipe."""

    name: str
    source: str  # path or "gnm:<n>:<m>:<seed>"

    def load(self) -> Graph:
        if self.source.startswith("gnm:"):
            try:
                _, n, m, seed = self.source.split(":")
                return gnm_random_graph(int(n), int(m), int(seed), name=self.name)
            except ValueError as exc:
                raise ValueError(f"bad synthetic spec {self.source!r}; expected gnm:<n>:<m>:<seed>") from exc
        return load_edge_list(DatasetDescriptor(path=self.source, name=self.name))


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple[DatasetSpec, ...]
    algorithms: tuple[str, ...] = ALL_ALGORITHMS
    spreader_fractions: tuple[float, ...] = (0.01, 0.02, 0.03, 0.04, 0.05)
    p: float = 0.1
    repetitions: int = 10
    rng_seed: int = 0
    out_dir: str = "results"
    workers: int = 1
    num_simulations: int = 10000
    pool_factor: float = 5.0
    swarm: SwarmConfig = field(default_factory=SwarmConfig)

    def __post_init__(self) -> None:
        if not self.datasets:
            raise ValueError("no datasets configured")
        for a in self.algorithms:
            if a not in ALL_ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}; expected one of {ALL_ALGORITHMS}")
        for f in self.spreader_fractions:
            if not 0.0 < f < 1.0:
                raise ValueError(f"spreader fraction {f} outside (0, 1)")
        object.__setattr__(
            self, "spreader_fractions", tuple(sorted(self.spreader_fractions))
        )
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class ResultRow:
    dataset: str
    algorithm: str
    fraction: float
    k: int
    repetition: int
    rng_seed: int
    lie_value: float = math.nan
    fis_mean: float = math.nan
    fis_variance: float = math.nan
    wall_clock_seconds: float = math.nan
    error: str = ""

    def as_csv(self) -> list[str]:
        return [
            self.dataset,
            self.algorithm,
            repr(self.fraction),
            str(self.k),
            str(self.repetition),
            str(self.rng_seed),
            repr(self.lie_value),
            repr(self.fis_mean),
            repr(self.fis_variance),
            repr(self.wall_clock_seconds),
            self.error,
        ]


def cell_seed(master: int, d_idx: int, a_idx: int, f_idx: int, rep: int) -> int:
    """Stable per-cell seed; independent of execution order."""
    ss = np.random.SeedSequence(entropy=master, spawn_key=(d_idx, a_idx, f_idx, rep))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


class _DatasetCache:
    """Graph, partition and per-k pools, built once per dataset."""

    def __init__(self, spec: DatasetSpec, louvain_seed: int, pool_factor: float):
        self.graph = spec.load()
        self.partition = louvain(self.graph, rng_seed=louvain_seed)
        self.pool_factor = pool_factor
        self._pools: dict[int, CandidatePool] = {}

    def pool(self, k: int) -> CandidatePool:
        if k not in self._pools:
            self._pools[k] = build_candidate_pool(
                self.graph, self.partition, k, self.pool_factor
            )
        return self._pools[k]


def select_seeds(
    algorithm: str,
    cache: _DatasetCache,
    k: int,
    p: float,
    config: ExperimentConfig,
    seed: int,
) -> tuple[SeedSet, float]:
    """Run one selector; returns the seed set and the selection wall-clock."""
    g = cache.graph
    start = time.perf_counter()
    if algorithm in SWARM_ALGORITHMS:
        pool = cache.pool(k)
        swarm_cfg = replace(config.swarm, algorithm=algorithm, k=k, rng_seed=seed)
        seeds, _, _ = optimize(g, pool, swarm_cfg, p=p)
    elif algorithm == "PR":
        seeds = top_k_seeds(pagerank(g), k)
    elif algorithm == "HI":
        seeds = top_k_seeds(h_index(g), k)
    elif algorithm == "ENC":
        seeds = top_k_seeds(enc(g), k)
    elif algorithm == "GLR":
        seeds = top_k_seeds(glr(g, cache.partition), k)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return seeds, time.perf_counter() - start


_WORKER_CACHES: dict[str, _DatasetCache] = {}


def _run_cell(args: tuple[ExperimentConfig, int, int, int, int]) -> ResultRow:
    config, d_idx, a_idx, f_idx, rep = args
    spec = config.datasets[d_idx]
    algorithm = config.algorithms[a_idx]
    fraction = config.spreader_fractions[f_idx]
    seed = cell_seed(config.rng_seed, d_idx, a_idx, f_idx, rep)
    try:
        cache = _WORKER_CACHES.get(spec.name)
        if cache is None:
            cache = _DatasetCache(spec, louvain_seed=config.rng_seed, pool_factor=config.pool_factor)
            _WORKER_CACHES[spec.name] = cache
        g = cache.graph
        k = max(1, int(fraction * g.n + 0.5))
        seeds, wall = select_seeds(algorithm, cache, k, config.p, config, seed)
        lie_value = lie(g, seeds, config.p)
        diff = fis(g, seeds, DiffusionConfig(config.p, config.num_simulations, seed))
        return ResultRow(
            dataset=spec.name,
            algorithm=algorithm,
            fraction=fraction,
            k=k,
            repetition=rep,
            rng_seed=seed,
            lie_value=lie_value,
            fis_mean=diff.fis_mean,
            fis_variance=diff.fis_variance,
            wall_clock_seconds=wall,
        )
    except Exception as exc:  # per-cell failures must not kill the run
        return ResultRow(
            dataset=spec.name,
            algorithm=algorithm,
            fraction=fraction,
            k=-1,
            repetition=rep,
            rng_seed=seed,
            error=f"{type(exc).__name__}: {exc}",
        )


def run_experiment(config: ExperimentConfig) -> list[ResultRow]:
    """Run every (dataset, algorithm, fraction, repetition) cell.

    Rows stream to <out>/results.csv as they complete (one flushed line per
    row, so an interrupted file holds only complete rows); failures become
    error rows and the run continues.
    """
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_manifest(config, out / "manifest.json")

    cells = [
        (config, d, a, f, r)
        for d in range(len(config.datasets))
        for a in range(len(config.algorithms))
        for f in range(len(config.spreader_fractions))
        for r in range(config.repetitions)
    ]

    rows: list[ResultRow] = []
    with (out / "results.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_COLUMNS)
        fh.flush()
        if config.workers > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                results = pool.map(_run_cell, cells)
                for row in results:  # ordered sink: map preserves cell order
                    rows.append(row)
                    writer.writerow(row.as_csv())
                    fh.flush()
        else:
            for cell in cells:
                row = _run_cell(cell)
                rows.append(row)
                writer.writerow(row.as_csv())
                fh.flush()
    return rows


def emit_tables(rows: list[ResultRow], config: ExperimentConfig) -> list[Path]:
    """Write results.csv, the timing table, and per-dataset metric curves."""
    if not rows:
        raise ValueError("no result rows to emit")
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    results_path = out / "results.csv"
    with results_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv())
    written.append(results_path)

    ok = [r for r in rows if not r.error]
    datasets = [d.name for d in config.datasets if any(r.dataset == d.name for r in ok)]
    algorithms = [a for a in config.algorithms if any(r.algorithm == a for r in ok)]

    # Timing table: datasets x algorithms, mean selection seconds at the
    # largest fraction that produced results.
    top_fraction = max((r.fraction for r in ok), default=None)
    time_path = out / "time_table.csv"
    with time_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset"] + algorithms)
        for d in datasets:
            line: list[str] = [d]
            for a in algorithms:
                vals = [
                    r.wall_clock_seconds
                    for r in ok
                    if r.dataset == d and r.algorithm == a and r.fraction == top_fraction
                ]
                line.append(repr(sum(vals) / len(vals)) if vals else "")
            writer.writerow(line)
    written.append(time_path)

    for d in datasets:
        ddir = out / d
        ddir.mkdir(exist_ok=True)
        fractions = sorted({r.fraction for r in ok if r.dataset == d})
        for metric, fname in (("fis_mean", "fis_curve.csv"), ("lie_value", "lie_curve.csv")):
            path = ddir / fname
            with path.open("w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["fraction"] + algorithms)
                for f in fractions:
                    line = [repr(f)]
                    for a in algorithms:
                        vals = [
                            getattr(r, metric)
                            for r in ok
                            if r.dataset == d and r.algorithm == a and r.fraction == f
                        ]
                        line.append(repr(sum(vals) / len(vals)) if vals else "")
                    writer.writerow(line)
            written.append(path)
    return written


def write_manifest(config: ExperimentConfig, path: Path) -> None:
    manifest = {
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(),
        "rng_seed": config.rng_seed,
        "seed_derivation": "SeedSequence(master, spawn_key=(dataset, algorithm, fraction, repetition))",
        "datasets": {d.name: d.source for d in config.datasets},
        "algorithms": list(config.algorithms),
        "spreader_fractions": list(config.spreader_fractions),
        "p": config.p,
        "repetitions": config.repetitions,
        "num_simulations": config.num_simulations,
        "pool_factor": config.pool_factor,
        "workers": config.workers,
        "swarm": {
            "population_size": config.swarm.population_size,
            "max_iterations": config.swarm.max_iterations,
            "sigma": config.swarm.sigma,
            "elite_fraction": config.swarm.elite_fraction,
            "mutation_fraction": config.swarm.mutation_fraction,
            "inertia": config.swarm.inertia,
            "cognitive": config.swarm.cognitive,
            "social": config.swarm.social,
            "freq_min": config.swarm.freq_min,
            "freq_max": config.swarm.freq_max,
            "loudness": config.swarm.loudness,
            "pulse_rate": config.swarm.pulse_rate,
        },
    }
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def _parse_list(raw: str) -> list[str]:
    return [part.strip() for part in raw.replace(",", " ").split() if part.strip()]


def load_config_file(path: str | Path) -> dict:
    """Read the INI experiment file into a flat option dict."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise FileNotFoundError(f"config file not found: {path}")
    opts: dict = {}
    if parser.has_section("experiment"):
        exp = parser["experiment"]
        if "algorithms" in exp:
            opts["algorithms"] = _parse_list(exp["algorithms"])
        if "fractions" in exp:
            opts["fractions"] = [float(x) for x in _parse_list(exp["fractions"])]
        for key, conv in (
            ("repetitions", int),
            ("seed", int),
            ("workers", int),
        ):
            if key in exp:
                opts[key] = conv(exp[key])
        if "out" in exp:
            opts["out"] = exp["out"]
    if parser.has_section("datasets"):
        opts["datasets"] = [
            DatasetSpec(name=name, source=source)
            for name, source in parser["datasets"].items()
        ]
    if parser.has_section("diffusion"):
        diff = parser["diffusion"]
        if "p" in diff:
            opts["p"] = float(diff["p"])
        if "simulations" in diff:
            opts["simulations"] = int(diff["simulations"])
    if parser.has_section("swarm"):
        sw = parser["swarm"]
        swarm_kwargs: dict = {}
        for ini_key, attr, conv in (
            ("population", "population_size", int),
            ("iterations", "max_iterations", int),
            ("sigma", "sigma", float),
            ("elite_fraction", "elite_fraction", float),
            ("mutation_fraction", "mutation_fraction", float),
            ("inertia", "inertia", float),
            ("cognitive", "cognitive", float),
            ("social", "social", float),
            ("freq_min", "freq_min", float),
            ("freq_max", "freq_max", float),
            ("loudness", "loudness", float),
            ("pulse_rate", "pulse_rate", float),
        ):
            if ini_key in sw:
                swarm_kwargs[attr] = conv(sw[ini_key])
        if "pool_factor" in sw:
            opts["pool_factor"] = float(sw["pool_factor"])
        opts["swarm_kwargs"] = swarm_kwargs
    return opts


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    opts: dict = {}
    if args.config:
        opts = load_config_file(args.config)

    datasets = opts.get("datasets", [])
    if args.dataset:
        datasets = []
        for spec in args.dataset:
            if "=" in spec:
                name, source = spec.split("=", 1)
            else:
                name, source = Path(spec).stem, spec
            datasets.append(DatasetSpec(name=name, source=source))

    algorithms = args.algorithm or opts.get("algorithms") or list(ALL_ALGORITHMS)
    fractions = (
        [float(x) for x in _parse_list(args.fractions)]
        if args.fractions
        else opts.get("fractions", [0.01, 0.02, 0.03, 0.04, 0.05])
    )

    swarm_kwargs = opts.get("swarm_kwargs", {})
    if args.population:
        swarm_kwargs["population_size"] = args.population
    if args.iterations:
        swarm_kwargs["max_iterations"] = args.iterations

    return ExperimentConfig(
        datasets=tuple(datasets),
        algorithms=tuple(algorithms),
        spreader_fractions=tuple(fractions),
        p=args.p if args.p is not None else opts.get("p", 0.1),
        repetitions=args.reps or opts.get("repetitions", 10),
        rng_seed=args.seed if args.seed is not None else opts.get("seed", 0),
        out_dir=args.out or opts.get("out", "results"),
        workers=args.workers or opts.get("workers", 1),
        num_simulations=args.sims or opts.get("simulations", 10000),
        pool_factor=opts.get("pool_factor", 5.0),
        swarm=SwarmConfig(**swarm_kwargs),
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="infmax-bench",
        description="Run influence-maximization selectors over dataset/fraction grids.",
    )
    parser.add_argument("--config", help="INI experiment file")
    parser.add_argument(
        "--dataset",
        action="append",
        help="dataset as name=path, name=gnm:<n>:<m>:<seed>, or a bare path (repeatable; overrides config)",
    )
    parser.add_argument(
        "--algorithm", action="append", choices=ALL_ALGORITHMS, help="algorithm tag (repeatable)"
    )
    parser.add_argument("--fractions", help="comma-separated spreader fractions")
    parser.add_argument("--seed", type=int, help="master RNG seed")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--reps", type=int, help="repetitions per cell")
    parser.add_argument("--workers", type=int, help="concurrent cell workers")
    parser.add_argument("--p", type=float, help="infection probability")
    parser.add_argument("--sims", type=int, help="cascade simulations per FIS estimate")
    parser.add_argument("--population", type=int, help="swarm population size")
    parser.add_argument("--iterations", type=int, help="swarm iterations")
    args = parser.parse_args(argv)

    try:
        config = build_config(args)
    except ValueError as exc:
        parser.error(str(exc))

    rows = run_experiment(config)
    written = emit_tables(rows, config)
    errors = sum(1 for r in rows if r.error)
    print(f"{len(rows)} cells completed ({errors} errors); wrote {len(written)} files under {config.out_dir}")
    return 0 if errors == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
