"""Swarm optimizers over the candidate pool: a salp chain, particle swarm,
and bat engine, each available plain or wrapped with the quantum layer
(elite opposition plus boundary-directed mutation).

Positions are continuous vectors of length k bounded per dimension by
[0, pool_size - 1]; decoding rounds each coordinate to a pool rank and
repairs duplicates. Five assembled algorithms: DQSSA, DQPSO, DQBA (quantum
layer on) and DPSO, DBA (base engines only).

Each run drives two independent RNG streams, one for the base engine and one
for the quantum layer, so disabling the layer reproduces the base algorithm
draw-for-draw under the same seed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .community import CandidatePool
from .graph import Graph
from .objective import SeedSet, lie

ALGORITHMS = ("DQSSA", "DQPSO", "DQBA", "DPSO", "DBA")
_BASE_ENGINE = {"DQSSA": "ssa", "DQPSO": "pso", "DQBA": "ba", "DPSO": "pso", "DBA": "ba"}


@dataclass(frozen=True)
class SwarmConfig:
    algorithm: str = "DQSSA"
    population_size: int = 20
    max_iterations: int = 100
    k: int = 2
    sigma: float = 0.1
    rng_seed: int = 0
    # particle swarm coefficients
    inertia: float = 0.7
    cognitive: float = 1.5
    social: float = 1.5
    # bat coefficients
    freq_min: float = 0.0
    freq_max: float = 2.0
    loudness: float = 0.5
    pulse_rate: float = 0.5
    # quantum layer (sigma = 0 degenerates the mutation to the identity,
    # which together with enable_opposition=False reduces a DQ* algorithm
    # to its base engine)
    elite_fraction: float = 0.25
    mutation_fraction: float = 0.2
    enable_opposition: bool = True
    opposition_form: str = "span"  # "span": mu*(ub-lb)-x, "sum": mu*(ub+lb)-x

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.sigma <= 1.0:
            raise ValueError("sigma must be in [0, 1]")
        if self.opposition_form not in ("span", "sum"):
            raise ValueError(f"unknown opposition_form {self.opposition_form!r}")

    @property
    def quantum(self) -> bool:
        return self.algorithm.startswith("DQ")

    @property
    def base_engine(self) -> str:
        return _BASE_ENGINE[self.algorithm]


@dataclass(frozen=True)
class Trace:
    """Per-iteration incumbent fitness (non-decreasing) and wall-clock."""

    best_fitness: tuple[float, ...]
    elapsed_ms: tuple[float, ...]


def write_trace(trace: Trace, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write("iteration,best_lie,elapsed_ms\n")
        for i, (f, ms) in enumerate(zip(trace.best_fitness, trace.elapsed_ms)):
            fh.write(f"{i},{f!r},{ms!r}\n")


def clamp(x: np.ndarray, lb: np.ndarray, ub: np.ndarray) -> np.ndarray:
    return np.clip(x, lb, ub)


def reverse_learning(
    x: np.ndarray, mu: float, lb: np.ndarray, ub: np.ndarray, form: str = "span"
) -> np.ndarray:
    """Opposite point of x within the bounds, clamped back into them."""
    if form == "span":
        opp = mu * (ub - lb) - x
    else:
        opp = mu * (ub + lb) - x
    return clamp(opp, lb, ub)


def quantum_mutation(
    x: np.ndarray,
    sigma: float,
    lb: np.ndarray,
    ub: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Push each coordinate toward the upper or lower bound (coin flip per dim)."""
    toward_upper = rng.random(x.shape) < 0.5
    out = np.where(toward_upper, x + sigma * (ub - x), x + sigma * (x - lb))
    return clamp(out, lb, ub)


def discretize(x: np.ndarray, pool: CandidatePool) -> SeedSet:
    """Round coordinates to pool ranks; repair duplicates with the highest
    ranked unused candidates, in dimension order."""
    k = len(x)
    if pool.pool_size < k:
        raise ValueError(f"pool size {pool.pool_size} below seed-set size {k}")
    idx = np.clip(np.rint(x).astype(np.int64), 0, pool.pool_size - 1)
    chosen: list[int] = []
    used: set[int] = set()
    for i in idx:
        node = pool.ranked[i]
        if node in used:
            node = next(c for c in pool.ranked if c not in used)
        chosen.append(node)
        used.add(node)
    return SeedSet(chosen)


def ssa_update(
    positions: np.ndarray,
    food: np.ndarray,
    t: int,
    max_t: int,
    lb: np.ndarray,
    ub: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Salp chain: leaders sample around the food source with a shrinking
    radius, followers take the midpoint with their predecessor."""
    n, dim = positions.shape
    out = positions.copy()
    c1 = 2.0 * math.exp(-((4.0 * t / max_t) ** 2))
    leaders = math.ceil(n / 2)
    for i in range(leaders):
        c2 = rng.random(dim)
        c3 = rng.random(dim)
        step = c1 * ((ub - lb) * c2 + lb)
        out[i] = np.where(c3 < 0.5, food + step, food - step)
    for i in range(leaders, n):
        out[i] = (out[i] + out[i - 1]) / 2.0
    return clamp(out, lb, ub)


def pso_update(
    positions: np.ndarray,
    velocities: np.ndarray,
    pbest: np.ndarray,
    gbest: np.ndarray,
    config: SwarmConfig,
    lb: np.ndarray,
    ub: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    r1 = rng.random(positions.shape)
    r2 = rng.random(positions.shape)
    v = (
        config.inertia * velocities
        + config.cognitive * r1 * (pbest - positions)
        + config.social * r2 * (gbest - positions)
    )
    vmax = 0.5 * (ub - lb)
    v = np.clip(v, -vmax, vmax)
    return clamp(positions + v, lb, ub), v


def ba_update(
    positions: np.ndarray,
    velocities: np.ndarray,
    gbest: np.ndarray,
    config: SwarmConfig,
    lb: np.ndarray,
    ub: np.ndarray,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    n, dim = positions.shape
    freqs = config.freq_min + (config.freq_max - config.freq_min) * rng.random(n)
    v = velocities + (positions - gbest) * freqs[:, None]
    vmax = 0.5 * (ub - lb)
    v = np.clip(v, -vmax, vmax)
    out = positions + v
    # Local random walk around the incumbent for bats whose pulse stays quiet.
    walk = rng.random(n) > config.pulse_rate
    for i in np.nonzero(walk)[0]:
        out[i] = gbest + config.loudness * rng.uniform(-1.0, 1.0, dim)
    return clamp(out, lb, ub), v


@dataclass
class SwarmState:
    """Mutable optimizer state; food_* is the incumbent best ever observed."""

    positions: np.ndarray
    fitness: np.ndarray
    food_position: np.ndarray
    food_fitness: float
    food_seeds: SeedSet
    iteration: int = 0
    velocities: np.ndarray | None = None
    pbest_positions: np.ndarray | None = None
    pbest_fitness: np.ndarray | None = None


class _Evaluator:
    def __init__(self, g: Graph, pool: CandidatePool, p: float):
        self.g = g
        self.pool = pool
        self.p = p
        self.calls = 0

    def __call__(self, x: np.ndarray) -> tuple[float, SeedSet]:
        seeds = discretize(x, self.pool)
        self.calls += 1
        return lie(self.g, seeds, self.p), seeds


def _elite_opposition(
    state: SwarmState,
    config: SwarmConfig,
    evaluate: _Evaluator,
    lb: np.ndarray,
    ub: np.ndarray,
    rng: np.random.Generator,
) -> None:
    """Top individuals face their opposite point; each keeps the better one."""
    n = len(state.fitness)
    elite_count = math.ceil(n * config.elite_fraction)
    elite = np.argsort(-state.fitness, kind="stable")[:elite_count]
    for i in elite:
        mu = float(rng.random())
        opp = reverse_learning(state.positions[i], mu, lb, ub, config.opposition_form)
        f_opp, seeds = evaluate(opp)
        if f_opp > state.fitness[i]:
            state.positions[i] = opp
            state.fitness[i] = f_opp
            _track_pbest(state, i, opp, f_opp)
        _track_best(state, opp, f_opp, seeds)


def _quantum_mutation_step(
    state: SwarmState,
    config: SwarmConfig,
    evaluate: _Evaluator,
    lb: np.ndarray,
    ub: np.ndarray,
    rng: np.random.Generator,
) -> None:
    """Mutate a random subset toward the bounds; accepted unconditionally to
    keep diversity up (the incumbent still only improves)."""
    n = len(state.fitness)
    count = math.ceil(n * config.mutation_fraction)
    subset = rng.choice(n, size=count, replace=False)
    for i in subset:
        mutant = quantum_mutation(state.positions[i], config.sigma, lb, ub, rng)
        f_mut, seeds = evaluate(mutant)
        state.positions[i] = mutant
        state.fitness[i] = f_mut
        _track_pbest(state, i, mutant, f_mut)
        _track_best(state, mutant, f_mut, seeds)


def _track_pbest(state: SwarmState, i: int, x: np.ndarray, f: float) -> None:
    if state.pbest_fitness is not None and f > state.pbest_fitness[i]:
        state.pbest_fitness[i] = f
        state.pbest_positions[i] = x.copy()


def _track_best(state: SwarmState, x: np.ndarray, f: float, seeds: SeedSet) -> None:
    if f > state.food_fitness:
        state.food_fitness = f
        state.food_position = x.copy()
        state.food_seeds = seeds


def optimize(
    g: Graph,
    pool: CandidatePool,
    config: SwarmConfig,
    p: float = 0.1,
) -> tuple[SeedSet, float, Trace]:
    """Run the configured algorithm for max_iterations; returns the best
    decoded seed set ever seen, its fitness, and the per-iteration trace.

    One iteration: base engine update, decode and evaluate the population,
    then (quantum algorithms only) elite opposition and the mutation step,
    each decoding and evaluating its candidates as it goes.
    """
    if pool.pool_size < config.k:
        raise ValueError(f"pool size {pool.pool_size} below k={config.k}")
    n, dim = config.population_size, config.k
    lb = np.zeros(dim)
    ub = np.full(dim, float(pool.pool_size - 1))

    base_rng = np.random.default_rng(
        np.random.SeedSequence(entropy=config.rng_seed, spawn_key=(0,))
    )
    quantum_rng = np.random.default_rng(
        np.random.SeedSequence(entropy=config.rng_seed, spawn_key=(1,))
    )
    evaluate = _Evaluator(g, pool, p)

    positions = lb + base_rng.random((n, dim)) * (ub - lb)
    results = [evaluate(x) for x in positions]
    fitness = np.array([r[0] for r in results])

    if config.base_engine == "ssa":
        order = np.argsort(-fitness, kind="stable")
        positions = positions[order]
        fitness = fitness[order]
        results = [results[i] for i in order]

    best = int(np.argmax(fitness))
    state = SwarmState(
        positions=positions,
        fitness=fitness,
        food_position=positions[best].copy(),
        food_fitness=float(fitness[best]),
        food_seeds=results[best][1],
    )
    if config.base_engine in ("pso", "ba"):
        state.velocities = np.zeros((n, dim))
    if config.base_engine == "pso":
        state.pbest_positions = positions.copy()
        state.pbest_fitness = fitness.copy()

    best_curve: list[float] = []
    elapsed: list[float] = []
    for t in range(1, config.max_iterations + 1):
        tic = time.perf_counter()
        state.iteration = t

        if config.base_engine == "ssa":
            state.positions = ssa_update(
                state.positions, state.food_position, t, config.max_iterations, lb, ub, base_rng
            )
        elif config.base_engine == "pso":
            state.positions, state.velocities = pso_update(
                state.positions,
                state.velocities,
                state.pbest_positions,
                state.food_position,
                config,
                lb,
                ub,
                base_rng,
            )
        else:
            state.positions, state.velocities = ba_update(
                state.positions, state.velocities, state.food_position, config, lb, ub, base_rng
            )

        for i in range(n):
            f, seeds = evaluate(state.positions[i])
            state.fitness[i] = f
            _track_pbest(state, i, state.positions[i], f)
            _track_best(state, state.positions[i], f, seeds)

        if config.quantum:
            if config.enable_opposition:
                _elite_opposition(state, config, evaluate, lb, ub, quantum_rng)
            _quantum_mutation_step(state, config, evaluate, lb, ub, quantum_rng)

        best_curve.append(state.food_fitness)
        elapsed.append((time.perf_counter() - tic) * 1000.0)

    trace = Trace(best_fitness=tuple(best_curve), elapsed_ms=tuple(elapsed))
    return state.food_seeds, state.food_fitness, trace
