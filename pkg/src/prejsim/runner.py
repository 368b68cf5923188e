"""Run driver: full runs, repetitions, and the recorded time series.

A run is deterministic in (config, seed): the seed feeds one PCG64 generator
that first draws the society's initial prejudice values, then the whole pair
stream. Repetition seeds are derived by hashing (base_seed, repetition index)
through numpy's SeedSequence, so any repetition can be reproduced alone.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import engine
from .errors import ConfigurationError
from .model import SocietyConfig, new_society
from .params import AgentKind, ModelParams

N_KINDS = len(AgentKind)


def derive_seed(base_seed: int, index: int) -> int:
    """Independent child seed for repetition `index` of a base seed."""
    return int(np.random.SeedSequence([base_seed, index]).generate_state(1)[0])


def sample_pairs(rng: np.random.Generator, n: int, count: int):
    """Pre-sample `count` uniform distinct pairs (resample collisions)."""
    if n < 2:
        raise ConfigurationError("need at least 2 agents to interact")
    a = rng.integers(0, n, size=count)
    b = rng.integers(0, n, size=count)
    bad = a == b
    while bad.any():
        b[bad] = rng.integers(0, n, size=int(bad.sum()))
        bad = a == b
    return np.ascontiguousarray(a, dtype=np.int64), np.ascontiguousarray(
        b, dtype=np.int64
    )


def snapshot_schedule(iterations: int, stride: int) -> np.ndarray:
    """Snapshot points: t = 0, every stride steps, and t = iterations."""
    if iterations < 0 or stride < 1:
        raise ConfigurationError("iterations must be >= 0 and stride >= 1")
    k = iterations // stride
    pts = [m * stride for m in range(k)]
    pts.append(iterations)
    if pts[0] != 0:
        pts.insert(0, 0)
    return np.array(pts, dtype=np.int64)


def class_counts(config: SocietyConfig):
    """Static (group, kind) agent counts and prejudice-entry counts."""
    agents = np.zeros((config.n_groups, N_KINDS), dtype=np.int64)
    entries = np.zeros((config.n_groups, N_KINDS), dtype=np.int64)
    for a in range(config.n_agents):
        g = config.group_of[a]
        k = int(config.kinds[a])
        agents[g, k] += 1
        entries[g, k] += len(config.targets[a])
    return agents, entries


class SeriesAccess:
    """Accessors shared by single-run and averaged results."""

    @property
    def n_agents(self) -> int:
        return int(self.agent_count.sum())

    def society_prosperity(self) -> np.ndarray:
        """Society-mean cumulative payoff per snapshot."""
        return self.prosperity_sum.sum(axis=(1, 2)) / self.n_agents

    def group_prosperity(self, group: int) -> np.ndarray:
        size = self.agent_count[group].sum()
        return self.prosperity_sum[:, group, :].sum(axis=1) / size


@dataclass
class RunResult(SeriesAccess):
    """Recorded series of one run: per-(group, kind) sums at each snapshot.

    Sums rather than means are stored so selections can be re-aggregated;
    `agent_count` and `entry_count` give the per-class denominators (entries
    count (agent, target group) prejudice slots, which is what prejudice
    means average over).
    """

    snap_iters: np.ndarray        # (S,)
    prosperity_sum: np.ndarray    # (S, G, K)
    prejudice_sum: np.ndarray     # (S, G, K)
    alignment_sum: np.ndarray     # (S, G, K)
    agent_count: np.ndarray       # (G, K)
    entry_count: np.ndarray       # (G, K)
    final_prosperity: np.ndarray  # (n,)
    group_labels: tuple[str, ...]
    params: ModelParams
    config_digest: str
    iterations: int
    stride: int
    seed: int
    engine: str
    notes: tuple[str, ...] = ()


@dataclass
class AveragedResult(SeriesAccess):
    """Element-wise mean of RunResults from repeated runs of one config."""

    snap_iters: np.ndarray
    prosperity_sum: np.ndarray
    prejudice_sum: np.ndarray
    alignment_sum: np.ndarray
    agent_count: np.ndarray
    entry_count: np.ndarray
    final_prosperity: np.ndarray
    group_labels: tuple[str, ...]
    params: ModelParams
    config_digest: str
    iterations: int
    stride: int
    seed: int                     # base seed
    engine: str
    repetitions: int = 1
    notes: tuple[str, ...] = ()


def run(config: SocietyConfig, seed: int, iterations: int = 100_000,
        stride: int = 100, engine_name: str = "auto") -> RunResult:
    """Execute one run: `iterations` sequential random interactions.

    Snapshots of the per-(group, kind) sums are taken at t = 0, every
    `stride` steps, and at t = iterations.
    """
    config.validate()
    chosen = engine.resolve_engine(engine_name)
    rng = np.random.default_rng(seed)
    society = new_society(config, rng)
    n = config.n_agents
    pair_a, pair_b = sample_pairs(rng, n, iterations)
    snap_iters = snapshot_schedule(iterations, stride)

    shape = (len(snap_iters), config.n_groups, N_KINDS)
    snap_prosperity = np.zeros(shape)
    snap_prejudice = np.zeros(shape)
    snap_alignment = np.zeros(shape)

    if chosen == "compiled":
        packed = engine.pack_state(society)
        engine.run_batch_compiled(packed, config.params, pair_a, pair_b,
                                  snap_iters, snap_prosperity, snap_prejudice,
                                  snap_alignment)
        final_prosperity = packed.prosperity
    else:
        engine.run_batch_python(society, pair_a, pair_b, snap_iters,
                                snap_prosperity, snap_prejudice,
                                snap_alignment)
        final_prosperity = np.array([a.prosperity for a in society.agents])

    agents, entries = class_counts(config)
    return RunResult(
        snap_iters=snap_iters,
        prosperity_sum=snap_prosperity,
        prejudice_sum=snap_prejudice,
        alignment_sum=snap_alignment,
        agent_count=agents,
        entry_count=entries,
        final_prosperity=final_prosperity,
        group_labels=config.group_labels,
        params=config.params,
        config_digest=config.digest(),
        iterations=iterations,
        stride=stride,
        seed=seed,
        engine=chosen,
        notes=config.notes,
    )


def run_repeated(config: SocietyConfig, base_seed: int, repetitions: int = 10,
                 iterations: int = 100_000, stride: int = 100,
                 engine_name: str = "auto") -> AveragedResult:
    """Average `repetitions` independent runs of the same config.

    Repetition k uses derive_seed(base_seed, k); results are merged in
    repetition order, so the outcome does not depend on execution order.
    """
    if repetitions < 1:
        raise ConfigurationError("repetitions must be >= 1")
    results = [
        run(config, derive_seed(base_seed, k), iterations, stride, engine_name)
        for k in range(repetitions)
    ]
    first = results[0]
    for r in results[1:]:
        if r.config_digest != first.config_digest:
            raise ConfigurationError("cannot average runs of different configs")
    return AveragedResult(
        snap_iters=first.snap_iters,
        prosperity_sum=np.mean([r.prosperity_sum for r in results], axis=0),
        prejudice_sum=np.mean([r.prejudice_sum for r in results], axis=0),
        alignment_sum=np.mean([r.alignment_sum for r in results], axis=0),
        agent_count=first.agent_count,
        entry_count=first.entry_count,
        final_prosperity=np.mean([r.final_prosperity for r in results], axis=0),
        group_labels=first.group_labels,
        params=first.params,
        config_digest=first.config_digest,
        iterations=iterations,
        stride=stride,
        seed=base_seed,
        engine=first.engine,
        repetitions=repetitions,
        notes=first.notes,
    )


def with_notes(result, extra: tuple[str, ...]):
    """Copy of a result with notes appended (used to document band misses)."""
    return replace(result, notes=result.notes + tuple(extra))
