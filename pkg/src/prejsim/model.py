"""Domain types: agents, groups, factions, experience memory, society state.

A society is a fixed partition of agents into groups, each group further
partitioned into equal-size factions. Agents carry a kind (unprejudiced,
prejudiced, renegade), a prejudice value per target group, a faction
alignment, and a cumulative payoff called prosperity. Interaction memory
lives in a shared ExperienceStore keyed by ordered (observer, partner) pairs.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, UsageError
from .params import AgentKind, ModelParams


@dataclass
class AgentState:
    id: int
    group: int
    faction: int
    kind: AgentKind
    prejudice: dict[int, float]      # target group -> value in [0, 1]
    faction_alignment: float
    prosperity: float = 0.0


class ExperienceStore:
    """Bounded FIFO of observed cooperation values per ordered agent pair.

    Histories are created lazily, only for pairs that actually interacted,
    and hold at most `window` entries (oldest evicted first).
    """

    def __init__(self, window: int):
        if window < 1:
            raise ConfigurationError("memory window must be >= 1")
        self.window = window
        self._hist: dict[tuple[int, int], deque[float]] = {}

    def record(self, observer: int, partner: int, coop: float) -> None:
        key = (observer, partner)
        dq = self._hist.get(key)
        if dq is None:
            dq = deque(maxlen=self.window)
            self._hist[key] = dq
        dq.append(coop)

    def recall(self, observer: int, partner: int) -> list[float]:
        """Stored values for the pair, oldest first (empty if never met)."""
        return list(self._hist.get((observer, partner), ()))

    def history(self, observer: int, partner: int):
        """Internal view of a pair's history; do not mutate."""
        return self._hist.get((observer, partner), ())

    def pair_count(self) -> int:
        return len(self._hist)

    def pairs(self):
        return self._hist.keys()


@dataclass(frozen=True)
class SocietyConfig:
    """Immutable description of a society: population layout plus parameters.

    Agents are identified by index 0..n-1; groups and factions by index, with
    group labels kept for reporting. `targets[i]` is the sorted tuple of
    group indices agent i discounts; it is empty for unprejudiced agents and
    exactly (own group,) for renegades.
    """

    group_labels: tuple[str, ...]
    group_of: tuple[int, ...]
    faction_of: tuple[int, ...]
    kinds: tuple[AgentKind, ...]
    targets: tuple[tuple[int, ...], ...]
    params: ModelParams = field(default_factory=ModelParams)
    notes: tuple[str, ...] = ()

    @property
    def n_agents(self) -> int:
        return len(self.group_of)

    @property
    def n_groups(self) -> int:
        return len(self.group_labels)

    @property
    def n_factions(self) -> int:
        return max(self.faction_of) + 1 if self.faction_of else 0

    def group_sizes(self) -> list[int]:
        sizes = [0] * self.n_groups
        for g in self.group_of:
            sizes[g] += 1
        return sizes

    def faction_members(self) -> list[list[int]]:
        members: list[list[int]] = [[] for _ in range(self.n_factions)]
        for a, f in enumerate(self.faction_of):
            members[f].append(a)
        return members

    def group_index(self, label: str) -> int:
        try:
            return self.group_labels.index(label)
        except ValueError:
            raise UsageError(f"unknown group {label!r}") from None

    def validate(self) -> None:
        n = self.n_agents
        if n == 0:
            raise ConfigurationError("society has no agents")
        if not (len(self.faction_of) == len(self.kinds) == len(self.targets) == n):
            raise ConfigurationError("per-agent field lengths disagree")
        if len(set(self.group_labels)) != len(self.group_labels):
            raise ConfigurationError("duplicate group labels")
        for a, g in enumerate(self.group_of):
            if not 0 <= g < self.n_groups:
                raise ConfigurationError(f"agent {a} assigned to unknown group {g}")

        # Factions: contiguous ids, uniform size, each wholly inside one group.
        members = self.faction_members()
        for fid, mem in enumerate(members):
            if not mem:
                raise ConfigurationError(f"faction {fid} is empty")
            if len(mem) != self.params.faction_size:
                raise ConfigurationError(
                    f"faction {fid} has {len(mem)} members, expected "
                    f"{self.params.faction_size}"
                )
            groups = {self.group_of[a] for a in mem}
            if len(groups) != 1:
                labels = sorted(self.group_labels[g] for g in groups)
                raise ConfigurationError(
                    f"faction {fid} spans groups {', '.join(labels)}"
                )

        for a in range(n):
            kind = self.kinds[a]
            tset = self.targets[a]
            if len(set(tset)) != len(tset) or list(tset) != sorted(tset):
                raise ConfigurationError(f"agent {a} target set not sorted/unique")
            for g in tset:
                if not 0 <= g < self.n_groups:
                    raise ConfigurationError(f"agent {a} targets unknown group {g}")
            if kind == AgentKind.UNPREJUDICED and tset:
                raise ConfigurationError(
                    f"unprejudiced agent {a} has a nonempty target set"
                )
            if kind == AgentKind.RENEGADE and tset != (self.group_of[a],):
                raise ConfigurationError(
                    f"renegade agent {a} must target exactly its own group"
                )

    def digest(self) -> str:
        """Stable content hash; identifies a config across runs."""
        payload = {
            "group_labels": list(self.group_labels),
            "group_of": list(self.group_of),
            "faction_of": list(self.faction_of),
            "kinds": [int(k) for k in self.kinds],
            "targets": [list(t) for t in self.targets],
            "params": self.params.to_dict(),
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class SocietyState:
    """Mutable run state: one owner at a time, never mutated concurrently."""

    config: SocietyConfig
    agents: list[AgentState]
    experience: ExperienceStore
    t: int = 0

    def __post_init__(self):
        # Members listed in ascending agent id; aggregation order depends on it.
        self.faction_members: list[list[int]] = self.config.faction_members()


def new_society(config: SocietyConfig, rng: np.random.Generator) -> SocietyState:
    """Build the initial state for a configured society.

    Prejudice values are drawn per (agent, target group) from a Gaussian with
    the configured mean/std, clamped to [0, 1]; draws happen in agent-id then
    sorted-target order so a given (config, seed) always yields the same
    state. Faction alignment starts at the configured neutral value.
    """
    config.validate()
    p = config.params
    agents = []
    for a in range(config.n_agents):
        prejudice = {}
        for g in config.targets[a]:
            v = rng.normal(p.init_prejudice_mean, p.init_prejudice_std)
            prejudice[g] = min(1.0, max(0.0, v))
        agents.append(
            AgentState(
                id=a,
                group=config.group_of[a],
                faction=config.faction_of[a],
                kind=config.kinds[a],
                prejudice=prejudice,
                faction_alignment=p.initial_alignment,
            )
        )
    return SocietyState(
        config=config,
        agents=agents,
        experience=ExperienceStore(p.memory_window),
    )
