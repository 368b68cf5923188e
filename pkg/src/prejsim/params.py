"""Model parameter sets: payoff constants, update rules, memory settings.

Defaults reproduce the standard experiment setup (1000 agents in factions of
20, memory window 10, payoff set 3/5/1/0, update steps 0.005).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum

from .errors import ConfigurationError


class AgentKind(IntEnum):
    UNPREJUDICED = 0
    PREJUDICED = 1
    RENEGADE = 2

    @property
    def label(self) -> str:
        return self.name.lower()


KIND_LABELS = {k.label: k for k in AgentKind}


class MemorySemantics(str, Enum):
    """What an experience entry records about an interaction.

    PARTNER: the partner's exhibited cooperation (default; opinions track how
    others behaved toward the observer).
    OWN: the observer's own cooperation level (opinions echo the observer's
    past behaviour toward that partner).
    """

    PARTNER = "partner"
    OWN = "own"


@dataclass(frozen=True)
class PayoffParams:
    """Discrete PD payoffs interpolated by the continuous game.

    reward: both cooperate. temptation: defect against a cooperator.
    punishment: both defect. sucker: cooperate against a defector.
    """

    reward: float = 3.0
    temptation: float = 5.0
    punishment: float = 1.0
    sucker: float = 0.0

    def __post_init__(self):
        if not (2 * self.reward > self.temptation + self.sucker):
            raise ConfigurationError(
                f"payoffs require 2*reward > temptation + sucker, got {self}"
            )
        if not (self.temptation > self.reward > self.punishment > self.sucker):
            raise ConfigurationError(
                f"payoffs require temptation > reward > punishment > sucker, got {self}"
            )


@dataclass(frozen=True)
class UpdateParams:
    """Thresholds and step sizes for prejudice and faction-alignment updates.

    A payoff above reinforce_threshold raises prejudice by prejudice_step; one
    below weaken_threshold lowers it. Alignment moves by alignment_step when
    the gap between own and faction prejudice falls below (rises above) a
    band endpoint; both band endpoints are rescaled from (1 - alignment)
    before every comparison.
    """

    reinforce_threshold: float = 2.0
    weaken_threshold: float = 1.5
    prejudice_step: float = 0.005
    alignment_step: float = 0.005
    agree_band: tuple[float, float] = (0.01, 0.08)
    disagree_band: tuple[float, float] = (0.08, 0.2)

    def __post_init__(self):
        if not self.reinforce_threshold > self.weaken_threshold:
            raise ConfigurationError(
                "reinforce_threshold must exceed weaken_threshold"
            )
        if self.prejudice_step <= 0 or self.alignment_step <= 0:
            raise ConfigurationError("update steps must be positive")
        lo1, hi1 = self.agree_band
        lo2, hi2 = self.disagree_band
        if not (lo1 < hi1 <= lo2 < hi2):
            raise ConfigurationError(
                "bands must be ordered: agree_band below disagree_band"
            )


@dataclass(frozen=True)
class ModelParams:
    """Everything that parameterizes a society besides its population layout."""

    faction_size: int = 20
    memory_window: int = 10
    payoffs: PayoffParams = field(default_factory=PayoffParams)
    update: UpdateParams = field(default_factory=UpdateParams)
    init_prejudice_mean: float = 0.5
    init_prejudice_std: float = 0.2
    initial_alignment: float = 0.5
    default_opinion: float = 0.5
    memory_semantics: MemorySemantics = MemorySemantics.PARTNER

    def __post_init__(self):
        if self.faction_size < 1:
            raise ConfigurationError("faction_size must be >= 1")
        if self.memory_window < 1:
            raise ConfigurationError("memory_window must be >= 1")
        for name in ("initial_alignment", "default_opinion"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"{name} must lie in [0, 1], got {v}")

    def to_dict(self) -> dict:
        return {
            "faction_size": self.faction_size,
            "memory_window": self.memory_window,
            "reward": self.payoffs.reward,
            "temptation": self.payoffs.temptation,
            "punishment": self.payoffs.punishment,
            "sucker": self.payoffs.sucker,
            "reinforce_threshold": self.update.reinforce_threshold,
            "weaken_threshold": self.update.weaken_threshold,
            "prejudice_step": self.update.prejudice_step,
            "alignment_step": self.update.alignment_step,
            "agree_band": list(self.update.agree_band),
            "disagree_band": list(self.update.disagree_band),
            "init_prejudice_mean": self.init_prejudice_mean,
            "init_prejudice_std": self.init_prejudice_std,
            "initial_alignment": self.initial_alignment,
            "default_opinion": self.default_opinion,
            "memory_semantics": self.memory_semantics.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        d = dict(d)
        payoffs = PayoffParams(
            reward=d.pop("reward", 3.0),
            temptation=d.pop("temptation", 5.0),
            punishment=d.pop("punishment", 1.0),
            sucker=d.pop("sucker", 0.0),
        )
        update = UpdateParams(
            reinforce_threshold=d.pop("reinforce_threshold", 2.0),
            weaken_threshold=d.pop("weaken_threshold", 1.5),
            prejudice_step=d.pop("prejudice_step", 0.005),
            alignment_step=d.pop("alignment_step", 0.005),
            agree_band=tuple(d.pop("agree_band", (0.01, 0.08))),
            disagree_band=tuple(d.pop("disagree_band", (0.08, 0.2))),
        )
        semantics = MemorySemantics(d.pop("memory_semantics", "partner"))
        known = {
            k: d[k]
            for k in (
                "faction_size",
                "memory_window",
                "init_prejudice_mean",
                "init_prejudice_std",
                "initial_alignment",
                "default_opinion",
            )
            if k in d
        }
        unknown = set(d) - set(known)
        if unknown:
            raise ConfigurationError(f"unknown model parameters: {sorted(unknown)}")
        return cls(payoffs=payoffs, update=update, memory_semantics=semantics, **known)

    def with_semantics(self, semantics: MemorySemantics) -> "ModelParams":
        return replace(self, memory_semantics=semantics)
