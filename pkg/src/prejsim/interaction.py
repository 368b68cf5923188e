"""One CPD interaction end to end: decide, pay, remember, update.

This is the reference engine. The compiled kernel in _kernel.pyx replays the
same arithmetic on packed arrays; keep every expression here textually in
sync with it, including operand order, so the two engines stay bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .game import payoff_one
from .model import SocietyState
from .opinions import (
    effective_prejudice,
    faction_opinion,
    faction_prejudiced_opinion,
    opinion,
)
from .params import MemorySemantics, UpdateParams


@dataclass(frozen=True)
class InteractionRecord:
    """What one step did: who met, how they played, what changed."""

    t: int
    agents: tuple[int, int]
    cooperation: tuple[float, float]
    payoffs: tuple[float, float]
    prejudice_delta: tuple[float, float]
    alignment_delta: tuple[float, float]


def cooperation_level(society: SocietyState, agent: int, partner: int) -> float:
    """Blend of own and faction opinion, prejudice-discounted for targets.

    When the partner's group is in the agent's target set, both the personal
    and the faction term use prejudice-discounted opinions; otherwise both
    are plain. The agent's faction alignment weighs the faction term.
    """
    a = society.agents[agent]
    partner_group = society.agents[partner].group
    if partner_group in a.prejudice:
        own = (1.0 - a.prejudice[partner_group]) * opinion(society, agent, partner)
        agg = faction_prejudiced_opinion(society, a.faction, partner)
    else:
        own = opinion(society, agent, partner)
        agg = faction_opinion(society, a.faction, partner)
    return a.faction_alignment * agg + (1.0 - a.faction_alignment) * own


def update_prejudice(current: float, received_payoff: float, params: UpdateParams) -> float:
    """Next prejudice value after an interaction with a targeted group.

    A rewarding payoff (strictly above the reinforce threshold) raises the
    value by one step; a poor one (strictly below the weaken threshold)
    lowers it. Payoffs between the thresholds leave it unchanged. Clamped to
    [0, 1].
    """
    if received_payoff > params.reinforce_threshold:
        current = current + params.prejudice_step
    elif received_payoff < params.weaken_threshold:
        current = current - params.prejudice_step
    if current > 1.0:
        current = 1.0
    if current < 0.0:
        current = 0.0
    return current


def beta_thresholds(alignment: float, params: UpdateParams) -> tuple[float, float]:
    """Agreement/disagreement cutoffs, rescaled from the agent's (1 - f).

    Full faction alignment maps to the low ends of both bands, none to the
    high ends; the agreement cutoff always stays below the disagreement one.
    """
    lo1, hi1 = params.agree_band
    lo2, hi2 = params.disagree_band
    b1 = lo1 + (1.0 - alignment) * (hi1 - lo1)
    b2 = lo2 + (1.0 - alignment) * (hi2 - lo2)
    return b1, b2


def faction_prejudice(society: SocietyState, faction: int, target_group: int) -> float:
    """Mean prejudice of a faction against a group (0 for non-targeting members)."""
    members = society.faction_members[faction]
    if not members:
        raise ConfigurationError(f"faction {faction} is empty")
    total = 0.0
    for m in members:
        total += effective_prejudice(society.agents[m], target_group)
    return total / len(members)


def update_faction_alignment(
    current: float, faction_prej: float, own_prejudice: float, params: UpdateParams
) -> float:
    """Next faction alignment given the gap to the faction's mean prejudice.

    A gap strictly inside the agreement cutoff raises alignment by one step;
    one strictly outside the disagreement cutoff lowers it. Cutoffs come from
    the current alignment. Clamped to [0, 1].
    """
    b1, b2 = beta_thresholds(current, params)
    gap = abs(faction_prej - own_prejudice)
    if gap < b1:
        current = current + params.alignment_step
    elif gap > b2:
        current = current - params.alignment_step
    if current > 1.0:
        current = 1.0
    if current < 0.0:
        current = 0.0
    return current


def sample_pair(rng: np.random.Generator, n: int) -> tuple[int, int]:
    """Two distinct agent ids, uniform; second resampled until distinct."""
    i = int(rng.integers(0, n))
    j = int(rng.integers(0, n))
    while j == i:
        j = int(rng.integers(0, n))
    return i, j


def step_pair(society: SocietyState, i: int, j: int) -> InteractionRecord:
    """Run one interaction between agents i and j, mutating the society.

    Both cooperation levels come from the pre-step snapshot. Payoffs add to
    prosperity, both sides record an experience entry, then participants for
    whom the partner's group is a target update prejudice (both first) and
    faction alignment (both second, seeing post-update prejudice).
    """
    cfg = society.config
    params = cfg.params
    ai, aj = society.agents[i], society.agents[j]
    gi, gj = ai.group, aj.group

    ci = cooperation_level(society, i, j)
    cj = cooperation_level(society, j, i)
    ri = payoff_one(ci, cj, params.payoffs)
    rj = payoff_one(cj, ci, params.payoffs)
    ai.prosperity += ri
    aj.prosperity += rj

    if params.memory_semantics is MemorySemantics.PARTNER:
        society.experience.record(i, j, cj)
        society.experience.record(j, i, ci)
    else:
        society.experience.record(i, j, ci)
        society.experience.record(j, i, cj)

    dp_i = dp_j = 0.0
    df_i = df_j = 0.0
    i_targets = gj in ai.prejudice
    j_targets = gi in aj.prejudice
    if i_targets:
        new_p = update_prejudice(ai.prejudice[gj], ri, params.update)
        dp_i = new_p - ai.prejudice[gj]
        ai.prejudice[gj] = new_p
    if j_targets:
        new_p = update_prejudice(aj.prejudice[gi], rj, params.update)
        dp_j = new_p - aj.prejudice[gi]
        aj.prejudice[gi] = new_p
    if i_targets:
        fp = faction_prejudice(society, ai.faction, gj)
        new_f = update_faction_alignment(
            ai.faction_alignment, fp, ai.prejudice[gj], params.update
        )
        df_i = new_f - ai.faction_alignment
        ai.faction_alignment = new_f
    if j_targets:
        fp = faction_prejudice(society, aj.faction, gi)
        new_f = update_faction_alignment(
            aj.faction_alignment, fp, aj.prejudice[gi], params.update
        )
        df_j = new_f - aj.faction_alignment
        aj.faction_alignment = new_f

    society.t += 1
    return InteractionRecord(
        t=society.t,
        agents=(i, j),
        cooperation=(ci, cj),
        payoffs=(ri, rj),
        prejudice_delta=(dp_i, dp_j),
        alignment_delta=(df_i, df_j),
    )


def step(society: SocietyState, rng: np.random.Generator) -> InteractionRecord:
    """Sample a random distinct pair and run one interaction."""
    n = len(society.agents)
    if n < 2:
        raise ConfigurationError("need at least 2 agents to interact")
    i, j = sample_pair(rng, n)
    return step_pair(society, i, j)
