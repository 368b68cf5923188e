"""Opinion formation: windowed means, prejudice discounts, faction aggregates.

All quantities live in [0, 1]. An opinion is the arithmetic mean of the
remembered cooperation values for an ordered pair (partial windows average
what is there; an empty history falls back to the configured default).
Prejudiced variants multiply by (1 - p) where p is the observer's prejudice
against the partner's group. Faction aggregates average over all members,
including the deciding agent itself.
"""

from __future__ import annotations

from .errors import ConfigurationError
from .model import AgentState, SocietyState


def opinion(society: SocietyState, observer: int, partner: int) -> float:
    hist = society.experience.history(observer, partner)
    if not hist:
        return society.config.params.default_opinion
    return sum(hist) / len(hist)


def effective_prejudice(agent: AgentState, partner_group: int) -> float:
    """Agent's prejudice against a group; 0 when the group is not targeted."""
    return agent.prejudice.get(partner_group, 0.0)


def prejudiced_opinion(society: SocietyState, observer: int, partner: int) -> float:
    """Opinion discounted by the observer's prejudice against the partner's group."""
    p = effective_prejudice(
        society.agents[observer], society.agents[partner].group
    )
    return (1.0 - p) * opinion(society, observer, partner)


def _faction_members(society: SocietyState, faction: int) -> list[int]:
    try:
        members = society.faction_members[faction]
    except IndexError:
        raise ConfigurationError(f"unknown faction {faction}") from None
    if not members:
        raise ConfigurationError(f"faction {faction} is empty")
    return members


def faction_opinion(society: SocietyState, faction: int, partner: int) -> float:
    """Mean of the members' plain opinions about the partner."""
    members = _faction_members(society, faction)
    total = 0.0
    for m in members:
        total += opinion(society, m, partner)
    return total / len(members)


def faction_prejudiced_opinion(
    society: SocietyState, faction: int, partner: int
) -> float:
    """Mean of the members' prejudice-discounted opinions about the partner.

    Each member applies its own prejudice against the partner's group, which
    is 0 for members that do not target that group.
    """
    members = _faction_members(society, faction)
    partner_group = society.agents[partner].group
    total = 0.0
    for m in members:
        pm = effective_prejudice(society.agents[m], partner_group)
        total += (1.0 - pm) * opinion(society, m, partner)
    return total / len(members)
