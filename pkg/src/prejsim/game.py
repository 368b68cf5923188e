"""Continuous Prisoner's Dilemma payoff: bilinear blend of the discrete game."""

from __future__ import annotations

from .params import PayoffParams


def payoff(c0: float, c1: float, params: PayoffParams) -> tuple[float, float]:
    """Payoffs for two agents cooperating at levels c0 and c1 in [0, 1].

    Each agent's payoff interpolates the four discrete PD outcomes with
    weights c*c, c*(1-c), (1-c)*c, (1-c)*(1-c); at the corners it equals the
    discrete payoff matrix exactly.
    """
    if not (0.0 <= c0 <= 1.0 and 0.0 <= c1 <= 1.0):
        raise ValueError(f"cooperation levels must lie in [0, 1], got ({c0}, {c1})")
    return payoff_one(c0, c1, params), payoff_one(c1, c0, params)


def payoff_one(c_own: float, c_other: float, params: PayoffParams) -> float:
    """One side of the payoff; no input validation (hot path)."""
    return (
        c_own * c_other * params.reward
        + c_own * (1.0 - c_other) * params.sucker
        + (1.0 - c_own) * c_other * params.temptation
        + (1.0 - c_own) * (1.0 - c_other) * params.punishment
    )
