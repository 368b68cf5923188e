"""Aggregate statistics over recorded runs: ratios, prejudice series, slopes."""

from __future__ import annotations

import numpy as np

from .errors import UsageError
from .params import KIND_LABELS, AgentKind


def _group_index(result, label: str) -> int:
    try:
        return result.group_labels.index(label)
    except ValueError:
        raise UsageError(
            f"unknown group {label!r}; have {', '.join(result.group_labels)}"
        ) from None


def payoff_ratio_series(result, numerator_group: str,
                        denominator_group: str) -> np.ndarray:
    """Per-snapshot ratio of two groups' mean cumulative payoffs.

    The t = 0 snapshot is emitted as 1 by convention (both groups start at
    zero prosperity).
    """
    num = result.group_prosperity(_group_index(result, numerator_group))
    den = result.group_prosperity(_group_index(result, denominator_group))
    ratio = np.empty_like(num)
    ratio[0] = 1.0
    ratio[1:] = num[1:] / den[1:]
    return ratio


def _selection_mask(result, selector) -> np.ndarray:
    """Boolean (G, K) mask for a selector.

    Selectors: 'group:<label>', 'kind:<unprejudiced|prejudiced|renegade>',
    or 'renegades' (alias for kind:renegade).
    """
    n_groups, n_kinds = result.agent_count.shape
    mask = np.zeros((n_groups, n_kinds), dtype=bool)
    if selector == "renegades":
        mask[:, int(AgentKind.RENEGADE)] = True
        return mask
    if isinstance(selector, str) and ":" in selector:
        domain, _, value = selector.partition(":")
        if domain == "group":
            mask[_group_index(result, value), :] = True
            return mask
        if domain == "kind":
            if value not in KIND_LABELS:
                raise UsageError(f"unknown agent kind {value!r}")
            mask[:, int(KIND_LABELS[value])] = True
            return mask
    raise UsageError(
        f"bad selector {selector!r}; use 'group:<label>', 'kind:<kind>' "
        "or 'renegades'"
    )


def prejudice_series(result, selector) -> np.ndarray:
    """Per-snapshot mean prejudice over all target entries in a selection."""
    mask = _selection_mask(result, selector)
    entries = int(result.entry_count[mask].sum())
    if entries == 0:
        raise UsageError(
            f"selection {selector!r} holds no prejudice entries"
        )
    sums = result.prejudice_sum[:, mask].sum(axis=1)
    return sums / entries


def alignment_series(result, selector) -> np.ndarray:
    """Per-snapshot mean faction alignment over the selected agents."""
    mask = _selection_mask(result, selector)
    count = int(result.agent_count[mask].sum())
    if count == 0:
        raise UsageError(f"selection {selector!r} matches no agents")
    return result.alignment_sum[:, mask].sum(axis=1) / count


def least_squares_slope(points) -> float:
    """Ordinary least-squares slope of (x, y) points."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("need at least 2 points")
    xs = np.array([p[0] for p in pts], dtype=float)
    ys = np.array([p[1] for p in pts], dtype=float)
    dx = xs - xs.mean()
    denom = float((dx * dx).sum())
    if denom == 0.0:
        raise ValueError("x values are degenerate (no spread)")
    return float((dx * (ys - ys.mean())).sum() / denom)
