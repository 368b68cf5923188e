"""Batch execution engines: compiled kernel with pure-Python fallback.

The compiled extension is optional; at import time we pick it up if present
and fall back to stepping the reference implementation otherwise. Both
engines consume the same pre-sampled pair stream and produce bit-identical
snapshots and final state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .interaction import step_pair
from .model import SocietyState
from .params import MemorySemantics

try:
    from . import _kernel

    HAS_KERNEL = True
except ImportError:
    _kernel = None
    HAS_KERNEL = False


def resolve_engine(engine: str) -> str:
    """Map an engine request ('auto', 'compiled', 'python') to a concrete one."""
    if engine == "auto":
        return "compiled" if HAS_KERNEL else "python"
    if engine == "compiled":
        if not HAS_KERNEL:
            raise UsageError("compiled kernel not available; rebuild the extension")
        return "compiled"
    if engine == "python":
        return "python"
    raise UsageError(f"unknown engine {engine!r}")


@dataclass
class PackedState:
    """Array view of a society for the compiled kernel."""

    group_of: np.ndarray       # int32 (n,)
    kind_of: np.ndarray        # int32 (n,)
    faction_of: np.ndarray     # int32 (n,)
    falign: np.ndarray         # float64 (n,)
    prosperity: np.ndarray     # float64 (n,)
    prejudice: np.ndarray      # float64 (n, G)
    targets: np.ndarray        # uint8 (n, G)
    faction_members: np.ndarray  # int32 (n,) grouped by faction
    faction_start: np.ndarray    # int32 (F+1,)
    # Experience ring buffers, indexed [partner, observer] (the kernel's
    # faction loops then read contiguous rows).
    hist: np.ndarray           # float64 (n, n, window)
    head: np.ndarray           # int32 (n, n)
    cnt: np.ndarray            # int32 (n, n)


def pack_state(society: SocietyState) -> PackedState:
    cfg = society.config
    n = cfg.n_agents
    n_groups = cfg.n_groups
    window = cfg.params.memory_window

    prejudice = np.zeros((n, n_groups))
    targets = np.zeros((n, n_groups), dtype=np.uint8)
    falign = np.empty(n)
    prosperity = np.empty(n)
    for a in society.agents:
        falign[a.id] = a.faction_alignment
        prosperity[a.id] = a.prosperity
        for g, v in a.prejudice.items():
            prejudice[a.id, g] = v
            targets[a.id, g] = 1

    members_flat = []
    starts = [0]
    for members in society.faction_members:
        members_flat.extend(members)
        starts.append(len(members_flat))

    hist = np.zeros((n, n, window))
    head = np.zeros((n, n), dtype=np.int32)
    cnt = np.zeros((n, n), dtype=np.int32)
    for (i, j), dq in society.experience._hist.items():
        vals = list(dq)
        hist[j, i, : len(vals)] = vals
        cnt[j, i] = len(vals)

    return PackedState(
        group_of=np.array(cfg.group_of, dtype=np.int32),
        kind_of=np.array([int(k) for k in cfg.kinds], dtype=np.int32),
        faction_of=np.array(cfg.faction_of, dtype=np.int32),
        falign=falign,
        prosperity=prosperity,
        prejudice=prejudice,
        targets=targets,
        faction_members=np.array(members_flat, dtype=np.int32),
        faction_start=np.array(starts, dtype=np.int32),
        hist=hist,
        head=head,
        cnt=cnt,
    )


def packed_history(state: PackedState, observer: int, partner: int) -> list[float]:
    """A pair's stored values oldest-first, matching ExperienceStore.recall."""
    window = state.hist.shape[2]
    c = int(state.cnt[partner, observer])
    h = int(state.head[partner, observer])
    return [
        float(state.hist[partner, observer, (h + k) % window]) for k in range(c)
    ]


def snapshot_into(society: SocietyState, si: int, snap_prosperity, snap_prejudice,
                  snap_alignment) -> None:
    """Accumulate per-(group, kind) sums for snapshot si; mirrors the kernel."""
    for a in society.agents:
        g = a.group
        k = int(a.kind)
        snap_prosperity[si, g, k] += a.prosperity
        snap_alignment[si, g, k] += a.faction_alignment
        for tg in society.config.targets[a.id]:
            snap_prejudice[si, g, k] += a.prejudice[tg]


def run_batch_python(society: SocietyState, pair_a, pair_b, snap_iters,
                     snap_prosperity, snap_prejudice, snap_alignment) -> None:
    """Reference engine: loop step_pair over the pre-sampled pairs."""
    n_steps = len(pair_a)
    n_snaps = len(snap_iters)
    si = 0
    for t in range(n_steps):
        while si < n_snaps and snap_iters[si] == t:
            snapshot_into(society, si, snap_prosperity, snap_prejudice,
                          snap_alignment)
            si += 1
        step_pair(society, int(pair_a[t]), int(pair_b[t]))
    while si < n_snaps and snap_iters[si] == n_steps:
        snapshot_into(society, si, snap_prosperity, snap_prejudice,
                      snap_alignment)
        si += 1
    if si != n_snaps:
        raise ValueError("snapshot schedule not fully consumed")


def run_batch_compiled(state: PackedState, params, pair_a, pair_b, snap_iters,
                       snap_prosperity, snap_prejudice, snap_alignment) -> None:
    """Hand the packed state to the compiled kernel."""
    u = params.update
    _kernel.run_steps(
        state.group_of, state.kind_of, state.faction_of,
        state.falign, state.prosperity, state.prejudice, state.targets,
        state.faction_members, state.faction_start,
        state.hist, state.head, state.cnt,
        pair_a, pair_b, snap_iters,
        snap_prosperity, snap_prejudice, snap_alignment,
        params.payoffs.reward, params.payoffs.temptation,
        params.payoffs.punishment, params.payoffs.sucker,
        u.reinforce_threshold, u.weaken_threshold,
        u.prejudice_step, u.alignment_step,
        u.agree_band[0], u.agree_band[1],
        u.disagree_band[0], u.disagree_band[1],
        params.default_opinion,
        1 if params.memory_semantics is MemorySemantics.OWN else 0,
    )
