"""CSV/metadata writers. File names, column orders and the 6-decimal float
format are a stable contract so regression diffs stay byte-exact."""

from __future__ import annotations

import json
import os

import numpy as np

from .params import AgentKind

FLOAT_FMT = "{:.6f}"


def _fmt(v: float) -> str:
    return FLOAT_FMT.format(v)


def _selectors(result):
    """Emission order: society, groups, kinds, then (group, kind) classes."""
    rows = [("society", np.ones_like(result.agent_count, dtype=bool))]
    n_groups, n_kinds = result.agent_count.shape
    for g in range(n_groups):
        mask = np.zeros((n_groups, n_kinds), dtype=bool)
        mask[g, :] = True
        rows.append((f"group:{result.group_labels[g]}", mask))
    for k in AgentKind:
        mask = np.zeros((n_groups, n_kinds), dtype=bool)
        mask[:, int(k)] = True
        if result.agent_count[mask].sum():
            rows.append((f"kind:{k.label}", mask))
    for g in range(n_groups):
        for k in AgentKind:
            if result.agent_count[g, int(k)]:
                mask = np.zeros((n_groups, n_kinds), dtype=bool)
                mask[g, int(k)] = True
                rows.append((f"class:{result.group_labels[g]}:{k.label}", mask))
    return rows


def write_outputs(result, out_dir: str) -> list[str]:
    """Write series.csv, summary.csv and run.meta for one result.

    Returns the paths written. series.csv has columns iteration, metric,
    selector, value with one row per (snapshot, metric, selector); prejudice
    rows appear only for selections that hold at least one target entry.
    """
    os.makedirs(out_dir, exist_ok=True)
    selectors = _selectors(result)
    snaps = result.snap_iters
    written = []

    series_path = os.path.join(out_dir, "series.csv")
    with open(series_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("iteration,metric,selector,value\n")
        for s, it in enumerate(snaps):
            for name, mask in selectors:
                agents = int(result.agent_count[mask].sum())
                value = result.prosperity_sum[s][mask].sum() / agents
                fh.write(f"{it},prosperity,{name},{_fmt(value)}\n")
            for name, mask in selectors:
                entries = int(result.entry_count[mask].sum())
                if entries:
                    value = result.prejudice_sum[s][mask].sum() / entries
                    fh.write(f"{it},prejudice,{name},{_fmt(value)}\n")
            for name, mask in selectors:
                agents = int(result.agent_count[mask].sum())
                value = result.alignment_sum[s][mask].sum() / agents
                fh.write(f"{it},alignment,{name},{_fmt(value)}\n")
    written.append(series_path)

    summary_path = os.path.join(out_dir, "summary.csv")
    last = len(snaps) - 1
    with open(summary_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("metric,selector,value\n")
        fh.write(f"prosperity,society,{_fmt(result.society_prosperity()[-1])}\n")
        for g, label in enumerate(result.group_labels):
            fh.write(
                f"prosperity,group:{label},{_fmt(result.group_prosperity(g)[-1])}\n"
            )
        for k in AgentKind:
            count = int(result.agent_count[:, int(k)].sum())
            if not count:
                continue
            entries = int(result.entry_count[:, int(k)].sum())
            if entries:
                p = result.prejudice_sum[last, :, int(k)].sum() / entries
                fh.write(f"prejudice,kind:{k.label},{_fmt(p)}\n")
            f = result.alignment_sum[last, :, int(k)].sum() / count
            fh.write(f"alignment,kind:{k.label},{_fmt(f)}\n")
    written.append(summary_path)

    meta_path = os.path.join(out_dir, "run.meta")
    meta = {
        "config_digest": result.config_digest,
        "seed": result.seed,
        "repetitions": getattr(result, "repetitions", 1),
        "iterations": result.iterations,
        "stride": result.stride,
        "engine": result.engine,
        "snapshots": len(snaps),
        "group_labels": list(result.group_labels),
        "agents_per_kind": {
            k.label: int(result.agent_count[:, int(k)].sum()) for k in AgentKind
        },
        "memory_semantics": result.params.memory_semantics.value,
        "params": result.params.to_dict(),
        "notes": list(result.notes),
    }
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(meta_path)
    return written


def write_sweep_summary(rows, out_dir: str) -> str:
    """Cross-point rollup for preset runs: one line per sweep point.

    `rows` is a list of (label, result); emits the final society-mean
    prosperity and each group's final mean prosperity.
    """
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "sweep_summary.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("point,selector,prosperity\n")
        for label, result in rows:
            fh.write(f"{label},society,{_fmt(result.society_prosperity()[-1])}\n")
            for g, glabel in enumerate(result.group_labels):
                fh.write(
                    f"{label},group:{glabel},"
                    f"{_fmt(result.group_prosperity(g)[-1])}\n"
                )
    return path
