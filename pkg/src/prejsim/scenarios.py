"""Declarative scenarios: group layouts, prejudice orientations, presets.

A ScenarioSpec says how big each group is, what fraction of it is prejudiced,
which groups those agents target, and what fraction of the prejudiced agents
are renegades (in-group targeting). build_scenario turns that into a concrete
SocietyConfig; preset() returns the experiment families shipped with the
package, each as a list of labeled sweep points.

Scenario files are YAML documents mirroring ScenarioSpec field for field; see
scenarios/ in the repository root for one example per preset and README.md
for the schema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
import yaml

from .errors import ConfigurationError, UsageError
from .model import SocietyConfig
from .params import AgentKind, ModelParams


@dataclass(frozen=True)
class GroupSpec:
    label: str
    size: int
    prejudiced_fraction: float = 0.0
    targets: tuple[str, ...] = ()
    renegade_fraction: float = 0.0


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    groups: tuple[GroupSpec, ...]
    iterations: int = 100_000
    repetitions: int = 10
    stride: int = 100
    params: ModelParams = field(default_factory=ModelParams)

    def validate(self) -> None:
        if not self.groups:
            raise ConfigurationError("scenario has no groups")
        labels = [g.label for g in self.groups]
        if len(set(labels)) != len(labels):
            raise ConfigurationError("duplicate group labels")
        if self.iterations < 0 or self.repetitions < 1 or self.stride < 1:
            raise ConfigurationError(
                "iterations must be >= 0, repetitions and stride >= 1"
            )
        nf = self.params.faction_size
        for g in self.groups:
            if g.size < 1:
                raise ConfigurationError(f"group {g.label} has size {g.size}")
            if g.size % nf != 0:
                raise ConfigurationError(
                    f"group {g.label} size {g.size} not divisible by faction "
                    f"size {nf}"
                )
            for frac_name in ("prejudiced_fraction", "renegade_fraction"):
                v = getattr(g, frac_name)
                if not 0.0 <= v <= 1.0:
                    raise ConfigurationError(
                        f"group {g.label} {frac_name} must lie in [0, 1], got {v}"
                    )
            for t in g.targets:
                if t not in labels:
                    raise ConfigurationError(
                        f"group {g.label} targets unknown group {t}"
                    )
                if t == g.label:
                    raise ConfigurationError(
                        f"group {g.label} may not target itself; use "
                        "renegade_fraction for in-group prejudice"
                    )


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def build_scenario(spec: ScenarioSpec, rng: np.random.Generator) -> SocietyConfig:
    """Expand a scenario into a concrete society configuration.

    Within each group, agents get consecutive ids and factions are
    consecutive blocks, so designating the first round(eps * size) agents as
    prejudiced fills whole factions first, with at most one mixed faction
    absorbing the remainder. Renegades are drawn uniformly at random from the
    group's prejudiced agents and re-targeted at their own group.
    """
    spec.validate()
    nf = spec.params.faction_size
    labels = [g.label for g in spec.groups]
    index = {lab: i for i, lab in enumerate(labels)}

    group_of: list[int] = []
    faction_of: list[int] = []
    kinds: list[AgentKind] = []
    targets: list[tuple[int, ...]] = []
    notes: list[str] = []

    next_agent = 0
    next_faction = 0
    for gi, g in enumerate(spec.groups):
        n_prej = _round_half_up(g.prejudiced_fraction * g.size)
        n_reneg = _round_half_up(g.renegade_fraction * n_prej)
        if g.renegade_fraction > 0.0 and n_prej == 0:
            raise ConfigurationError(
                f"group {g.label} has renegades but no prejudiced agents"
            )
        orientation = tuple(sorted(index[t] for t in g.targets))

        first = next_agent
        for k in range(g.size):
            group_of.append(gi)
            faction_of.append(next_faction + k // nf)
            if k < n_prej:
                kinds.append(AgentKind.PREJUDICED)
                targets.append(orientation)
            else:
                kinds.append(AgentKind.UNPREJUDICED)
                targets.append(())
        if 0 < n_prej % nf:
            mixed = next_faction + n_prej // nf
            notes.append(
                f"group {g.label}: faction {mixed} is mixed "
                f"({n_prej % nf} prejudiced, {nf - n_prej % nf} unprejudiced)"
            )
        next_agent += g.size
        next_faction += g.size // nf

        if n_reneg:
            chosen = rng.choice(n_prej, size=n_reneg, replace=False)
            for k in chosen:
                a = first + int(k)
                kinds[a] = AgentKind.RENEGADE
                targets[a] = (gi,)

    config = SocietyConfig(
        group_labels=tuple(labels),
        group_of=tuple(group_of),
        faction_of=tuple(faction_of),
        kinds=tuple(kinds),
        targets=tuple(targets),
        params=spec.params,
        notes=tuple(notes),
    )
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Presets: the five experiment families, expanded to labeled sweep points.
# ---------------------------------------------------------------------------

EPS_SWEEP = (0.2, 0.4, 0.6, 0.8, 1.0)
SKEW_SPLITS = ((500, 500), (600, 400), (700, 300), (800, 200), (900, 100))

PRESET_NAMES = (
    "r1_concentration",
    "r2_in_out",
    "r3_two_group_skew",
    "r3_multigroup",
    "r4_renegades_two",
    "r4_renegades_multi",
    "r5_society_sweep",
)

PRESET_SUMMARIES = {
    "r1_concentration": "two equal groups; sweep the prejudiced fraction of G1",
    "r2_in_out": "ten groups; staggered orientations separate in/out-group effects",
    "r3_two_group_skew": "five size splits x four prejudice configurations",
    "r3_multigroup": "four mutually prejudiced groups sized 1:2:3:4",
    "r4_renegades_two": "two mutually prejudiced groups; renegades in G2",
    "r4_renegades_multi": "five mutually prejudiced groups; renegades in G4, G5",
    "r5_society_sweep": "whole-society sweep plus the cumulative prejudice ladder",
}


def _two_groups(eps1: float, eps2: float, size1: int = 500, size2: int = 500,
                renegade2: float = 0.0) -> tuple[GroupSpec, GroupSpec]:
    g1 = GroupSpec("G1", size1, eps1, ("G2",) if eps1 > 0 else ())
    g2 = GroupSpec("G2", size2, eps2, ("G1",) if eps2 > 0 else (),
                   renegade_fraction=renegade2)
    return g1, g2


def _mutual_groups(labels, sizes, prejudiced, renegade=()):
    """All-prejudiced groups in `prejudiced` target every other group."""
    groups = []
    reneg = dict(renegade)
    for lab, size in zip(labels, sizes):
        if lab in prejudiced:
            tgts = tuple(l for l in labels if l != lab)
            groups.append(GroupSpec(lab, size, 1.0, tgts, reneg.get(lab, 0.0)))
        else:
            groups.append(GroupSpec(lab, size))
    return tuple(groups)


def preset(name: str) -> list[tuple[str, ScenarioSpec]]:
    """Expand a named preset into (label, spec) sweep points."""
    if name == "r1_concentration":
        return [
            (f"eps_{eps:.1f}",
             ScenarioSpec(f"r1_concentration.eps_{eps:.1f}",
                          _two_groups(eps, 0.0)))
            for eps in EPS_SWEEP
        ]

    if name == "r2_in_out":
        labels = [f"G{i}" for i in range(1, 11)]
        groups = []
        for i, lab in enumerate(labels, start=1):
            if i <= 5:
                groups.append(GroupSpec(lab, 100))
            else:
                tgts = tuple(f"G{j}" for j in range(1, i - 4))
                groups.append(GroupSpec(lab, 100, 1.0, tgts))
        return [("main", ScenarioSpec("r2_in_out", tuple(groups)))]

    if name == "r3_two_group_skew":
        configs = {
            "both": (1.0, 1.0),
            "majority_only": (1.0, 0.0),
            "minority_only": (0.0, 1.0),
            "neither": (0.0, 0.0),
        }
        points = []
        for s1, s2 in SKEW_SPLITS:
            for cname, (e1, e2) in configs.items():
                label = f"{s1}-{s2}_{cname}"
                points.append(
                    (label,
                     ScenarioSpec(f"r3_two_group_skew.{label}",
                                  _two_groups(e1, e2, s1, s2)))
                )
        return points

    if name == "r3_multigroup":
        labels = ("G1", "G2", "G3", "G4")
        sizes = (100, 200, 300, 400)
        groups = _mutual_groups(labels, sizes, prejudiced=set(labels))
        return [("main", ScenarioSpec("r3_multigroup", groups))]

    if name == "r4_renegades_two":
        points = []
        for frac in (0.1, 0.2):
            groups = _two_groups(1.0, 1.0, renegade2=frac)
            label = f"renegades_{frac:.1f}"
            points.append(
                (label, ScenarioSpec(f"r4_renegades_two.{label}", groups))
            )
        return points

    if name == "r4_renegades_multi":
        labels = tuple(f"G{i}" for i in range(1, 6))
        groups = _mutual_groups(labels, (200,) * 5, prejudiced=set(labels),
                                renegade={"G4": 0.1, "G5": 0.1})
        return [("main", ScenarioSpec("r4_renegades_multi", groups))]

    if name == "r5_society_sweep":
        points = []
        # Prejudiced society S1 at five concentrations, against an
        # all-unprejudiced S2 of the same shape, compared across runs.
        for eps in EPS_SWEEP:
            groups = (GroupSpec("G1", 500, eps, ("G2",)),
                      GroupSpec("G2", 500, eps, ("G1",)))
            label = f"s1_eps_{eps:.1f}"
            points.append(
                (label, ScenarioSpec(f"r5_society_sweep.{label}", groups))
            )
        points.append(
            ("s2_baseline",
             ScenarioSpec("r5_society_sweep.s2_baseline",
                          _two_groups(0.0, 0.0)))
        )
        # Cumulative ladder: five equal groups turn prejudiced one at a time.
        labels = tuple(f"G{i}" for i in range(1, 6))
        for k in range(6):
            groups = _mutual_groups(labels, (200,) * 5,
                                    prejudiced=set(labels[:k]))
            label = f"ladder_{k}"
            points.append(
                (label, ScenarioSpec(f"r5_society_sweep.{label}", groups))
            )
        return points

    raise UsageError(
        f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
    )


# ---------------------------------------------------------------------------
# Scenario files (YAML).
# ---------------------------------------------------------------------------

def spec_to_dict(spec: ScenarioSpec) -> dict:
    return {
        "name": spec.name,
        "groups": [
            {
                "label": g.label,
                "size": g.size,
                "prejudiced_fraction": g.prejudiced_fraction,
                "targets": list(g.targets),
                "renegade_fraction": g.renegade_fraction,
            }
            for g in spec.groups
        ],
        "iterations": spec.iterations,
        "repetitions": spec.repetitions,
        "stride": spec.stride,
        "params": spec.params.to_dict(),
    }


def spec_from_dict(d: dict) -> ScenarioSpec:
    if not isinstance(d, dict):
        raise ConfigurationError("scenario document must be a mapping")
    unknown = set(d) - {"name", "groups", "iterations", "repetitions",
                        "stride", "params"}
    if unknown:
        raise ConfigurationError(f"unknown scenario fields: {sorted(unknown)}")
    try:
        groups = tuple(
            GroupSpec(
                label=str(g["label"]),
                size=int(g["size"]),
                prejudiced_fraction=float(g.get("prejudiced_fraction", 0.0)),
                targets=tuple(g.get("targets", ()) or ()),
                renegade_fraction=float(g.get("renegade_fraction", 0.0)),
            )
            for g in d.get("groups", ())
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed group entry: {exc}") from exc
    params = ModelParams.from_dict(d.get("params", {}) or {})
    return ScenarioSpec(
        name=str(d.get("name", "scenario")),
        groups=groups,
        iterations=int(d.get("iterations", 100_000)),
        repetitions=int(d.get("repetitions", 10)),
        stride=int(d.get("stride", 100)),
        params=params,
    )


def load_scenario(path: str) -> ScenarioSpec:
    """Read and validate a scenario file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise UsageError(f"cannot parse scenario file {path}: {exc}") from exc
    spec = spec_from_dict(doc)
    spec.validate()
    return spec


def dump_scenario(spec: ScenarioSpec) -> str:
    return yaml.safe_dump(spec_to_dict(spec), sort_keys=False)


def with_overrides(spec: ScenarioSpec, iterations=None, repetitions=None,
                   stride=None, memory_semantics=None) -> ScenarioSpec:
    """Apply CLI-level overrides to a loaded or preset spec."""
    out = spec
    if iterations is not None:
        out = replace(out, iterations=iterations)
    if repetitions is not None:
        out = replace(out, repetitions=repetitions)
    if stride is not None:
        out = replace(out, stride=stride)
    if memory_semantics is not None:
        out = replace(out, params=out.params.with_semantics(memory_semantics))
    return out
