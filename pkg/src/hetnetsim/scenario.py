"""Scenario documents: domain types, strict JSON parsing and validation.

A scenario fully describes one simulation: the site/cell cluster, hotspot
pairs, user population, mobility parameters, fuzzy scoring configuration,
handover hysteresis, workload and signalling cost model. Documents are JSON
with a fixed schema; unknown keys are rejected and every violation names the
offending field path. All types are immutable after validation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Optional

from .fuzzy import (
    CriteriaVector,
    FuzzyConfig,
    MembershipFunction,
    NUMERIC_CRITERIA,
    PRIORITY_LABELS,
    membership,
)
from .jrrm import CELLULAR_RATS, HysteresisConfig
from .mobility import MOBILITY_CLASSES, MobilityParams

RAT_KINDS = ("lte", "umts", "wlan80211")

MAX_SEED = 2**64 - 1

# Sample count for the partition-of-unity check during validation.
_PARTITION_SAMPLES = 257
_PARTITION_TOL = 1e-9


class ScenarioError(Exception):
    """Base class for scenario document failures."""


class ScenarioSyntaxError(ScenarioError):
    """Malformed JSON; carries the reported line/column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ScenarioSchemaError(ScenarioError):
    """Structural violation (type, missing or unknown key) at ``path``."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class ScenarioValidationError(ScenarioError):
    """Invariant or cross-reference violations found while parsing."""

    def __init__(self, violations: list["Violation"]):
        super().__init__(
            "; ".join(f"{v.path}: {v.message}" for v in violations)
        )
        self.violations = violations


@dataclass(frozen=True)
class Violation:
    path: str
    message: str


@dataclass(frozen=True)
class CellCriteria:
    """Static per-cell criteria; the priority criterion is per-session."""

    cost: float
    bandwidth: float
    rss: float
    delay: float

    def with_priority(self, priority: str) -> CriteriaVector:
        return CriteriaVector(
            cost=self.cost,
            bandwidth=self.bandwidth,
            rss=self.rss,
            priority=priority,
            delay=self.delay,
        )


@dataclass(frozen=True)
class Cell:
    id: str
    rat: str
    capacity_sessions: int
    criteria: CellCriteria


@dataclass(frozen=True)
class Site:
    id: str
    cells: tuple[Cell, ...]


@dataclass(frozen=True)
class Hotspot:
    """A WLAN cell and the cellular cell covering the same area."""

    id: str
    wlan_cell: str
    overlay_cell: str


@dataclass(frozen=True)
class PopulationSpec:
    num_users: int
    p_vehicular: float


@dataclass(frozen=True)
class WorkloadSpec:
    arrival_rate_per_user_per_epoch: float
    mean_session_epochs: float
    p_realtime: float
    priority_mix: Mapping[str, float]


@dataclass(frozen=True)
class SignallingCostModel:
    cost_ho_attempt: float
    cost_ho_complete: float
    cost_admit: float


@dataclass(frozen=True)
class Scenario:
    name: str
    sites: tuple[Site, ...]
    hotspots: tuple[Hotspot, ...]
    population: PopulationSpec
    mobility: MobilityParams
    fuzzy: FuzzyConfig
    handover: HysteresisConfig
    workload: WorkloadSpec
    signalling: SignallingCostModel
    duration_epochs: int
    seed: int
    handover_presets: Mapping[str, HysteresisConfig] = field(default_factory=dict)

    def cells(self) -> dict[str, Cell]:
        return {cell.id: cell for site in self.sites for cell in site.cells}

    def site_of_cell(self) -> dict[str, str]:
        return {cell.id: site.id for site in self.sites for cell in site.cells}

    def hotspot_by_id(self) -> dict[str, Hotspot]:
        return {h.id: h for h in self.hotspots}


def apply_preset(scenario: Scenario, name: str) -> Scenario:
    """Return the scenario with a named hysteresis preset applied."""
    if name not in scenario.handover_presets:
        raise KeyError(
            f"unknown handover preset {name!r}; available: "
            f"{sorted(scenario.handover_presets)}"
        )
    return replace(scenario, handover=scenario.handover_presets[name])


# ---------------------------------------------------------------------------
# Parsing


def _require(obj: Any, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()):
    if not isinstance(obj, dict):
        raise ScenarioSchemaError(path, f"expected an object, got {type(obj).__name__}")
    for key in obj:
        if key not in required and key not in optional:
            raise ScenarioSchemaError(f"{path}.{key}" if path else key, "unknown key")
    for key in required:
        if key not in obj:
            raise ScenarioSchemaError(f"{path}.{key}" if path else key, "missing key")


def _number(obj: Any, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ScenarioSchemaError(path, f"expected a number, got {type(obj).__name__}")
    return float(obj)


def _integer(obj: Any, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise ScenarioSchemaError(path, f"expected an integer, got {type(obj).__name__}")
    return obj


def _string(obj: Any, path: str) -> str:
    if not isinstance(obj, str):
        raise ScenarioSchemaError(path, f"expected a string, got {type(obj).__name__}")
    return obj


def _boolean(obj: Any, path: str) -> bool:
    if not isinstance(obj, bool):
        raise ScenarioSchemaError(path, f"expected a boolean, got {type(obj).__name__}")
    return obj


def _array(obj: Any, path: str) -> list:
    if not isinstance(obj, list):
        raise ScenarioSchemaError(path, f"expected an array, got {type(obj).__name__}")
    return obj


def _parse_cell(obj: Any, path: str) -> Cell:
    _require(obj, path, ("id", "rat", "capacity_sessions", "criteria"))
    rat = _string(obj["rat"], f"{path}.rat")
    if rat not in RAT_KINDS:
        raise ScenarioSchemaError(f"{path}.rat", f"must be one of {RAT_KINDS}")
    crit = obj["criteria"]
    cpath = f"{path}.criteria"
    _require(crit, cpath, ("cost", "bandwidth", "rss", "delay"))
    return Cell(
        id=_string(obj["id"], f"{path}.id"),
        rat=rat,
        capacity_sessions=_integer(obj["capacity_sessions"], f"{path}.capacity_sessions"),
        criteria=CellCriteria(
            cost=_number(crit["cost"], f"{cpath}.cost"),
            bandwidth=_number(crit["bandwidth"], f"{cpath}.bandwidth"),
            rss=_number(crit["rss"], f"{cpath}.rss"),
            delay=_number(crit["delay"], f"{cpath}.delay"),
        ),
    )


def _parse_site(obj: Any, path: str) -> Site:
    _require(obj, path, ("id", "cells"))
    cells = _array(obj["cells"], f"{path}.cells")
    return Site(
        id=_string(obj["id"], f"{path}.id"),
        cells=tuple(
            _parse_cell(c, f"{path}.cells[{i}]") for i, c in enumerate(cells)
        ),
    )


def _parse_hotspot(obj: Any, path: str) -> Hotspot:
    _require(obj, path, ("id", "wlan_cell", "overlay_cell"))
    return Hotspot(
        id=_string(obj["id"], f"{path}.id"),
        wlan_cell=_string(obj["wlan_cell"], f"{path}.wlan_cell"),
        overlay_cell=_string(obj["overlay_cell"], f"{path}.overlay_cell"),
    )


def _parse_mf(obj: Any, path: str) -> MembershipFunction:
    _require(obj, path, ("label", "a", "b", "c", "d"))
    return MembershipFunction(
        label=_string(obj["label"], f"{path}.label"),
        a=_number(obj["a"], f"{path}.a"),
        b=_number(obj["b"], f"{path}.b"),
        c=_number(obj["c"], f"{path}.c"),
        d=_number(obj["d"], f"{path}.d"),
    )


def _parse_utility_row(obj: Any, path: str) -> dict[str, float]:
    if not isinstance(obj, dict):
        raise ScenarioSchemaError(path, f"expected an object, got {type(obj).__name__}")
    return {key: _number(val, f"{path}.{key}") for key, val in obj.items()}


def _parse_fuzzy(obj: Any, path: str) -> FuzzyConfig:
    _require(obj, path, ("sets", "universes", "weights", "label_utilities",
                         "priority_utilities"))
    sets_obj = obj["sets"]
    _require(sets_obj, f"{path}.sets", NUMERIC_CRITERIA)
    sets = {}
    for crit in NUMERIC_CRITERIA:
        arr = _array(sets_obj[crit], f"{path}.sets.{crit}")
        sets[crit] = tuple(
            _parse_mf(mf, f"{path}.sets.{crit}[{i}]") for i, mf in enumerate(arr)
        )
    uni_obj = obj["universes"]
    _require(uni_obj, f"{path}.universes", NUMERIC_CRITERIA)
    universes = {}
    for crit in NUMERIC_CRITERIA:
        pair = _array(uni_obj[crit], f"{path}.universes.{crit}")
        if len(pair) != 2:
            raise ScenarioSchemaError(
                f"{path}.universes.{crit}", "expected [low, high]"
            )
        universes[crit] = (
            _number(pair[0], f"{path}.universes.{crit}[0]"),
            _number(pair[1], f"{path}.universes.{crit}[1]"),
        )
    weights = _array(obj["weights"], f"{path}.weights")
    if len(weights) != 5:
        raise ScenarioSchemaError(
            f"{path}.weights", "expected 5 entries ordered (C, B, R, U, D)"
        )
    weights = tuple(
        _number(w, f"{path}.weights[{i}]") for i, w in enumerate(weights)
    )
    lu_obj = obj["label_utilities"]
    _require(lu_obj, f"{path}.label_utilities", NUMERIC_CRITERIA)
    label_utilities = {
        crit: _parse_utility_row(lu_obj[crit], f"{path}.label_utilities.{crit}")
        for crit in NUMERIC_CRITERIA
    }
    pu_obj = obj["priority_utilities"]
    _require(pu_obj, f"{path}.priority_utilities", ("default",), RAT_KINDS)
    priority_utilities = {
        key: _parse_utility_row(row, f"{path}.priority_utilities.{key}")
        for key, row in pu_obj.items()
    }
    return FuzzyConfig(
        sets=sets,
        universes=universes,
        weights=weights,
        label_utilities=label_utilities,
        priority_utilities=priority_utilities,
    )


def _parse_hysteresis(obj: Any, path: str, allow_presets: bool) -> tuple[HysteresisConfig, dict]:
    optional = ("table2_semantics", "presets") if allow_presets else ("table2_semantics",)
    _require(obj, path, ("score_margin", "min_dwell_epochs"), optional)
    cfg = HysteresisConfig(
        score_margin=_number(obj["score_margin"], f"{path}.score_margin"),
        min_dwell_epochs=_integer(obj["min_dwell_epochs"], f"{path}.min_dwell_epochs"),
        table2_semantics=_boolean(obj["table2_semantics"], f"{path}.table2_semantics")
        if "table2_semantics" in obj
        else True,
    )
    presets: dict[str, HysteresisConfig] = {}
    if allow_presets and "presets" in obj:
        presets_obj = obj["presets"]
        if not isinstance(presets_obj, dict):
            raise ScenarioSchemaError(f"{path}.presets", "expected an object")
        for name, sub in presets_obj.items():
            sub_cfg, _ = _parse_hysteresis(sub, f"{path}.presets.{name}", False)
            if "table2_semantics" not in sub:
                sub_cfg = replace(sub_cfg, table2_semantics=cfg.table2_semantics)
            presets[name] = sub_cfg
    return cfg, presets


TOP_LEVEL_KEYS = (
    "name", "sites", "hotspots", "population", "mobility", "fuzzy",
    "handover", "workload", "signalling", "duration_epochs", "seed",
)


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate a scenario document.

    Raises ScenarioSyntaxError for malformed JSON, ScenarioSchemaError for
    structural problems (with the offending field path) and
    ScenarioValidationError when the constructed scenario violates any
    invariant; otherwise the returned Scenario passes validate_scenario.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from None

    _require(doc, "", TOP_LEVEL_KEYS)
    pop_obj = doc["population"]
    _require(pop_obj, "population", ("num_users", "p_vehicular"))
    mob_obj = doc["mobility"]
    _require(mob_obj, "mobility", ("p_exit", "p_enter", "vehicular_multiplier"))
    wl_obj = doc["workload"]
    _require(
        wl_obj,
        "workload",
        ("arrival_rate_per_user_per_epoch", "mean_session_epochs",
         "p_realtime", "priority_mix"),
    )
    mix = _parse_utility_row(wl_obj["priority_mix"], "workload.priority_mix")
    sig_obj = doc["signalling"]
    _require(sig_obj, "signalling", ("cost_ho_attempt", "cost_ho_complete", "cost_admit"))

    handover, presets = _parse_hysteresis(doc["handover"], "handover", True)
    scenario = Scenario(
        name=_string(doc["name"], "name"),
        sites=tuple(
            _parse_site(s, f"sites[{i}]")
            for i, s in enumerate(_array(doc["sites"], "sites"))
        ),
        hotspots=tuple(
            _parse_hotspot(h, f"hotspots[{i}]")
            for i, h in enumerate(_array(doc["hotspots"], "hotspots"))
        ),
        population=PopulationSpec(
            num_users=_integer(pop_obj["num_users"], "population.num_users"),
            p_vehicular=_number(pop_obj["p_vehicular"], "population.p_vehicular"),
        ),
        mobility=MobilityParams(
            p_exit=_number(mob_obj["p_exit"], "mobility.p_exit"),
            p_enter=_number(mob_obj["p_enter"], "mobility.p_enter"),
            vehicular_multiplier=_number(
                mob_obj["vehicular_multiplier"], "mobility.vehicular_multiplier"
            ),
        ),
        fuzzy=_parse_fuzzy(doc["fuzzy"], "fuzzy"),
        handover=handover,
        workload=WorkloadSpec(
            arrival_rate_per_user_per_epoch=_number(
                wl_obj["arrival_rate_per_user_per_epoch"],
                "workload.arrival_rate_per_user_per_epoch",
            ),
            mean_session_epochs=_number(
                wl_obj["mean_session_epochs"], "workload.mean_session_epochs"
            ),
            p_realtime=_number(wl_obj["p_realtime"], "workload.p_realtime"),
            priority_mix=mix,
        ),
        signalling=SignallingCostModel(
            cost_ho_attempt=_number(sig_obj["cost_ho_attempt"], "signalling.cost_ho_attempt"),
            cost_ho_complete=_number(sig_obj["cost_ho_complete"], "signalling.cost_ho_complete"),
            cost_admit=_number(sig_obj["cost_admit"], "signalling.cost_admit"),
        ),
        duration_epochs=_integer(doc["duration_epochs"], "duration_epochs"),
        seed=_integer(doc["seed"], "seed"),
        handover_presets=presets,
    )
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioValidationError(violations)
    return scenario


# ---------------------------------------------------------------------------
# Validation


def _validate_fuzzy(cfg: FuzzyConfig, out: list[Violation]) -> None:
    path = "fuzzy"
    for crit in NUMERIC_CRITERIA:
        sets = cfg.sets.get(crit, ())
        cpath = f"{path}.sets.{crit}"
        if not sets:
            out.append(Violation(cpath, "no membership functions"))
            continue
        labels = [mf.label for mf in sets]
        if len(set(labels)) != len(labels):
            out.append(Violation(cpath, "duplicate labels"))
        for i, mf in enumerate(sets):
            if not (mf.a <= mf.b <= mf.c <= mf.d):
                out.append(
                    Violation(f"{cpath}[{i}]", "breakpoints must satisfy a <= b <= c <= d")
                )
        lo, hi = cfg.universes[crit]
        if not lo < hi:
            out.append(Violation(f"{path}.universes.{crit}", "low must be < high"))
            continue
        if all(mf.a <= mf.b <= mf.c <= mf.d for mf in sets):
            step = (hi - lo) / (_PARTITION_SAMPLES - 1)
            for k in range(_PARTITION_SAMPLES):
                x = lo + k * step
                total = sum(membership(mf, x) for mf in sets)
                if abs(total - 1.0) > _PARTITION_TOL:
                    out.append(
                        Violation(
                            cpath,
                            f"degrees sum to {total:.12g} (not 1) at {x:.12g}",
                        )
                    )
                    break
        utilities = cfg.label_utilities.get(crit, {})
        for mf in sets:
            if mf.label not in utilities:
                out.append(
                    Violation(f"{path}.label_utilities.{crit}", f"missing label {mf.label!r}")
                )
        for label, u in utilities.items():
            if not 0.0 <= u <= 1.0:
                out.append(
                    Violation(f"{path}.label_utilities.{crit}.{label}", "utility outside [0, 1]")
                )
    if len(cfg.weights) != 5:
        out.append(Violation(f"{path}.weights", "expected 5 weights"))
    if any(w < 0 for w in cfg.weights):
        out.append(Violation(f"{path}.weights", "weights must be non-negative"))
    if sum(cfg.weights) == 0:
        out.append(Violation(f"{path}.weights", "weights must not all be zero"))
    if "default" not in cfg.priority_utilities:
        out.append(Violation(f"{path}.priority_utilities", "missing 'default' row"))
    for key, row in cfg.priority_utilities.items():
        for label in cfg.priority_labels:
            if label not in row:
                out.append(
                    Violation(
                        f"{path}.priority_utilities.{key}", f"missing label {label!r}"
                    )
                )
        for label, u in row.items():
            if not 0.0 <= u <= 1.0:
                out.append(
                    Violation(
                        f"{path}.priority_utilities.{key}.{label}",
                        "utility outside [0, 1]",
                    )
                )


def validate_scenario(scenario: Scenario) -> list[Violation]:
    """Check every invariant; returns an empty list iff the scenario is valid.

    Violations are data, not failures; each one names the offending field
    path. The check is a pure function of the scenario value.
    """
    out: list[Violation] = []

    if scenario.duration_epochs < 1:
        out.append(Violation("duration_epochs", "must be >= 1"))
    if not 0 <= scenario.seed <= MAX_SEED:
        out.append(Violation("seed", "must fit in an unsigned 64-bit integer"))

    if not scenario.sites:
        out.append(Violation("sites", "must not be empty"))
    site_ids: set[str] = set()
    cell_rat: dict[str, str] = {}
    for i, site in enumerate(scenario.sites):
        if site.id in site_ids:
            out.append(Violation(f"sites[{i}].id", f"duplicate site id {site.id!r}"))
        site_ids.add(site.id)
        if not site.cells:
            out.append(Violation(f"sites[{i}].cells", "must not be empty"))
        for j, cell in enumerate(site.cells):
            cpath = f"sites[{i}].cells[{j}]"
            if cell.id in cell_rat:
                out.append(Violation(f"{cpath}.id", f"duplicate cell id {cell.id!r}"))
            cell_rat[cell.id] = cell.rat
            if cell.rat not in RAT_KINDS:
                out.append(Violation(f"{cpath}.rat", f"unknown RAT kind {cell.rat!r}"))
            if cell.capacity_sessions < 0:
                out.append(Violation(f"{cpath}.capacity_sessions", "must be >= 0"))
            for crit in NUMERIC_CRITERIA:
                lo, hi = scenario.fuzzy.universes.get(crit, (0.0, 0.0))
                x = getattr(cell.criteria, crit)
                if not lo <= x <= hi:
                    out.append(
                        Violation(
                            f"{cpath}.criteria.{crit}",
                            f"{x:g} outside universe [{lo:g}, {hi:g}]",
                        )
                    )

    hotspot_ids: set[str] = set()
    for i, hotspot in enumerate(scenario.hotspots):
        hpath = f"hotspots[{i}]"
        if hotspot.id in hotspot_ids:
            out.append(Violation(f"{hpath}.id", f"duplicate hotspot id {hotspot.id!r}"))
        hotspot_ids.add(hotspot.id)
        wlan_rat = cell_rat.get(hotspot.wlan_cell)
        if wlan_rat is None:
            out.append(
                Violation(f"{hpath}.wlan_cell", f"unknown cell {hotspot.wlan_cell!r}")
            )
        elif wlan_rat != "wlan80211":
            out.append(
                Violation(f"{hpath}.wlan_cell", "must reference a wlan80211 cell")
            )
        overlay_rat = cell_rat.get(hotspot.overlay_cell)
        if overlay_rat is None:
            out.append(
                Violation(f"{hpath}.overlay_cell", f"unknown cell {hotspot.overlay_cell!r}")
            )
        elif overlay_rat not in CELLULAR_RATS:
            out.append(
                Violation(f"{hpath}.overlay_cell", "must reference a cellular cell")
            )

    pop = scenario.population
    if pop.num_users < 1:
        out.append(Violation("population.num_users", "must be >= 1"))
    if not 0.0 <= pop.p_vehicular <= 1.0:
        out.append(Violation("population.p_vehicular", "must be within [0, 1]"))

    mob = scenario.mobility
    if not 0.0 <= mob.p_exit <= 1.0:
        out.append(Violation("mobility.p_exit", "must be within [0, 1]"))
    if not 0.0 <= mob.p_enter <= 1.0:
        out.append(Violation("mobility.p_enter", "must be within [0, 1]"))
    if mob.vehicular_multiplier < 1.0:
        out.append(Violation("mobility.vehicular_multiplier", "must be >= 1"))

    wl = scenario.workload
    if wl.arrival_rate_per_user_per_epoch < 0:
        out.append(Violation("workload.arrival_rate_per_user_per_epoch", "must be >= 0"))
    if wl.mean_session_epochs <= 0:
        out.append(Violation("workload.mean_session_epochs", "must be > 0"))
    if not 0.0 <= wl.p_realtime <= 1.0:
        out.append(Violation("workload.p_realtime", "must be within [0, 1]"))
    for label in wl.priority_mix:
        if label not in PRIORITY_LABELS:
            out.append(
                Violation("workload.priority_mix", f"unknown priority label {label!r}")
            )
    if any(w < 0 for w in wl.priority_mix.values()):
        out.append(Violation("workload.priority_mix", "weights must be >= 0"))
    total = sum(wl.priority_mix.values())
    if abs(total - 1.0) > 1e-9:
        out.append(
            Violation("workload.priority_mix", f"weights sum to {total:.12g}, not 1")
        )

    sig = scenario.signalling
    if sig.cost_ho_attempt < 0:
        out.append(Violation("signalling.cost_ho_attempt", "must be >= 0"))
    if sig.cost_ho_complete < 0:
        out.append(Violation("signalling.cost_ho_complete", "must be >= 0"))
    if sig.cost_admit < 0:
        out.append(Violation("signalling.cost_admit", "must be >= 0"))

    def check_hysteresis(cfg: HysteresisConfig, path: str) -> None:
        if cfg.score_margin < 0:
            out.append(Violation(f"{path}.score_margin", "must be >= 0"))
        if cfg.min_dwell_epochs < 0:
            out.append(Violation(f"{path}.min_dwell_epochs", "must be >= 0"))

    check_hysteresis(scenario.handover, "handover")
    for name, preset in scenario.handover_presets.items():
        check_hysteresis(preset, f"handover.presets.{name}")

    _validate_fuzzy(scenario.fuzzy, out)
    return out


# ---------------------------------------------------------------------------
# Serialization


def scenario_to_dict(scenario: Scenario) -> dict:
    """Plain-dict form of a scenario matching the document schema."""
    fz = scenario.fuzzy
    handover: dict[str, Any] = {
        "score_margin": scenario.handover.score_margin,
        "min_dwell_epochs": scenario.handover.min_dwell_epochs,
        "table2_semantics": scenario.handover.table2_semantics,
    }
    if scenario.handover_presets:
        handover["presets"] = {
            name: {
                "score_margin": preset.score_margin,
                "min_dwell_epochs": preset.min_dwell_epochs,
                "table2_semantics": preset.table2_semantics,
            }
            for name, preset in scenario.handover_presets.items()
        }
    return {
        "name": scenario.name,
        "sites": [
            {
                "id": site.id,
                "cells": [
                    {
                        "id": cell.id,
                        "rat": cell.rat,
                        "capacity_sessions": cell.capacity_sessions,
                        "criteria": {
                            "cost": cell.criteria.cost,
                            "bandwidth": cell.criteria.bandwidth,
                            "rss": cell.criteria.rss,
                            "delay": cell.criteria.delay,
                        },
                    }
                    for cell in site.cells
                ],
            }
            for site in scenario.sites
        ],
        "hotspots": [
            {"id": h.id, "wlan_cell": h.wlan_cell, "overlay_cell": h.overlay_cell}
            for h in scenario.hotspots
        ],
        "population": {
            "num_users": scenario.population.num_users,
            "p_vehicular": scenario.population.p_vehicular,
        },
        "mobility": {
            "p_exit": scenario.mobility.p_exit,
            "p_enter": scenario.mobility.p_enter,
            "vehicular_multiplier": scenario.mobility.vehicular_multiplier,
        },
        "fuzzy": {
            "sets": {
                crit: [
                    {"label": mf.label, "a": mf.a, "b": mf.b, "c": mf.c, "d": mf.d}
                    for mf in fz.sets[crit]
                ]
                for crit in NUMERIC_CRITERIA
            },
            "universes": {crit: list(fz.universes[crit]) for crit in NUMERIC_CRITERIA},
            "weights": list(fz.weights),
            "label_utilities": {
                crit: dict(fz.label_utilities[crit]) for crit in NUMERIC_CRITERIA
            },
            "priority_utilities": {
                key: dict(row) for key, row in fz.priority_utilities.items()
            },
        },
        "handover": handover,
        "workload": {
            "arrival_rate_per_user_per_epoch": scenario.workload.arrival_rate_per_user_per_epoch,
            "mean_session_epochs": scenario.workload.mean_session_epochs,
            "p_realtime": scenario.workload.p_realtime,
            "priority_mix": dict(scenario.workload.priority_mix),
        },
        "signalling": {
            "cost_ho_attempt": scenario.signalling.cost_ho_attempt,
            "cost_ho_complete": scenario.signalling.cost_ho_complete,
            "cost_admit": scenario.signalling.cost_admit,
        },
        "duration_epochs": scenario.duration_epochs,
        "seed": scenario.seed,
    }


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical JSON text; parse_scenario(serialize_scenario(s)) == s."""
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"
