"""KPI aggregation: the report type and its offline recomputation from logs.

collect_kpis replays an event log through accumulators that are independent
of the simulation loop's online counters; a run's online report and the
offline recomputation must agree field for field, which the test suite
enforces. The offline path only needs a small amount of scenario metadata
(cell-to-site and cell-to-RAT maps, duration, population size, seed), so
exported runs carry it in a sidecar file and stay auditable without the
original scenario.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .events import (
    EventRecord,
    KIND_HANDOVER_EVALUATION,
    KIND_MOBILITY_TICK,
    KIND_SESSION_ARRIVAL,
    KIND_SESSION_END,
)
from .scenario import Scenario


@dataclass(frozen=True)
class KpiReport:
    """Aggregated counters and rates of one simulation run."""

    ho_attempts: int
    ho_successes: int
    hosr: Optional[float]
    signalling_load_per_site: Mapping[str, float]
    new_call_blocking: float
    hotspot_occupancy_mean: float
    per_rat_load: Mapping[str, int]
    seed: int

    def signalling_total(self) -> float:
        return sum(self.signalling_load_per_site.values())


@dataclass(frozen=True)
class RunMeta:
    """Scenario metadata required to recompute KPIs from an event log."""

    duration_epochs: int
    seed: int
    num_users: int
    cell_site: Mapping[str, str]
    cell_rat: Mapping[str, str]


def meta_from_scenario(scenario: Scenario) -> RunMeta:
    return RunMeta(
        duration_epochs=scenario.duration_epochs,
        seed=scenario.seed,
        num_users=scenario.population.num_users,
        cell_site=scenario.site_of_cell(),
        cell_rat={cid: cell.rat for cid, cell in scenario.cells().items()},
    )


def kpi_to_json(report: KpiReport) -> str:
    doc = {
        "ho_attempts": report.ho_attempts,
        "ho_successes": report.ho_successes,
        "hosr": report.hosr,
        "signalling_load_per_site": dict(sorted(report.signalling_load_per_site.items())),
        "new_call_blocking": report.new_call_blocking,
        "hotspot_occupancy_mean": report.hotspot_occupancy_mean,
        "per_rat_load": dict(sorted(report.per_rat_load.items())),
        "seed": report.seed,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def kpi_from_json(text: str) -> KpiReport:
    doc = json.loads(text)
    return KpiReport(
        ho_attempts=doc["ho_attempts"],
        ho_successes=doc["ho_successes"],
        hosr=doc["hosr"],
        signalling_load_per_site=doc["signalling_load_per_site"],
        new_call_blocking=doc["new_call_blocking"],
        hotspot_occupancy_mean=doc["hotspot_occupancy_mean"],
        per_rat_load=doc["per_rat_load"],
        seed=doc["seed"],
    )


def meta_to_json(meta: RunMeta) -> str:
    doc = {
        "duration_epochs": meta.duration_epochs,
        "seed": meta.seed,
        "num_users": meta.num_users,
        "cell_site": dict(sorted(meta.cell_site.items())),
        "cell_rat": dict(sorted(meta.cell_rat.items())),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def meta_from_json(text: str) -> RunMeta:
    doc = json.loads(text)
    return RunMeta(
        duration_epochs=doc["duration_epochs"],
        seed=doc["seed"],
        num_users=doc["num_users"],
        cell_site=doc["cell_site"],
        cell_rat=doc["cell_rat"],
    )


def collect_kpis(log: Sequence[EventRecord], scenario: Scenario) -> KpiReport:
    """Recompute the full KPI report purely from a run's event log."""
    return collect_kpis_meta(log, meta_from_scenario(scenario))


def collect_kpis_meta(log: Sequence[EventRecord], meta: RunMeta) -> KpiReport:
    sites = sorted(set(meta.cell_site.values()))
    rats = sorted(set(meta.cell_rat.values()))
    signalling = {site: 0.0 for site in sites}
    rat_load = {rat: 0 for rat in rats}
    rat_active = {rat: 0 for rat in rats}

    attempts = 0
    successes = 0
    arrivals = 0
    blocked = 0
    occupancy_sum = 0
    inside_count = 0
    user_inside: dict[str, bool] = {}
    session_cell: dict[str, str] = {}

    def site_of(cell_id: str) -> str:
        try:
            return meta.cell_site[cell_id]
        except KeyError:
            raise ValueError(f"log references unknown cell {cell_id!r}") from None

    idx = 0
    total = len(log)
    for epoch in range(meta.duration_epochs):
        while idx < total and log[idx].epoch == epoch:
            rec = log[idx]
            idx += 1
            if rec.kind == KIND_MOBILITY_TICK:
                now_inside = rec.outcome.startswith("inside:")
                was_inside = user_inside.get(rec.user_id, False)
                if now_inside != was_inside:
                    inside_count += 1 if now_inside else -1
                user_inside[rec.user_id] = now_inside
            elif rec.kind == KIND_SESSION_ARRIVAL:
                arrivals += 1
                if rec.outcome == "blocked":
                    blocked += 1
                else:
                    session_cell[rec.session_id] = rec.to_cell
                    rat_active[meta.cell_rat[rec.to_cell]] += 1
                    signalling[site_of(rec.to_cell)] += rec.signalling_cost
            elif rec.kind == KIND_SESSION_END:
                cell = session_cell.pop(rec.session_id)
                rat_active[meta.cell_rat[cell]] -= 1
            elif rec.kind == KIND_HANDOVER_EVALUATION:
                attempts += 1
                signalling[site_of(rec.to_cell)] += rec.signalling_cost
                if rec.outcome == "success":
                    successes += 1
                    old = session_cell[rec.session_id]
                    rat_active[meta.cell_rat[old]] -= 1
                    rat_active[meta.cell_rat[rec.to_cell]] += 1
                    session_cell[rec.session_id] = rec.to_cell
            else:
                raise ValueError(f"unknown event kind {rec.kind!r}")
        occupancy_sum += inside_count
        for rat in rats:
            rat_load[rat] += rat_active[rat]

    if idx != total:
        raise ValueError(
            f"log extends past duration_epochs={meta.duration_epochs}"
        )

    hosr = successes / attempts if attempts > 0 else None
    blocking = blocked / arrivals if arrivals > 0 else 0.0
    occupancy_mean = occupancy_sum / (meta.duration_epochs * meta.num_users)
    return KpiReport(
        ho_attempts=attempts,
        ho_successes=successes,
        hosr=hosr,
        signalling_load_per_site=signalling,
        new_call_blocking=blocking,
        hotspot_occupancy_mean=occupancy_mean,
        per_rat_load=rat_load,
        seed=meta.seed,
    )
