"""Deterministic per-epoch simulation loop, parameter sweeps and presets.

Each epoch processes, in order: session ends, mobility ticks, session
arrivals (RAT selection + admission) and handover evaluations for the active
sessions. All randomness comes from named subsystem streams drawn in fixed-
size batches, so two runs of the same (scenario, seed) are identical and two
scenarios differing only in decision parameters consume the same draws.

Handover candidates are topological: the user's hotspot pair when inside,
the overlay cell alone when outside, filtered to the RAT family the decision
table prescribes for the user's current context. A session whose current
cell fell out of coverage scores 0.0, so the hysteresis rule itself forces
the rescue handover back under coverage.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .events import (
    EventRecord,
    KIND_HANDOVER_EVALUATION,
    KIND_MOBILITY_TICK,
    KIND_SESSION_ARRIVAL,
    KIND_SESSION_END,
    region_label,
)
from .fuzzy import PRIORITY_LABELS, score_network
from .jrrm import (
    CELLULAR_RATS,
    CellOccupancy,
    NON_REAL_TIME,
    REAL_TIME,
    UserContext,
    admit,
    evaluate_handover,
    execute_handover,
    select_rat,
)
from .kpi import KpiReport, collect_kpis
from .mobility import (
    MIN_EVIDENCE_EPOCHS,
    NON_VEHICULAR,
    VEHICULAR,
    LocationPrediction,
    leave_probability,
)
from .rng import stream
from .scenario import Scenario, ScenarioValidationError, validate_scenario

THREADS_ENV_VAR = "HETNETSIM_THREADS"


class UnknownParameterError(ValueError):
    """A sweep axis did not name a numeric scenario parameter."""


@dataclass
class ActiveSession:
    """One admitted session; mutable engine state."""

    session_id: str
    user_id: str
    user_index: int
    service_class: str
    priority: str
    current_cell: str
    start_epoch: int
    end_epoch: int
    dwell_epochs_on_current_cell: int = 0


@dataclass(frozen=True)
class RunResult:
    report: KpiReport
    log: tuple[EventRecord, ...]
    eval_trace: tuple[tuple[float, float, int], ...]


def _geometric_length(u: float, mean: float) -> int:
    """Session length >= 1 with the given mean, from one uniform draw."""
    if mean <= 1.0:
        return 1
    q = 1.0 - 1.0 / mean  # survival probability per epoch
    return 1 + int(math.log(1.0 - u) / math.log(q))


def _pick_priority(u: float, mix: Sequence[tuple[str, float]]) -> str:
    acc = 0.0
    for label, weight in mix:
        acc += weight
        if u < acc:
            return label
    return mix[-1][0]


def run(scenario: Scenario) -> RunResult:
    """Simulate one scenario; deterministic given (scenario, seed)."""
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioValidationError(violations)

    cells = scenario.cells()
    site_of = scenario.site_of_cell()
    rat_of = {cid: cell.rat for cid, cell in cells.items()}
    hotspots = sorted(scenario.hotspots, key=lambda h: h.id)
    n_hotspots = len(hotspots)
    occupancy = CellOccupancy(
        {cid: cell.capacity_sessions for cid, cell in cells.items()}
    )

    # Static per-cell scores for every priority class.
    score: dict[tuple[str, str], float] = {}
    for cid, cell in cells.items():
        for prio in PRIORITY_LABELS:
            score[(cid, prio)] = score_network(
                cell.criteria.with_priority(prio), scenario.fuzzy, rat=cell.rat
            )

    n = scenario.population.num_users
    seed = scenario.seed
    mob = scenario.mobility
    wl = scenario.workload
    sig_model = scenario.signalling
    hyst = scenario.handover
    duration = scenario.duration_epochs

    vehicular = stream(seed, "population").random(n) < scenario.population.p_vehicular
    p_exit_eff = np.where(
        vehicular, min(1.0, mob.vehicular_multiplier * mob.p_exit), mob.p_exit
    )
    p_enter_eff = np.where(
        vehicular, min(1.0, mob.vehicular_multiplier * mob.p_enter), mob.p_enter
    )
    if n_hotspots == 0:
        p_enter_eff = np.zeros(n)
    home_idx = np.arange(n) % n_hotspots if n_hotspots else np.zeros(n, dtype=int)
    user_ids = [f"u{i:05d}" for i in range(n)]

    # Start at the per-user stationary occupancy so long-run means are unbiased.
    denom = p_exit_eff + p_enter_eff
    pi_inside = np.divide(
        p_enter_eff, denom, out=np.zeros(n), where=denom > 0
    )
    inside = stream(seed, "init_region").random(n) < pi_inside

    mob_rng = stream(seed, "mobility")
    arr_rng = stream(seed, "arrival")
    svc_rng = stream(seed, "service")

    inside_obs = np.zeros(n, dtype=np.int64)
    exits_obs = np.zeros(n, dtype=np.int64)
    horizon = max(1, round(wl.mean_session_epochs))
    mix = sorted(wl.priority_mix.items())

    sessions: dict[str, ActiveSession] = {}
    user_session: list[Optional[str]] = [None] * n
    end_bucket: dict[int, list[str]] = defaultdict(list)
    session_counter = 0

    log: list[EventRecord] = []
    trace: list[tuple[float, float, int]] = []
    seq = 0

    attempts = 0
    successes = 0
    arrivals_total = 0
    blocked_total = 0
    signalling = {site: 0.0 for site in sorted({s.id for s in scenario.sites})}
    rats = sorted(set(rat_of.values()))
    rat_load = {rat: 0 for rat in rats}
    rat_active = {rat: 0 for rat in rats}
    occupancy_sum = 0

    def emit(kind: str, epoch: int, **fields) -> None:
        nonlocal seq
        log.append(EventRecord(epoch=epoch, sequence=seq, kind=kind, **fields))
        seq += 1

    def predict(i: int) -> LocationPrediction:
        if inside_obs[i] >= MIN_EVIDENCE_EPOCHS:
            p_hat = exits_obs[i] / inside_obs[i]
        else:
            p_hat = float(p_exit_eff[i])
        prob = leave_probability(p_hat, horizon)
        return LocationPrediction(
            verdict="leave" if prob > 0.5 else "stay",
            estimated_leave_probability=prob,
            evidence_count=int(inside_obs[i]),
        )

    def user_context(i: int, service_class: str, priority: str) -> UserContext:
        region = hotspots[home_idx[i]].id if (n_hotspots and inside[i]) else None
        prediction = None
        if region is not None and service_class == REAL_TIME:
            prediction = predict(i)
        return UserContext(
            region=region,
            mobility_class=VEHICULAR if vehicular[i] else NON_VEHICULAR,
            service_class=service_class,
            priority=priority,
            prediction=prediction,
        )

    for epoch in range(duration):
        # Phase 1: session ends free capacity before new demands.
        for sid in end_bucket.pop(epoch, ()):
            session = sessions.pop(sid)
            occupancy.leave(session.current_cell)
            rat_active[rat_of[session.current_cell]] -= 1
            user_session[session.user_index] = None
            emit(
                KIND_SESSION_END, epoch,
                user_id=session.user_id, session_id=sid,
                from_cell=session.current_cell, outcome="ended",
            )

        # Phase 2: mobility. Epoch 0 places users, later epochs step them.
        if epoch == 0:
            for i in range(n):
                emit(
                    KIND_MOBILITY_TICK, epoch,
                    user_id=user_ids[i],
                    outcome=region_label(
                        hotspots[home_idx[i]].id if (n_hotspots and inside[i]) else None
                    ),
                )
        else:
            draws = mob_rng.random(n)
            was_inside = inside
            exits = was_inside & (draws < p_exit_eff)
            entries = ~was_inside & (draws < p_enter_eff)
            inside = (was_inside & ~exits) | entries
            inside_obs += was_inside
            exits_obs += exits
            for i in np.nonzero(was_inside != inside)[0]:
                emit(
                    KIND_MOBILITY_TICK, epoch,
                    user_id=user_ids[i],
                    outcome=region_label(
                        hotspots[home_idx[i]].id if inside[i] else None
                    ),
                )
        occupancy_sum += int(inside.sum())

        # Phase 3: arrivals. Draw batches are fixed-size regardless of outcomes.
        arrival_draws = arr_rng.random(n)
        service_draws = svc_rng.random((3, n))
        for i in np.nonzero(arrival_draws < wl.arrival_rate_per_user_per_epoch)[0]:
            if user_session[i] is not None:
                continue  # one active session per user
            arrivals_total += 1
            service_class = (
                REAL_TIME if service_draws[0, i] < wl.p_realtime else NON_REAL_TIME
            )
            priority = _pick_priority(service_draws[1, i], mix)
            length = _geometric_length(service_draws[2, i], wl.mean_session_epochs)
            if n_hotspots == 0:
                blocked_total += 1
                emit(
                    KIND_SESSION_ARRIVAL, epoch,
                    user_id=user_ids[i], outcome="blocked",
                )
                continue
            hotspot = hotspots[home_idx[i]]
            ctx = user_context(i, service_class, priority)
            decision = select_rat(ctx, hyst.table2_semantics)
            result = admit(decision, hotspot, occupancy)
            if result.kind == "blocked":
                blocked_total += 1
                emit(
                    KIND_SESSION_ARRIVAL, epoch,
                    user_id=user_ids[i], outcome="blocked",
                )
                continue
            sid = f"s{session_counter:08d}"
            session_counter += 1
            sessions[sid] = ActiveSession(
                session_id=sid,
                user_id=user_ids[i],
                user_index=int(i),
                service_class=service_class,
                priority=priority,
                current_cell=result.cell_id,
                start_epoch=epoch,
                end_epoch=epoch + length,
            )
            user_session[i] = sid
            end_bucket[epoch + length].append(sid)
            rat_active[rat_of[result.cell_id]] += 1
            signalling[site_of[result.cell_id]] += sig_model.cost_admit
            emit(
                KIND_SESSION_ARRIVAL, epoch,
                user_id=user_ids[i], session_id=sid,
                to_cell=result.cell_id, outcome=result.kind,
                signalling_cost=sig_model.cost_admit,
            )

        # Phase 4: handover evaluation per active session (creation order ==
        # ascending session id; dicts preserve insertion order).
        for sid in list(sessions):
            session = sessions[sid]
            i = session.user_index
            hotspot = hotspots[home_idx[i]]
            in_hotspot = bool(inside[i])
            coverage = (
                (hotspot.wlan_cell, hotspot.overlay_cell)
                if in_hotspot
                else (hotspot.overlay_cell,)
            )
            ctx = user_context(i, session.service_class, session.priority)
            decision = select_rat(ctx, hyst.table2_semantics)
            if decision.target == "wlan80211":
                wanted = lambda cid: rat_of[cid] == "wlan80211"
            else:
                wanted = lambda cid: rat_of[cid] in CELLULAR_RATS
            candidates = [
                cid for cid in coverage if wanted(cid) and cid != session.current_cell
            ]
            if not candidates:
                continue
            best_cell = min(
                candidates, key=lambda cid: (-score[(cid, session.priority)], cid)
            )
            best_score = score[(best_cell, session.priority)]
            current_score = (
                score[(session.current_cell, session.priority)]
                if session.current_cell in coverage
                else 0.0  # current cell out of coverage: any candidate beats it
            )
            dwell = session.dwell_epochs_on_current_cell
            trace.append((current_score, best_score, dwell))
            action = evaluate_handover(
                session, current_score, (best_cell, best_score), hyst, dwell
            )
            if action is None:
                continue
            outcome = execute_handover(action, occupancy, sig_model)
            attempts += 1
            signalling[site_of[action.target_cell]] += outcome.cost
            if outcome.success:
                successes += 1
                rat_active[rat_of[session.current_cell]] -= 1
                rat_active[rat_of[action.target_cell]] += 1
                session.current_cell = action.target_cell
                session.dwell_epochs_on_current_cell = -1  # +1 below -> 0 epochs
            emit(
                KIND_HANDOVER_EVALUATION, epoch,
                user_id=session.user_id, session_id=sid,
                from_cell=action.from_cell, to_cell=action.target_cell,
                outcome="success" if outcome.success else "failure",
                signalling_cost=outcome.cost,
            )

        # End of epoch: dwell clocks and per-RAT session-epoch crediting.
        for session in sessions.values():
            session.dwell_epochs_on_current_cell += 1
        for rat in rats:
            rat_load[rat] += rat_active[rat]

    report = KpiReport(
        ho_attempts=attempts,
        ho_successes=successes,
        hosr=successes / attempts if attempts > 0 else None,
        signalling_load_per_site=signalling,
        new_call_blocking=blocked_total / arrivals_total if arrivals_total else 0.0,
        hotspot_occupancy_mean=occupancy_sum / (duration * n),
        per_rat_load=rat_load,
        seed=seed,
    )
    return RunResult(report=report, log=tuple(log), eval_trace=tuple(trace))


# ---------------------------------------------------------------------------
# Parameter addressing and sweeps

_SWEEP_AXES = {
    "duration_epochs": int,
    "handover.score_margin": float,
    "handover.min_dwell_epochs": int,
    "mobility.p_exit": float,
    "mobility.p_enter": float,
    "mobility.vehicular_multiplier": float,
    "population.num_users": int,
    "population.p_vehicular": float,
    "workload.arrival_rate_per_user_per_epoch": float,
    "workload.mean_session_epochs": float,
    "workload.p_realtime": float,
    "signalling.cost_ho_attempt": float,
    "signalling.cost_ho_complete": float,
    "signalling.cost_admit": float,
}


def set_parameter(scenario: Scenario, axis: str, value) -> Scenario:
    """Return the scenario with one numeric parameter replaced."""
    if axis not in _SWEEP_AXES:
        raise UnknownParameterError(
            f"unknown parameter path {axis!r}; valid: {sorted(_SWEEP_AXES)}"
        )
    caster = _SWEEP_AXES[axis]
    if caster is int:
        if float(value) != int(value):
            raise UnknownParameterError(f"{axis} requires an integer, got {value!r}")
        value = int(value)
    else:
        value = float(value)
    if "." not in axis:
        return replace(scenario, **{axis: value})
    group, field_name = axis.split(".", 1)
    return replace(scenario, **{group: replace(getattr(scenario, group), **{field_name: value})})


def _max_workers(explicit: Optional[int]) -> int:
    if explicit is not None:
        return max(1, explicit)
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def sweep(
    scenario: Scenario,
    axis: str,
    values: Sequence[float],
    max_workers: Optional[int] = None,
) -> list[tuple[float, KpiReport]]:
    """One independent closed-loop run per value, seeded with seed + index.

    Results are returned in input order regardless of execution order;
    HETNETSIM_THREADS caps the worker pool when max_workers is not given.
    """
    scenarios = [
        replace(set_parameter(scenario, axis, v), seed=scenario.seed + i)
        for i, v in enumerate(values)
    ]
    if not scenarios:
        return []
    workers = min(_max_workers(max_workers), len(scenarios))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda s: run(s).report, scenarios))
    return list(zip(list(values), results))


_REPLAY_AXES = ("handover.score_margin", "handover.min_dwell_epochs")


def sweep_replay(
    scenario: Scenario, axis: str, values: Sequence[float]
) -> list[tuple[float, int]]:
    """Re-evaluate one recorded evaluation trace under swept hysteresis values.

    Runs the scenario once, then counts the attempts its (current score,
    candidate score, dwell) trace would produce under each swept margin or
    dwell requirement. On the fixed trace the counts are monotone
    non-increasing in both parameters.
    """
    from .jrrm import replay_attempts

    if axis not in _REPLAY_AXES:
        raise UnknownParameterError(
            f"replay sweeps support {_REPLAY_AXES}, got {axis!r}"
        )
    if not values:
        return []
    baseline = run(scenario)
    out: list[tuple[float, int]] = []
    for v in values:
        margin = scenario.handover.score_margin
        dwell = scenario.handover.min_dwell_epochs
        if axis == "handover.score_margin":
            margin = float(v)
        else:
            dwell = int(v)
        out.append((v, replay_attempts(baseline.eval_trace, margin, dwell)))
    return out


def audit_attempts(result: RunResult) -> int:
    """Independent attempt count straight from the event log."""
    return sum(1 for rec in result.log if rec.kind == KIND_HANDOVER_EVALUATION)


def verify_offline(result: RunResult, scenario: Scenario) -> bool:
    """True iff the offline KPI recomputation equals the online report."""
    return collect_kpis(list(result.log), scenario) == result.report
