"""RAT selection, admission control and hysteresis-gated vertical handover.

RAT selection is a total, deterministic decision table over the user's
location, mobility class, service class and (for real-time sessions inside a
hotspot) the predicted future location:

    outside hotspot                          -> cellular
    inside, vehicular                        -> cellular (avoid repetitive VHO)
    inside, non-vehicular, non-real-time     -> WLAN (cheap, high bandwidth)
    inside, non-vehicular, real-time, stay   -> WLAN
    inside, non-vehicular, real-time, leave  -> cellular (avoid an unnecessary VHO)

``table2_semantics=False`` selects the alternative reading in which the two
prediction-branch targets are swapped; the rule identifiers still name the
decision branch, not the target.

Admission prefers the decided network but falls back from a full WLAN cell to
its cellular overlay; cellular targets have no WLAN fallback. A handover is
attempted only when the best candidate beats the current score by strictly
more than the configured margin and the session has dwelt long enough on its
current cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Optional, Sequence

from .mobility import VEHICULAR, LocationPrediction

if TYPE_CHECKING:
    from .scenario import Hotspot, SignallingCostModel

REAL_TIME = "realtime"
NON_REAL_TIME = "nonrealtime"
SERVICE_CLASSES = (REAL_TIME, NON_REAL_TIME)

CELLULAR_RATS = ("lte", "umts")

# Decision-branch identifiers (the trailing RAT names the table default).
RULE_OUTSIDE_HOTSPOT = "outside_hotspot"
RULE_VEHICULAR_IN_HOTSPOT = "vehicular_in_hotspot"
RULE_NON_REAL_TIME_WLAN = "non_real_time_wlan"
RULE_REAL_TIME_STAY_WLAN = "real_time_stay_wlan"
RULE_REAL_TIME_LEAVE_LTE = "real_time_leave_lte"
RULE_CAPACITY_FALLBACK = "capacity_fallback"


class MissingPredictionError(ValueError):
    """Real-time in-hotspot decision requested without a location prediction."""


class UnknownCellError(KeyError):
    """An operation referenced a cell id absent from the occupancy table."""


@dataclass(frozen=True)
class UserContext:
    """Decision inputs for one user at one instant; region is a hotspot id or None."""

    region: Optional[str]
    mobility_class: str
    service_class: str
    priority: str
    prediction: Optional[LocationPrediction] = None


@dataclass(frozen=True)
class RatDecision:
    target: str  # RAT kind; "lte" stands for the cellular overlay family
    rule: str


@dataclass(frozen=True)
class HysteresisConfig:
    score_margin: float
    min_dwell_epochs: int
    table2_semantics: bool = True


@dataclass(frozen=True)
class Attempt:
    """A handover attempt; evaluate_handover returns None when no attempt is due."""

    target_cell: str
    score_gain: float
    from_cell: str


@dataclass(frozen=True)
class AdmissionResult:
    kind: str  # "admitted" | "fallback_admitted" | "blocked"
    cell_id: Optional[str]


@dataclass(frozen=True)
class HandoverOutcome:
    success: bool
    cost: float


class CellOccupancy:
    """Per-cell session counts with capacity guarding.

    Mutations raise rather than over-fill, so capacity safety holds by
    construction for any sequence of admissions and handovers.
    """

    def __init__(self, capacities: Mapping[str, int]):
        self.capacities = dict(capacities)
        self.counts: dict[str, int] = {cell: 0 for cell in self.capacities}

    def _check(self, cell_id: str) -> None:
        if cell_id not in self.counts:
            raise UnknownCellError(cell_id)

    def count(self, cell_id: str) -> int:
        self._check(cell_id)
        return self.counts[cell_id]

    def has_free(self, cell_id: str) -> bool:
        self._check(cell_id)
        return self.counts[cell_id] < self.capacities[cell_id]

    def join(self, cell_id: str) -> None:
        self._check(cell_id)
        if not self.has_free(cell_id):
            raise ValueError(f"cell {cell_id} is at capacity")
        self.counts[cell_id] += 1

    def leave(self, cell_id: str) -> None:
        self._check(cell_id)
        if self.counts[cell_id] == 0:
            raise ValueError(f"cell {cell_id} has no sessions to release")
        self.counts[cell_id] -= 1

    def move(self, from_cell: str, to_cell: str) -> None:
        # Join first so a failed join cannot lose the session's residency.
        self.join(to_cell)
        self.leave(from_cell)

    def total(self) -> int:
        return sum(self.counts.values())


def select_rat(ctx: UserContext, table2_semantics: bool = True) -> RatDecision:
    """Apply the RAT decision table to one user context."""
    if ctx.region is None:
        return RatDecision(target="lte", rule=RULE_OUTSIDE_HOTSPOT)
    if ctx.mobility_class == VEHICULAR:
        return RatDecision(target="lte", rule=RULE_VEHICULAR_IN_HOTSPOT)
    if ctx.service_class == NON_REAL_TIME:
        return RatDecision(target="wlan80211", rule=RULE_NON_REAL_TIME_WLAN)
    if ctx.prediction is None:
        raise MissingPredictionError(
            "real-time in-hotspot selection requires a location prediction"
        )
    staying = ctx.prediction.verdict == "stay"
    if table2_semantics:
        if staying:
            return RatDecision(target="wlan80211", rule=RULE_REAL_TIME_STAY_WLAN)
        return RatDecision(target="lte", rule=RULE_REAL_TIME_LEAVE_LTE)
    # Alternative reading: targets of the two prediction branches swapped.
    if staying:
        return RatDecision(target="lte", rule=RULE_REAL_TIME_STAY_WLAN)
    return RatDecision(target="wlan80211", rule=RULE_REAL_TIME_LEAVE_LTE)


def admit(
    decision: RatDecision, hotspot: "Hotspot", occupancy: CellOccupancy
) -> AdmissionResult:
    """Admit a new session within the user's hotspot pair, mutating occupancy.

    A full WLAN target falls back to the cellular overlay; a full cellular
    target blocks (the fallback direction is WLAN -> cellular only).
    """
    if decision.target == "wlan80211":
        if occupancy.has_free(hotspot.wlan_cell):
            occupancy.join(hotspot.wlan_cell)
            return AdmissionResult(kind="admitted", cell_id=hotspot.wlan_cell)
        if occupancy.has_free(hotspot.overlay_cell):
            occupancy.join(hotspot.overlay_cell)
            return AdmissionResult(
                kind="fallback_admitted", cell_id=hotspot.overlay_cell
            )
        return AdmissionResult(kind="blocked", cell_id=None)
    if occupancy.has_free(hotspot.overlay_cell):
        occupancy.join(hotspot.overlay_cell)
        return AdmissionResult(kind="admitted", cell_id=hotspot.overlay_cell)
    return AdmissionResult(kind="blocked", cell_id=None)


def evaluate_handover(
    session,
    current_score: float,
    best_candidate: tuple[str, float],
    cfg: HysteresisConfig,
    dwell_epochs: int,
) -> Optional[Attempt]:
    """Gate a potential handover behind the score margin and dwell time.

    Attempt iff candidate score - current score > margin (strictly) and the
    session has sat on its current cell for at least min_dwell_epochs.
    """
    cell_id, candidate_score = best_candidate
    gain = candidate_score - current_score
    if gain > cfg.score_margin and dwell_epochs >= cfg.min_dwell_epochs:
        return Attempt(
            target_cell=cell_id, score_gain=gain, from_cell=session.current_cell
        )
    return None


def execute_handover(
    action: Attempt, occupancy: CellOccupancy, signalling: "SignallingCostModel"
) -> HandoverOutcome:
    """Carry out an attempt: succeeds iff the target has free capacity now.

    On success the session leaves its old cell and joins the target in one
    transaction; on failure occupancy is untouched. The attempt cost is
    always charged, the completion cost only on success.
    """
    if occupancy.has_free(action.target_cell):
        occupancy.move(action.from_cell, action.target_cell)
        return HandoverOutcome(
            success=True, cost=signalling.cost_ho_attempt + signalling.cost_ho_complete
        )
    return HandoverOutcome(success=False, cost=signalling.cost_ho_attempt)


def replay_attempts(
    trace: Sequence[tuple[float, float, int]], score_margin: float, min_dwell_epochs: int
) -> int:
    """Count attempts over a fixed (current, candidate, dwell) tuple trace.

    Re-evaluates a recorded evaluation trace under different hysteresis
    settings; on a fixed trace the count is monotone non-increasing in both
    the margin and the dwell requirement.
    """
    n = 0
    for current_score, candidate_score, dwell in trace:
        if (
            candidate_score - current_score > score_margin
            and dwell >= min_dwell_epochs
        ):
            n += 1
    return n
