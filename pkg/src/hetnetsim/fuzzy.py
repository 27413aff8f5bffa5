"""Fuzzy multi-criteria scoring of candidate access networks.

A candidate network is described by five criteria: financial cost (cents/Kb),
bandwidth (Mbit/s), received signal strength (dBm), user priority class and
network delay (ms). The four numeric criteria are fuzzified over trapezoidal
linguistic sets that form a partition of unity on their universe; the
categorical priority maps crisply onto its own label. The crisp score of a
candidate is the weighted mean of per-criterion expected label utilities.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

log = logging.getLogger(__name__)

# Weight order: cost, bandwidth, rss, priority, delay.
CRITERIA_ORDER = ("cost", "bandwidth", "rss", "priority", "delay")
NUMERIC_CRITERIA = ("cost", "bandwidth", "rss", "delay")
PRIORITY_LABELS = ("Insensitive", "Ordinary", "HighQoS")


class FuzzyConfigError(ValueError):
    """Raised for unusable fuzzy configuration (e.g. all-zero weights)."""


@dataclass(frozen=True)
class CriteriaVector:
    """One candidate network at one decision instant."""

    cost: float        # cents per Kb
    bandwidth: float   # Mbit/s
    rss: float         # dBm
    priority: str      # one of PRIORITY_LABELS
    delay: float       # ms


@dataclass(frozen=True)
class MembershipFunction:
    """Trapezoid with breakpoints a <= b <= c <= d; degree 1 on [b, c]."""

    label: str
    a: float
    b: float
    c: float
    d: float


@dataclass(frozen=True)
class FuzzifiedVector:
    """Per criterion, a label -> membership degree map."""

    degrees: Mapping[str, Mapping[str, float]]


@dataclass(frozen=True)
class FuzzyConfig:
    """Linguistic sets, criterion weights and label utilities.

    ``sets`` maps each numeric criterion to its ordered membership functions;
    they must form a partition of unity on ``universes[criterion]``.
    ``weights`` is ordered per CRITERIA_ORDER. ``priority_utilities`` holds a
    "default" row plus optional per-RAT rows keyed by the RAT string; the RAT
    row is used when the caller supplies the candidate's RAT kind.
    """

    sets: Mapping[str, tuple[MembershipFunction, ...]]
    universes: Mapping[str, tuple[float, float]]
    weights: tuple[float, float, float, float, float]
    label_utilities: Mapping[str, Mapping[str, float]]
    priority_utilities: Mapping[str, Mapping[str, float]]
    priority_labels: tuple[str, ...] = PRIORITY_LABELS

    def priority_row(self, rat: Optional[str]) -> Mapping[str, float]:
        if rat is not None and rat in self.priority_utilities:
            return self.priority_utilities[rat]
        return self.priority_utilities["default"]


def membership(mf: MembershipFunction, x: float) -> float:
    """Trapezoidal membership degree of x, in [0, 1]."""
    if x < mf.a or x > mf.d:
        return 0.0
    if mf.b <= x <= mf.c:
        return 1.0
    if x < mf.b:
        return (x - mf.a) / (mf.b - mf.a)
    return (mf.d - x) / (mf.d - mf.c)


def fuzzify(v: CriteriaVector, cfg: FuzzyConfig) -> FuzzifiedVector:
    """Map a crisp criteria vector onto linguistic membership degrees.

    Numeric values outside their universe are clamped to the nearest edge
    (logged at debug level); the categorical priority maps with degree 1.0
    onto its own label.
    """
    degrees: dict[str, dict[str, float]] = {}
    for crit in NUMERIC_CRITERIA:
        x = getattr(v, crit)
        lo, hi = cfg.universes[crit]
        if x < lo or x > hi:
            clamped = min(max(x, lo), hi)
            log.debug("clamping %s=%g to universe [%g, %g]", crit, x, lo, hi)
            x = clamped
        degrees[crit] = {mf.label: membership(mf, x) for mf in cfg.sets[crit]}
    degrees["priority"] = {
        label: 1.0 if label == v.priority else 0.0 for label in cfg.priority_labels
    }
    return FuzzifiedVector(degrees=degrees)


def score_network(
    v: CriteriaVector, cfg: FuzzyConfig, rat: Optional[str] = None
) -> float:
    """Weighted defuzzified score of one candidate, in [0, 1].

    score = sum_i w_i * E_i[utility] / sum_i w_i, where E_i is the expected
    label utility of criterion i under its membership degrees. ``rat``
    selects the per-RAT priority utility row when the config defines one.
    """
    total_weight = sum(cfg.weights)
    if total_weight == 0.0:
        raise FuzzyConfigError("all-zero weight vector")
    fz = fuzzify(v, cfg)
    num = 0.0
    for w, crit in zip(cfg.weights, CRITERIA_ORDER):
        if crit == "priority":
            utilities = cfg.priority_row(rat)
        else:
            utilities = cfg.label_utilities[crit]
        expected = 0.0
        for label, degree in fz.degrees[crit].items():
            expected += degree * utilities[label]
        num += w * expected
    return num / total_weight


def rank_networks(
    candidates: Sequence[tuple[str, CriteriaVector]],
    cfg: FuzzyConfig,
    rats: Optional[Mapping[str, str]] = None,
) -> list[tuple[str, float]]:
    """Rank candidate (cell id, criteria) pairs by score, descending.

    Ties break by ascending cell id so the ordering is fully deterministic.
    ``rats`` optionally maps cell ids to RAT kinds for priority utilities.
    """
    if not candidates:
        raise ValueError("empty candidate list")
    scored = [
        (cell_id, score_network(v, cfg, rat=rats.get(cell_id) if rats else None))
        for cell_id, v in candidates
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored


def _partition(labels_breaks: Sequence[tuple[str, float, float, float, float]]):
    return tuple(MembershipFunction(lbl, a, b, c, d) for lbl, a, b, c, d in labels_breaks)


def default_fuzzy_config() -> FuzzyConfig:
    """Default sets, weights and utilities shipped with the cluster scenario.

    Breakpoints are anchored so the reference WLAN (0.001 cents/Kb, 11 Mbit/s,
    +38 dBm, 1.25 ms) sits on the best plateau of every criterion and the
    reference UMTS values (0.220, 0.5, -100, 18.54) on the worst.
    """
    sets = {
        "cost": _partition([
            ("Economic", 0.0, 0.0, 0.01, 0.04),
            ("Normal", 0.01, 0.04, 0.07, 0.10),
            ("Expensive", 0.07, 0.10, 1.0, 1.0),
        ]),
        "bandwidth": _partition([
            ("Poor", 0.0, 0.0, 1.0, 2.5),
            ("Med", 1.0, 2.5, 4.5, 6.0),
            ("Good", 4.5, 6.0, 20.0, 20.0),
        ]),
        "rss": _partition([
            ("Low", -120.0, -120.0, -90.0, -60.0),
            ("Normal", -90.0, -60.0, -30.0, 0.0),
            ("High", -30.0, 0.0, 40.0, 40.0),
        ]),
        "delay": _partition([
            ("Low", 0.0, 0.0, 5.0, 8.0),
            ("Med", 5.0, 8.0, 12.0, 15.0),
            ("High", 12.0, 15.0, 30.0, 30.0),
        ]),
    }
    universes = {
        "cost": (0.0, 1.0),
        "bandwidth": (0.0, 20.0),
        "rss": (-120.0, 40.0),
        "delay": (0.0, 30.0),
    }
    label_utilities = {
        "cost": {"Economic": 1.0, "Normal": 0.5, "Expensive": 0.0},
        "bandwidth": {"Poor": 0.0, "Med": 0.5, "Good": 1.0},
        "rss": {"Low": 0.0, "Normal": 0.5, "High": 1.0},
        "delay": {"Low": 1.0, "Med": 0.5, "High": 0.0},
    }
    # Cost-tolerant users value a best-effort network; QoS-bound users value
    # the guaranteed cellular layer. The default row applies when the
    # candidate's RAT kind is unknown.
    priority_utilities = {
        "default": {"Insensitive": 1.0, "Ordinary": 0.5, "HighQoS": 0.0},
        "wlan80211": {"Insensitive": 1.0, "Ordinary": 0.5, "HighQoS": 0.0},
        "lte": {"Insensitive": 0.0, "Ordinary": 0.5, "HighQoS": 1.0},
        "umts": {"Insensitive": 0.0, "Ordinary": 0.5, "HighQoS": 1.0},
    }
    return FuzzyConfig(
        sets=sets,
        universes=universes,
        weights=(0.0625, 0.0791, 0.0211, 0.0981, 0.4991),
        label_utilities=label_utilities,
        priority_utilities=priority_utilities,
    )
