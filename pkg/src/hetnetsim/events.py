"""Simulation event records and their CSV export format.

One record per observable event, totally ordered by (epoch, sequence).
Mobility ticks are logged only when a user's region actually changes (plus
one placement record per user at epoch 0), and handover evaluations only
when they produce an attempt; the log stays sufficient to recompute every
KPI offline.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterable, Optional

KIND_SESSION_END = "session_end"
KIND_MOBILITY_TICK = "mobility_tick"
KIND_SESSION_ARRIVAL = "session_arrival"
KIND_HANDOVER_EVALUATION = "handover_evaluation"

# Processing (and tie-break) order of kinds within one epoch.
KIND_ORDER = (
    KIND_SESSION_END,
    KIND_MOBILITY_TICK,
    KIND_SESSION_ARRIVAL,
    KIND_HANDOVER_EVALUATION,
)

CSV_COLUMNS = (
    "epoch", "sequence", "kind", "user_id", "session_id",
    "from_cell", "to_cell", "outcome", "signalling_cost",
)


class EventLogError(ValueError):
    """Malformed event log row; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class EventRecord:
    epoch: int
    sequence: int
    kind: str
    user_id: str = ""
    session_id: str = ""
    from_cell: str = ""
    to_cell: str = ""
    outcome: str = ""
    signalling_cost: float = 0.0


def region_label(hotspot_id: Optional[str]) -> str:
    """Region encoding used in mobility-tick outcomes."""
    return "outside" if hotspot_id is None else f"inside:{hotspot_id}"


def write_events_csv(log: Iterable[EventRecord], fp: IO[str]) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in log:
        writer.writerow([
            rec.epoch, rec.sequence, rec.kind, rec.user_id, rec.session_id,
            rec.from_cell, rec.to_cell, rec.outcome, repr(rec.signalling_cost),
        ])


def read_events_csv(fp: IO[str]) -> list[EventRecord]:
    """Parse an exported log; raises EventLogError with the offending line."""
    reader = csv.reader(fp)
    try:
        header = next(reader)
    except StopIteration:
        raise EventLogError(1, "missing header row") from None
    if tuple(header) != CSV_COLUMNS:
        raise EventLogError(1, f"unexpected header {header!r}")
    log: list[EventRecord] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise EventLogError(
                lineno, f"expected {len(CSV_COLUMNS)} fields, got {len(row)}"
            )
        try:
            rec = EventRecord(
                epoch=int(row[0]),
                sequence=int(row[1]),
                kind=row[2],
                user_id=row[3],
                session_id=row[4],
                from_cell=row[5],
                to_cell=row[6],
                outcome=row[7],
                signalling_cost=float(row[8]),
            )
        except ValueError as exc:
            raise EventLogError(lineno, str(exc)) from None
        if rec.kind not in KIND_ORDER:
            raise EventLogError(lineno, f"unknown event kind {rec.kind!r}")
        log.append(rec)
    return log
