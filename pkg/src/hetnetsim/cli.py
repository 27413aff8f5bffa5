"""Command-line interface: validate, run, sweep and report.

Exit codes: 0 success, 1 domain/validation failure, 2 I/O or usage error.
All file outputs are written atomically (temp file + rename) and are pure
functions of the inputs, so repeated invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
import tempfile
from pathlib import Path

from .engine import UnknownParameterError, run, sweep, sweep_replay
from .events import EventLogError, read_events_csv, write_events_csv
from .kpi import (
    KpiReport,
    collect_kpis_meta,
    kpi_to_json,
    meta_from_json,
    meta_from_scenario,
    meta_to_json,
)
from .scenario import (
    Scenario,
    ScenarioError,
    ScenarioValidationError,
    apply_preset,
    parse_scenario,
    validate_scenario,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

META_FILENAME = "run_meta.json"


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fp:
            fp.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_scenario(path: str) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SystemExit(_fail(EXIT_USAGE, f"cannot read {path}: {exc}"))
    try:
        return parse_scenario(text)
    except ScenarioValidationError as exc:
        for v in exc.violations:
            print(f"{v.path}: {v.message}", file=sys.stderr)
        raise SystemExit(EXIT_DOMAIN)
    except ScenarioError as exc:
        raise SystemExit(_fail(EXIT_DOMAIN, str(exc)))


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _fmt_hosr(report: KpiReport) -> str:
    return "n/a" if report.hosr is None else f"{report.hosr:.4f}"


def _print_summary(report: KpiReport) -> None:
    print(f"ho_attempts          {report.ho_attempts}")
    print(f"ho_successes         {report.ho_successes}")
    print(f"hosr                 {_fmt_hosr(report)}")
    print(f"new_call_blocking    {report.new_call_blocking:.4f}")
    print(f"hotspot_occupancy    {report.hotspot_occupancy_mean:.4f}")
    print(f"signalling_total     {report.signalling_total():.2f}")
    for site, load in sorted(report.signalling_load_per_site.items()):
        print(f"  signalling[{site}]  {load:.2f}")
    for rat, load in sorted(report.per_rat_load.items()):
        print(f"  rat_load[{rat}]  {load}")


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        text = Path(args.scenario).read_text()
    except OSError as exc:
        return _fail(EXIT_USAGE, f"cannot read {args.scenario}: {exc}")
    try:
        scenario = parse_scenario(text)
    except ScenarioValidationError as exc:
        for v in exc.violations:
            print(f"{v.path}: {v.message}", file=sys.stderr)
        return EXIT_DOMAIN
    except ScenarioError as exc:
        return _fail(EXIT_DOMAIN, str(exc))
    violations = validate_scenario(scenario)
    if violations:
        for v in violations:
            print(f"{v.path}: {v.message}", file=sys.stderr)
        return EXIT_DOMAIN
    print(f"{args.scenario}: ok ({scenario.name})")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.scenario)
    if args.preset:
        try:
            scenario = apply_preset(scenario, args.preset)
        except KeyError as exc:
            return _fail(EXIT_USAGE, str(exc.args[0]))
    if args.seed is not None:
        from dataclasses import replace
        scenario = replace(scenario, seed=args.seed)
    result = run(scenario)
    if args.out:
        outdir = Path(args.out)
        try:
            outdir.mkdir(parents=True, exist_ok=True)
            _atomic_write(outdir / "kpi.json", kpi_to_json(result.report))
            buf = io.StringIO()
            write_events_csv(result.log, buf)
            _atomic_write(outdir / "events.csv", buf.getvalue())
            _atomic_write(
                outdir / META_FILENAME, meta_to_json(meta_from_scenario(scenario))
            )
        except OSError as exc:
            return _fail(EXIT_USAGE, f"cannot write to {args.out}: {exc}")
    _print_summary(result.report)
    return EXIT_OK


def _parse_values(text: str) -> list[float]:
    if not text:
        return []
    return [float(v) for v in text.split(",")]


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.scenario)
    try:
        values = _parse_values(args.values)
    except ValueError as exc:
        return _fail(EXIT_USAGE, f"bad --values: {exc}")
    outdir = Path(args.out) if args.out else None
    if outdir is not None:
        outdir.mkdir(parents=True, exist_ok=True)
    try:
        rows: list[tuple[float, str, str, str, str]] = []
        if args.mode == "replay":
            for value, attempts in sweep_replay(scenario, args.axis, values):
                rows.append((value, str(attempts), "", "", ""))
        else:
            for index, (value, report) in enumerate(sweep(scenario, args.axis, values)):
                rows.append((
                    value,
                    str(report.ho_attempts),
                    _fmt_hosr(report),
                    repr(report.signalling_total()),
                    repr(report.new_call_blocking),
                ))
                if outdir is not None:
                    subdir = outdir / f"value_{index}"
                    subdir.mkdir(parents=True, exist_ok=True)
                    _atomic_write(subdir / "kpi.json", kpi_to_json(report))
    except UnknownParameterError as exc:
        if outdir is not None:
            _cleanup_dir(outdir)
        return _fail(EXIT_USAGE, str(exc))
    except ScenarioValidationError as exc:
        if outdir is not None:
            _cleanup_dir(outdir)
        return _fail(EXIT_DOMAIN, str(exc))

    lines = ["value,ho_attempts,hosr,signalling_total,blocking"]
    for value, attempts, hosr, sig_total, blocking in rows:
        lines.append(f"{value!r},{attempts},{hosr},{sig_total},{blocking}")
    csv_text = "\n".join(lines) + "\n"
    if outdir is not None:
        _atomic_write(outdir / "sweep.csv", csv_text)
    print(csv_text, end="")
    return EXIT_OK


def _cleanup_dir(outdir: Path) -> None:
    # Partial-failure policy: leave no half-written sweep behind.
    import shutil

    shutil.rmtree(outdir, ignore_errors=True)


def cmd_report(args: argparse.Namespace) -> int:
    events_path = Path(args.events)
    meta_path = events_path.parent / META_FILENAME
    try:
        meta = meta_from_json(meta_path.read_text())
    except OSError as exc:
        return _fail(
            EXIT_USAGE,
            f"cannot read run metadata {meta_path}: {exc} "
            f"(report expects the {META_FILENAME} written next to events.csv)",
        )
    try:
        with open(events_path, newline="") as fp:
            log = read_events_csv(fp)
    except OSError as exc:
        return _fail(EXIT_USAGE, f"cannot read {args.events}: {exc}")
    except EventLogError as exc:
        return _fail(EXIT_DOMAIN, str(exc))
    try:
        report = collect_kpis_meta(log, meta)
    except ValueError as exc:
        return _fail(EXIT_DOMAIN, f"inconsistent event log: {exc}")
    _print_summary(report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetnetsim",
        description="Heterogeneous wireless network handover simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario document")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="simulate one scenario")
    p.add_argument("scenario")
    p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p.add_argument("--out", default=None, help="directory for kpi.json / events.csv")
    p.add_argument("--preset", default=None, help="apply a named handover preset")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run a parameter sweep")
    p.add_argument("scenario")
    p.add_argument("--axis", required=True, help="parameter path, e.g. handover.score_margin")
    p.add_argument("--values", required=True, help="comma-separated numeric values")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument(
        "--mode", choices=("closed", "replay"), default="closed",
        help="closed-loop runs or replayed-trace attempt counting",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="recompute KPIs from an exported event log")
    p.add_argument("events")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
