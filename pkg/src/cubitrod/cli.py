"""Command line front end.

    cubitrod measure --rod royal --length-fingers "3 5/8"
    cubitrod draw --reading "2 4/5"
    cubitrod decompose --value 9/10 --strategy two-thirds
    cubitrod analyze gaps --range 0:1
    cubitrod convert --value 1 --from royal_cubit --to finger
    cubitrod rods show royal

Results go to stdout, diagnostics to stderr; the exit status is 0 only on
success.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import analysis, egyptian, measurement, rods, units
from .numerics import format_rational, parse_quantity
from .validation import check_length, check_rod, parse_range

PROG = "cubitrod"


def _mixed(x) -> str:
    return format_rational(x, "mixed")


def _dec(x) -> str:
    return format_rational(x, "decimal", analysis.DECIMAL_DIGITS)


@dataclass
class Output:
    """What a command produced, in every format it can be shown in."""

    payload: dict
    text: list[str]
    table: tuple[list, list] | None = None  # (header, rows) for tabular commands


def _flatten(d: dict, prefix: str = "") -> dict:
    flat = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            flat[key] = " ".join(str(x) for x in v)
        else:
            flat[key] = "" if v is None else v
    return flat


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(out: Output, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(out.payload) + "\n")
    elif fmt == "csv":
        if out.table is not None:
            stream.write(_csv_text(*out.table))
        else:
            flat = _flatten(out.payload)
            stream.write(_csv_text(list(flat), [list(flat.values())]))
    else:
        stream.write("\n".join(out.text) + "\n")


# -- commands ---------------------------------------------------------------


def _measurement_payload(res: measurement.MeasurementResult, full_rods=None) -> dict:
    payload = {
        "reading": str(res.reading),
        "notation": egyptian.render(egyptian.greedy_decompose(res.reading.value)),
        "alignment": res.alignment.to_dict(),
        "error_fingers": _mixed(res.error_fingers),
        "error_mm": _mixed(res.error_mm),
    }
    if full_rods is not None:
        payload = {"full_rods": full_rods, **payload}
    return payload


def cmd_measure(args) -> Output:
    rod = check_rod(args.rod)
    if args.length_mm is not None:
        target = check_length(parse_quantity(args.length_mm), "length") / rod.finger_length_mm
    else:
        target = check_length(parse_quantity(args.length_fingers), "length")
    full_rods = None
    if args.compose:
        full_rods, res = measurement.compose_long(rod, target)
    elif target > rod.finger_count:
        raise ValueError(
            f"{_mixed(target)} fingers exceeds the {rod.finger_count}-finger {rod.name} rod; "
            "rerun with --compose to lay the rod end to end"
        )
    else:
        res = measurement.best_reading(rod, target)
    payload = _measurement_payload(res, full_rods)
    text = []
    if full_rods is not None:
        text.append(f"full rods: {full_rods} x {rod.finger_count} fingers")
    text += [
        f"reading: {payload['reading']}",
        f"egyptian: {payload['notation']}",
        f"alignment: {res.alignment}",
        f"error: {payload['error_fingers']} finger ({_dec(res.error_mm)} mm)",
    ]
    return Output(payload, text)


def cmd_draw(args) -> Output:
    rod = check_rod(args.rod)
    reading = measurement.Reading.parse(args.reading)
    al = measurement.draw(rod, reading)
    payload = {"reading": str(reading), "alignment": al.to_dict()}
    text = [
        f"reading: {reading}",
        f"start: notch {al.start_notch}",
        f"end: {al.end_mark}",
        f"direction: {al.direction.value}",
    ]
    return Output(payload, text)


def cmd_decompose(args) -> Output:
    value = check_length(parse_quantity(args.value), "value")
    if args.strategy == "horus":
        s = egyptian.UnitFractionSum(0, False, tuple(egyptian.horus_decompose(value)))
    elif args.strategy == "two-thirds":
        s = egyptian.egyptian_decompose(value, use_two_thirds=True)
    else:
        s = egyptian.greedy_decompose(value)
    notation = egyptian.render(s)
    return Output({"value": _mixed(value), "notation": notation}, [notation])


def _gap_payload(rep: analysis.GapReport, rod: rods.RodSpec) -> dict:
    return {
        "lo": _mixed(rep.lo),
        "hi": _mixed(rep.hi),
        "max_gap": _mixed(rep.max_gap),
        "max_gap_location": [_mixed(x) for x in rep.max_gap_location],
        "worst_case_error": _mixed(rep.worst_case_error),
        "worst_case_error_mm": _mixed(rep.worst_case_error * rod.finger_length_mm),
        "value_count": rep.value_count,
    }


def _gap_text(rep: analysis.GapReport, rod: rods.RodSpec) -> list[str]:
    a, b = rep.max_gap_location
    return [
        f"rod: {rod.name} [{_mixed(rep.lo)}, {_mixed(rep.hi)}]",
        f"readable values: {rep.value_count}",
        f"max gap: {_mixed(rep.max_gap)} finger between {_mixed(a)} and {_mixed(b)}",
        f"worst_case_error: {_mixed(rep.worst_case_error)} finger "
        f"({_dec(rep.worst_case_error * rod.finger_length_mm)} mm)",
    ]


def _range(args, rod):
    if args.range is None:
        return 0, rod.finger_count
    return parse_range(args.range)


def cmd_gaps(args) -> Output:
    rod = check_rod(args.rod)
    rep = analysis.gap_analysis(rod, *_range(args, rod))
    return Output(_gap_payload(rep, rod), _gap_text(rep, rod))


def _write_out(path, content):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(content)


def cmd_sweep(args) -> Output:
    rod = check_rod(args.rod)
    lo, hi = _range(args, rod)
    records = analysis.sweep(rod, lo, hi, parse_quantity(args.step), n_jobs=args.jobs)
    rows = [[_dec(v) for v in rec] for rec in records]
    table = (list(analysis.SWEEP_HEADER), rows)
    if args.out:
        _write_out(args.out, analysis.sweep_csv(records))
    payload = {
        "records": [
            {
                "target": _mixed(r.target),
                "reading": _mixed(r.reading),
                "error_fingers": _mixed(r.error_fingers),
                "error_mm": _mixed(r.error_mm),
            }
            for r in records
        ]
    }
    text = _csv_text(*table).rstrip("\n").split("\n")
    return Output(payload, text, table)


def cmd_perturb(args) -> Output:
    rod = check_rod(args.rod)
    if args.target:
        targets = [parse_quantity(t) for t in args.target]
    else:
        lo, hi = _range(args, rod)
        targets = analysis.target_grid(lo, hi, parse_quantity(args.step))
    rep = analysis.perturb(
        rod, parse_quantity(args.epsilon_mm), args.trials, args.seed, targets, n_jobs=args.jobs
    )
    csv_text = analysis.perturb_csv(rep)
    if args.out:
        _write_out(args.out, csv_text)
    rows = [[r.trial, _dec(r.mean_abs_error_mm), _dec(r.max_abs_error_mm)] for r in rep.rows]
    payload = {
        "epsilon_mm": _mixed(rep.epsilon_mm),
        "trials": rep.trials,
        "seed": rep.seed,
        "targets": len(rep.targets),
        "nominal_mean_abs_error_mm": _dec(rep.nominal_mean_abs_error_mm),
        "mean_abs_error_mm": _dec(rep.mean_abs_error_mm),
        "mean_extra_error_mm": _dec(rep.mean_extra_error_mm),
        "max_abs_error_mm": _dec(rep.max_abs_error_mm),
        "rows": [dict(zip(analysis.PERTURB_HEADER, row)) for row in rows],
    }
    text = [
        f"rod: {rod.name}, epsilon {_dec(rep.epsilon_mm)} mm, {rep.trials} trials, "
        f"seed {rep.seed}, {len(rep.targets)} targets",
        f"nominal mean |error|: {payload['nominal_mean_abs_error_mm']} mm",
        f"perturbed mean |error|: {payload['mean_abs_error_mm']} mm",
        f"mean extra |error|: {payload['mean_extra_error_mm']} mm",
        f"max |error|: {payload['max_abs_error_mm']} mm",
    ]
    return Output(payload, text, (list(analysis.PERTURB_HEADER), rows))


def cmd_compare(args) -> Output:
    rod_a, rod_b = check_rod(args.rod), check_rod(args.other)
    lo, hi = parse_range(args.range) if args.range else (0, min(rod_a.finger_count, rod_b.finger_count))
    cmp = analysis.compare(rod_a, rod_b, lo, hi)
    dominant = {"a": cmp.rod_a, "b": cmp.rod_b, "tie": "tie"}[cmp.dominant]
    payload = {
        "rod_a": _gap_payload(cmp.report_a, rod_a) | {"name": cmp.rod_a},
        "rod_b": _gap_payload(cmp.report_b, rod_b) | {"name": cmp.rod_b},
        "dominant": dominant,
    }
    text = _gap_text(cmp.report_a, rod_a) + _gap_text(cmp.report_b, rod_b)
    text.append("dominance: tie" if dominant == "tie" else f"dominant: {dominant}")
    return Output(payload, text)


def cmd_convert(args) -> Output:
    finger_mm = parse_quantity(args.finger_mm) if args.finger_mm else check_rod(args.rod).finger_length_mm
    value = units.convert(parse_quantity(args.value), args.from_unit, args.to_unit, finger_mm)
    to = units.Unit.parse(args.to_unit).value
    return Output({"value": _mixed(value), "unit": to}, [_mixed(value)])


def cmd_rods(args) -> Output:
    if args.action == "list":
        rows = [(name, factory()) for name, factory in rods.BUILTIN_RODS.items()]
        text = [
            f"{name}: {rod.finger_count} fingers x {_mixed(rod.finger_length_mm)} mm, "
            f"{sum(1 for _ in rod.scales())} graduated scales"
            for name, rod in rows
        ]
        payload = {"rods": [name for name, _ in rows]}
        return Output(payload, text, (["name", "finger_count", "finger_length_mm"], [
            [name, rod.finger_count, _mixed(rod.finger_length_mm)] for name, rod in rows
        ]))
    if not args.name:
        raise ValueError("rods show needs a rod name or path")
    rod = check_rod(args.name)
    doc = rods.dump_spec(rod)
    return Output(json.loads(doc), doc.rstrip("\n").split("\n"))


# -- parser -----------------------------------------------------------------


def _common(top_level: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without clobbering values given earlier
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--rod", default="royal" if top_level else argparse.SUPPRESS,
                   help="builtin rod (royal, short, gudea) or rod document path")
    p.add_argument("--format", choices=("text", "json", "csv"),
                   default="text" if top_level else argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Measure, trace and analyse lengths on fraction-graduated rods.",
        parents=[_common(True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_common(False)]

    p = sub.add_parser("measure", parents=common, help="closest reading for a length")
    length = p.add_mutually_exclusive_group(required=True)
    length.add_argument("--length-mm")
    length.add_argument("--length-fingers")
    p.add_argument("--compose", action="store_true",
                   help="allow lengths beyond the rod by laying it end to end")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("draw", parents=common, help="alignment that traces a reading")
    p.add_argument("--reading", required=True)
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("decompose", parents=common, help="Egyptian unit-fraction notation")
    p.add_argument("--value", required=True)
    p.add_argument("--strategy", choices=("greedy", "two-thirds", "horus"), default="greedy")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("analyze", parents=common, help="precision analysis")
    asub = p.add_subparsers(dest="analysis", required=True)

    a = asub.add_parser("gaps", parents=common)
    a.add_argument("--range")
    a.set_defaults(func=cmd_gaps)

    a = asub.add_parser("sweep", parents=common)
    a.add_argument("--range")
    a.add_argument("--step", default="1/16")
    a.add_argument("--out")
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_sweep)

    a = asub.add_parser("perturb", parents=common)
    a.add_argument("--epsilon-mm", required=True)
    a.add_argument("--trials", type=int, default=100)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--target", action="append", help="target in fingers; repeatable")
    a.add_argument("--range", help="targets from lo:hi when no --target is given")
    a.add_argument("--step", default="1/8")
    a.add_argument("--out")
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_perturb)

    a = asub.add_parser("compare", parents=common)
    a.add_argument("--other", required=True)
    a.add_argument("--range")
    a.set_defaults(func=cmd_compare)

    p = sub.add_parser("convert", parents=common, help="exact unit conversion")
    p.add_argument("--value", required=True)
    p.add_argument("--from", dest="from_unit", required=True)
    p.add_argument("--to", dest="to_unit", required=True)
    p.add_argument("--finger-mm")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("rods", parents=common, help="list or show rod geometries")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_rods)

    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (ValueError, TypeError, OSError) as exc:
        stderr.write(f"{PROG}: error: {exc}\n")
        return 1
    _emit(out, args.format, stdout)
    return 0


def main_entry() -> None:
    sys.exit(main())
