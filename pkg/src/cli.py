# cli.py
import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, TextIO

from src.classify import (
    HEIGHT_ORDERS, CableDescriptor, Realizability, UnknownRotation, Verdict, check_realizable,
    cable_normal_form, classify_cable, classify_helix, compare_classes, enumerate_mountain_range,
    allowed_permutations, rot_at_tb_max, tb_max, unwind_unit_cable,
)
from src.front_core import (
    FrontDiagram, FrontError, all_invariants, cable_link_front, crossing_sums_by_label, lambda_front,
    meridian_eye_front, torus_braid_front, validate,
)
from src.front_io import read_front, write_front
from src.grid_report import build_grid, summarize
from src.isotopy_search import SearchStatus, replay, search_isotopy
from src.moves import DEFAULT_DESTABILIZE_WINDOW, destabilize, stabilize
from src.slope_calc import (
    CurveClass, change_basis, inverse_basis, kanda_twist, longitude_shift_matrix, minimizing_slope, ruling_curve_tb,
)
from src.svg_render import SvgOptions, render_steps, render_svg
from src.translate import (
    HypothesisError, cable_type_to_S3, cor_noimage_gap, s3_cable_tb_max, s3_positive_torus_tb_max, tb_from_S3, tb_to_S3, to_S3,
)
from src.utils import timed

log = logging.getLogger("Cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2
EXIT_UNKNOWN = 3


@dataclass
class Report:
    records: List[Dict[str, Any]] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def add(self, **fields) -> "Report":
        self.records.append({k: v for k, v in fields.items() if v is not None})
        return self


def _value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_value(v) for v in value)
    if value is None:
        return "Unknown"
    return str(value)


def emit(report: Report, as_json: bool, out: TextIO):
    if as_json:
        out.write(json.dumps({"records": report.records, "exit": report.exit_code}, sort_keys=True) + "\n")
        return
    for record in report.records:
        out.write(" ".join(f"{key}={_value(value)}" for key, value in record.items()) + "\n")


def emit_error(reason: str, as_json: bool, out: TextIO):
    reason = " ".join(str(reason).split())
    if as_json:
        out.write(json.dumps({"error": reason}) + "\n")
    else:
        out.write(f"error={reason}\n")


def _load_valid(path: str) -> FrontDiagram:
    diagram = read_front(path)
    report = validate(diagram)
    if not report.ok:
        raise FrontError(f"{path}: {report}")
    return diagram


# ---------------------------------------------------------------- commands

def cmd_invariants(args, config) -> Report:
    diagram = _load_valid(args.file)
    report = Report()
    for component, inv in all_invariants(diagram).items():
        report.add(component=component, label=diagram.label(component),
                   tb=inv.tb, rot=inv.rot, winding=inv.winding)
    for (a, b), total in sorted(crossing_sums_by_label(diagram).items()):
        report.add(labels=(a, b), crossing_sum=total)
    return report


def cmd_validate(args, config) -> Report:
    diagram = read_front(args.file)
    result = validate(diagram)
    if result.ok:
        return Report().add(valid=True, components=diagram.component_count, events=len(diagram.events))
    report = Report(exit_code=EXIT_INVALID).add(valid=False, violations=len(result.violations))
    for violation in result.violations:
        report.add(event=violation.event_index, rule=violation.rule)
    return report


def cmd_render(args, config) -> Report:
    diagram = _load_valid(args.file)
    svg = render_svg(diagram, SvgOptions.from_config(config))
    Path(args.output).write_text(svg, encoding="utf-8")
    return Report().add(file=args.output, components=diagram.component_count, bytes=len(svg.encode("utf-8")))


def _helix_result(tb0, rot0, tb1, rot1, height):
    return classify_helix((tb0, rot0), (tb1, rot1), height)


def _parse_against(tokens: Sequence[str], count: int) -> List:
    """Values given as separate words (`--against -1 -1 0 0`) or joined by commas."""
    text = ",".join(tokens)
    parts = [part for part in text.split(",") if part]
    if len(parts) not in (count, count + 1):
        raise ValueError(f"--against needs {count} integers and an optional height order, got {text!r}")
    values: List = [int(v) for v in parts[:count]]
    values.append(parts[count] if len(parts) > count else None)
    return values


def _cable_descriptor(args, m, rot0, tb1, rot1, height) -> CableDescriptor:
    return CableDescriptor(args.p, args.q, m, rot0, tb1, rot1, height)


def cmd_classify(args, config) -> Report:
    if args.helix:
        if args.tb0 is None:
            raise ValueError("--helix needs --tb0")
        first = _helix_result(args.tb0, args.rot0, args.tb1, args.rot1, args.height)
        if args.against:
            second = _helix_result(*_parse_against(args.against, 4))
            verdict = compare_classes(first, second)
            report = Report().add(verdict=verdict.value)
        else:
            verdict = first.verdict
            report = Report().add(verdict=verdict.value, normal_form=first.normal_form,
                                  height_order=first.height_order)
        if verdict is Verdict.EXCEPTIONAL_PAIR:
            report.add(classes=len(HEIGHT_ORDERS), ambiguity=HEIGHT_ORDERS)
            report.exit_code = EXIT_UNKNOWN
        return report

    if args.p is None or args.q is None:
        raise ValueError("--cable needs -p and -q")
    if args.tb0 is not None and args.m is None:
        args.m = -args.tb0
    if args.m is None:
        raise ValueError("--cable needs -m (or --tb0)")
    first = _cable_descriptor(args, args.m, args.rot0, args.tb1, args.rot1, args.height)
    if args.against:
        second = _cable_descriptor(args, *_parse_against(args.against, 4))
        result = classify_cable(first, second)
        report = Report().add(verdict=result.verdict.value, normal_form=result.normal_form,
                              reason=result.reason or None)
        if result.verdict is Verdict.EXCEPTIONAL_PAIR:
            report.exit_code = EXIT_UNKNOWN
        return report
    check = check_realizable(first)
    report = Report().add(realizable=check.status.value, normal_form=cable_normal_form(first) if check else None,
                          reason=check.reason or None)
    if check.status is Realizability.NOT_REALIZABLE:
        report.exit_code = EXIT_INVALID
    elif check.status is Realizability.UNKNOWN:
        report.exit_code = EXIT_UNKNOWN
    return report


def cmd_tbmax(args, config) -> Report:
    closed = tb_max(args.p, args.q, args.m)
    record = {"p": args.p, "q": args.q, "m": args.m, "tb_max": closed, "rot": _value(rot_at_tb_max(args.p, args.q, args.m))}
    if args.oracle:
        value, slope = minimizing_slope(CurveClass(args.p, args.q), args.m, config)
        oracle = args.p * args.q + kanda_twist(value)
        record.update(oracle=oracle, slope=str(slope), match=oracle == closed)
    if args.ruling and args.p < 0 and args.m * args.q + args.p < 0:
        record["ruling_tb"] = ruling_curve_tb(CurveClass(args.p, args.q), args.m)
    report = Report()
    report.records.append(record)
    if args.oracle and not record["match"]:
        report.exit_code = EXIT_INVALID
    return report


def cmd_enumerate(args, config) -> Report:
    try:
        pairs = enumerate_mountain_range(args.p, args.q, args.m, args.floor)
    except UnknownRotation as e:
        return Report(exit_code=EXIT_UNKNOWN).add(status="Unknown", reason=str(e))
    report = Report()
    for tb, rot in sorted(pairs, key=lambda pair: (-pair[0], pair[1])):
        report.add(tb=tb, rot=rot)
    return report


def cmd_translate(args, config) -> Report:
    p_s3, q_s3 = cable_type_to_S3(args.p, args.q)
    record: Dict[str, Any] = {"p_s3": p_s3, "q_s3": q_s3}
    if args.m is not None:
        s3 = to_S3(args.p, args.q, args.m)
        record["m_s3"] = s3.m
        if s3.q >= 1:
            record["tb_max_s3"] = s3_cable_tb_max(s3.p, s3.q, s3.m)
    if args.tb is not None:
        record["tb_s3"] = tb_to_S3(args.tb, args.q)
    if args.p >= args.q >= 1:
        record["torus_tb_max"] = tb_from_S3(s3_positive_torus_tb_max(p_s3, q_s3), args.q)
    try:
        record["noimage_gap"] = cor_noimage_gap(args.p, args.q)
    except HypothesisError:
        pass
    report = Report()
    report.records.append(record)
    return report


def _parse_matrix(text: str) -> List[List[int]]:
    entries = [int(v) for v in text.split(",")]
    if len(entries) != 4:
        raise ValueError(f"--matrix needs 4 integers a,b,c,d, got {text!r}")
    return [entries[:2], entries[2:]]


def cmd_basis(args, config) -> Report:
    matrix = longitude_shift_matrix(args.shift) if args.shift is not None else _parse_matrix(args.matrix)
    if args.inverse:
        matrix = inverse_basis(matrix)
    image = change_basis(CurveClass(args.p, args.q), matrix)
    return Report().add(p=image.p, q=image.q, matrix=[v for row in matrix for v in row])


def cmd_unwind(args, config) -> Report:
    unwound = unwind_unit_cable(args.p, args.m)
    report = Report().add(tb0=unwound.tb0, tb1=unwound.tb1, two_copy=unwound.two_copy)
    if unwound.two_copy:
        group = allowed_permutations("J1-cable-unit-2copy")
        report.add(group=group.name, order=group.order)
    return report


def cmd_permutations(args, config) -> Report:
    group = allowed_permutations(args.setting, args.n)
    report = Report().add(group=group.name, degree=group.degree, order=group.order)
    for perm in sorted(group.elements):
        report.add(perm=perm)
    return report


def _dump_steps(start: FrontDiagram, path, directory: str, options: SvgOptions):
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    fronts = [start]
    for site in path:
        fronts.append(replay(fronts[-1], [site]))
    for number, svg in enumerate(render_steps(fronts, options)):
        (target / f"step_{number:03d}.svg").write_text(svg, encoding="utf-8")
    log.info(f"Dumped {len(path) + 1} steps to {target}")


@timed("search-isotopy")
def cmd_search(args, config) -> Report:
    d1, d2 = _load_valid(args.file1), _load_valid(args.file2)
    result = search_isotopy(d1, d2, args.depth, args.states, config)
    report = Report().add(status=result.status.value, depth=result.depth, states=result.states,
                          moves=len(result.path), seconds=round(result.elapsed, 3),
                          reason=result.reason or None)
    for step, site in enumerate(result.path, start=1):
        report.add(step=step, move=str(site))
    if result.status in (SearchStatus.BUDGET_EXHAUSTED, SearchStatus.FRONTIER_EXHAUSTED):
        report.exit_code = EXIT_BUDGET
    if result.found and args.dump:
        _dump_steps(d1, result.path, args.dump, SvgOptions.from_config(config))
    return report


_GENERATORS: Dict[str, Callable[..., FrontDiagram]] = {
    "lambda": lambda n: lambda_front(n),
    "eye": lambda: meridian_eye_front(),
    "braid": lambda p, q: torus_braid_front(p, q),
    "cable": lambda p, q: cable_link_front(p, q),
}
_ARITY = {"lambda": 1, "eye": 0, "braid": 2, "cable": 2}


def cmd_gen(args, config) -> Report:
    if len(args.params) != _ARITY[args.kind]:
        raise ValueError(f"gen {args.kind} takes {_ARITY[args.kind]} integer parameter(s)")
    diagram = _GENERATORS[args.kind](*args.params)
    if args.labels:
        order = [int(v) for v in args.labels.split(",")]
        if sorted(order) != list(range(diagram.component_count)):
            raise ValueError(f"--labels must permute 0..{diagram.component_count - 1}")
        diagram = diagram.replace(labels=dict(enumerate(order)))
    for spec in args.stabilize or []:
        component, sign = int(spec[:-1]), spec[-1]
        diagram = stabilize(diagram, component, sign)
    window = config.get("moves", {}).get("destabilize_window", DEFAULT_DESTABILIZE_WINDOW)
    for spec in args.destabilize or []:
        component, sign = int(spec[:-1]), spec[-1]
        reduced = destabilize(diagram, component, sign, window)
        if reduced is None:
            raise ValueError(f"component {component} has no removable {sign} zigzag within {window} events")
        diagram = reduced
    write_front(diagram, args.output)
    return Report().add(file=args.output, strands=diagram.base_strands, events=len(diagram.events),
                        components=diagram.component_count)


def cmd_grid(args, config) -> Report:
    frame = build_grid(config)
    if args.csv:
        frame.to_csv(args.csv, index=False)
    summary = summarize(frame)
    report = Report()
    report.records.append(summary)
    for row in frame[~frame["match"]].itertuples(index=False):
        report.add(p=row.p, q=row.q, m=row.m, closed_form=row.closed_form, oracle=row.oracle)
    if summary["mismatches"]:
        report.exit_code = EXIT_INVALID
    return report


COMMANDS: Dict[str, Callable[[argparse.Namespace, Mapping], Report]] = {
    "invariants": cmd_invariants,
    "validate": cmd_validate,
    "render": cmd_render,
    "classify": cmd_classify,
    "tbmax": cmd_tbmax,
    "enumerate": cmd_enumerate,
    "translate": cmd_translate,
    "basis": cmd_basis,
    "unwind": cmd_unwind,
    "permutations": cmd_permutations,
    "search-isotopy": cmd_search,
    "gen": cmd_gen,
    "grid": cmd_grid,
}


class UsageError(ValueError):
    pass


class CliParser(argparse.ArgumentParser):
    """Raises instead of exiting so usage errors get an error line like any other."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="legendrian",
                       description="Legendrian links in J1(S1): fronts, invariants, classification.")
    parser.add_argument("--json", action="store_true", help="print the report as JSON")
    parser.add_argument("--config", default=None, help="configuration file (default: config.json if present)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="tb, rot and winding of every component")
    p.add_argument("file")
    p = sub.add_parser("validate", help="check a front file")
    p.add_argument("file")
    p = sub.add_parser("render", help="draw a front as SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("classify", help="classify helix or cable links by classical invariants")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--helix", action="store_true")
    mode.add_argument("--cable", action="store_true")
    p.add_argument("-p", type=int)
    p.add_argument("-q", type=int)
    p.add_argument("-m", type=int)
    p.add_argument("--tb0", type=int)
    p.add_argument("--rot0", type=int, default=0)
    p.add_argument("--tb1", type=int, required=True)
    p.add_argument("--rot1", type=int, default=0)
    p.add_argument("--height", choices=HEIGHT_ORDERS)
    p.add_argument("--against", nargs="+", metavar="VALUE",
                   help="second link: TB0 ROT0 TB1 ROT1 [HEIGHT] (helix) or M ROT0 TB1 ROT1 [HEIGHT] (cable)")

    p = sub.add_parser("tbmax", help="maximal tb of L1 in a (p,q)-cable link")
    for flag in ("-p", "-q", "-m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also compute the slope-minimisation value")
    p.add_argument("--ruling", action="store_true", help="also report the ruling-curve tb when p < 0 and mq + p < 0")

    p = sub.add_parser("enumerate", help="realizable (tb, rot) of L1 down to a floor")
    for flag in ("-p", "-q", "-m"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("--floor", type=int, required=True)

    p = sub.add_parser("translate", help="cable data on the S3 side")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-m", type=int)
    p.add_argument("--tb", type=int)

    p = sub.add_parser("basis", help="image of the class p*mu + q*lambda under a basis change")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    change = p.add_mutually_exclusive_group(required=True)
    change.add_argument("--shift", type=int, metavar="Q", help="new longitude -mu + Q*lambda")
    change.add_argument("--matrix", metavar="A,B,C,D", help="unimodular matrix [[A,B],[C,D]]")
    p.add_argument("--inverse", action="store_true", help="apply the inverse change")

    p = sub.add_parser("unwind", help="a tb-maximal (p,1)-cable link with p < 0 <= m + p seen as a helix link")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-m", type=int, required=True)

    p = sub.add_parser("permutations", help="permutations of parallel copies realizable by isotopy")
    p.add_argument("setting", help="J1-helix-2copy-unstabilized, J1-helix-2copy-stabilized, "
                                   "J1-cable-unit-2copy or S3-unknot-Ncopy(N)")
    p.add_argument("-n", type=int, help="N for S3-unknot-Ncopy")

    p = sub.add_parser("search-isotopy", help="search for a Legendrian isotopy between two fronts")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--depth", type=int)
    p.add_argument("--states", type=int)
    p.add_argument("--dump", help="directory for one SVG per step of a found path")

    p = sub.add_parser("gen", help="write a generated front")
    p.add_argument("kind", choices=sorted(_GENERATORS))
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--labels", help="link index of each component, e.g. 1,0")
    p.add_argument("--stabilize", action="append", metavar="C+|C-",
                   help="stabilize component C (repeatable, applied in order)")
    p.add_argument("--destabilize", action="append", metavar="C+|C-",
                   help="remove a zigzag of component C after stabilizing")

    p = sub.add_parser("grid", help="closed form against slope minimisation over the cable grid")
    p.add_argument("--csv", help="write the full table to this file")
    return parser


def run(argv: Optional[Sequence[str]] = None, config: Optional[Mapping] = None,
        out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        log.error(f"Bad command line: {e}")
        emit_error(str(e), "--json" in (sys.argv[1:] if argv is None else argv), out)
        return EXIT_INVALID
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    log.info(f"Running {args.command}")
    try:
        report = COMMANDS[args.command](args, config or {})
    except (ValueError, OSError) as e:
        log.error(f"{args.command} failed: {e}")
        emit_error(str(e), args.json, out)
        return EXIT_INVALID
    emit(report, args.json, out)
    log.info(f"{args.command} finished with exit code {report.exit_code}")
    return report.exit_code
