# front_io.py
"""Reading and writing the `front v1` text format.

    front v1
    strands 2
    events
    L 2
    X 1
    R 2
    orient 1 -
    label 0 1

Lines after `events` are event lines, followed by optional `orient` and
`label` lines. Blank lines and lines starting with `#` are ignored.
Only syntax is checked here; `front_core.validate` does the rest.
"""
import logging
import re
from pathlib import Path
from typing import Dict, List, Union

from src.front_core import Event, EventKind, FrontDiagram

log = logging.getLogger("FrontIO")

HEADER = "front v1"

_STRANDS = re.compile(r"strands\s+(?P<n>\S+)$")
_EVENT = re.compile(r"(?P<kind>[XLR])\s*(?P<pos>\S+)$")
_ORIENT = re.compile(r"orient\s+(?P<c>\S+)\s+(?P<sign>\S+)$")
_LABEL = re.compile(r"label\s+(?P<c>\S+)\s+(?P<label>\S+)$")


class FrontSyntaxError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _natural(match: re.Match, group: str, line: int, what: str, minimum: int = 0, indent: int = 0) -> int:
    text = match.group(group)
    column = indent + match.start(group) + 1
    if not re.fullmatch(r"\d+", text):
        raise FrontSyntaxError(line, column, f"{what} must be a nonnegative integer, got {text!r}")
    value = int(text)
    if value < minimum:
        raise FrontSyntaxError(line, column, f"{what} must be at least {minimum}, got {value}")
    return value


def parse_front(text: str) -> FrontDiagram:
    lines = [
        (number, raw.rstrip())
        for number, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines or lines[0][1].strip() != HEADER:
        where = lines[0][0] if lines else 1
        raise FrontSyntaxError(where, 1, f"expected header {HEADER!r}")
    if len(lines) < 2:
        raise FrontSyntaxError(lines[0][0] + 1, 1, "expected 'strands INT'")
    number, line = lines[1]
    match = _STRANDS.match(line.strip())
    if not match:
        raise FrontSyntaxError(number, 1, "expected 'strands INT'")
    strands = _natural(match, "n", number, "strand count", indent=len(line) - len(line.lstrip()))
    if len(lines) < 3 or lines[2][1].strip() != "events":
        where = lines[2][0] if len(lines) > 2 else number + 1
        raise FrontSyntaxError(where, 1, "expected 'events'")

    events: List[Event] = []
    orientations: Dict[int, int] = {}
    labels: Dict[int, int] = {}
    in_trailer = False
    for number, line in lines[3:]:
        body = line.strip()
        indent = len(line) - len(line.lstrip())
        match = _EVENT.match(body)
        if match:
            if in_trailer:
                raise FrontSyntaxError(number, indent + 1, "event after orient/label lines")
            position = _natural(match, "pos", number, "event position", minimum=1, indent=indent)
            events.append(Event(EventKind(match.group("kind")), position))
            continue
        match = _ORIENT.match(body)
        if match:
            in_trailer = True
            component = _natural(match, "c", number, "component id", indent=indent)
            sign = match.group("sign")
            if sign not in ("+", "-"):
                raise FrontSyntaxError(number, indent + match.start("sign") + 1,
                                       f"orientation must be '+' or '-', got {sign!r}")
            if component in orientations:
                raise FrontSyntaxError(number, indent + 1, f"component {component} oriented twice")
            orientations[component] = 1 if sign == "+" else -1
            continue
        match = _LABEL.match(body)
        if match:
            in_trailer = True
            component = _natural(match, "c", number, "component id", indent=indent)
            if component in labels:
                raise FrontSyntaxError(number, indent + 1, f"component {component} labelled twice")
            labels[component] = _natural(match, "label", number, "label", indent=indent)
            continue
        raise FrontSyntaxError(number, indent + 1, f"unrecognised line {body!r}")

    diagram = FrontDiagram(strands, tuple(events), orientations, labels)
    log.debug(f"Parsed {diagram}")
    return diagram


def serialize_front(diagram: FrontDiagram) -> str:
    out = [HEADER, f"strands {diagram.base_strands}", "events"]
    out.extend(f"{ev.kind.value} {ev.position}" for ev in diagram.events)
    out.extend(f"orient {c} {'+' if o > 0 else '-'}" for c, o in diagram.orientations)
    out.extend(f"label {c} {label}" for c, label in diagram.labels)
    return "\n".join(out) + "\n"


def read_front(path: Union[str, Path]) -> FrontDiagram:
    return parse_front(Path(path).read_text(encoding="utf-8"))


def write_front(diagram: FrontDiagram, path: Union[str, Path]):
    Path(path).write_text(serialize_front(diagram), encoding="utf-8")
    log.info(f"Wrote front to {path}")
