# front_core.py
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Dict, List, Mapping, Optional, Tuple, Union

log = logging.getLogger("FrontCore")


class FrontError(ValueError):
    pass


class EventKind(str, Enum):
    CROSSING = "X"
    LEFT_CUSP = "L"
    RIGHT_CUSP = "R"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    position: int

    def __str__(self):
        return f"{self.kind.value}{self.position}"


def X(position: int) -> Event:
    return Event(EventKind.CROSSING, position)


def L(position: int) -> Event:
    return Event(EventKind.LEFT_CUSP, position)


def R(position: int) -> Event:
    return Event(EventKind.RIGHT_CUSP, position)


def _freeze(value, keep) -> Tuple[Tuple[int, int], ...]:
    if not value:
        return ()
    items = value.items() if isinstance(value, Mapping) else value
    return tuple(sorted((int(k), int(v)) for k, v in items if keep(int(k), int(v))))


@dataclass(frozen=True)
class FrontDiagram:
    """Event word of a front on the annulus [0, 2pi] x R, glued at x = 2pi.

    `orientations` and `labels` are stored sparsely: a component missing from
    `orientations` is oriented '+', one missing from `labels` carries its own id.
    """

    base_strands: int
    events: Tuple[Event, ...] = ()
    orientations: Union[Tuple[Tuple[int, int], ...], Mapping[int, int]] = ()
    labels: Union[Tuple[Tuple[int, int], ...], Mapping[int, int]] = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "orientations", _freeze(self.orientations, lambda k, v: v != 1))
        object.__setattr__(self, "labels", _freeze(self.labels, lambda k, v: v != k))

    def orientation(self, component: int) -> int:
        return dict(self.orientations).get(component, 1)

    def label(self, component: int) -> int:
        return dict(self.labels).get(component, component)

    @cached_property
    def trace(self) -> "FrontTrace":
        return trace_components(self)

    @property
    def component_count(self) -> int:
        return self.trace.component_count

    def strand_counts(self) -> List[int]:
        counts = [self.base_strands]
        for ev in self.events:
            step = {EventKind.LEFT_CUSP: 2, EventKind.RIGHT_CUSP: -2}.get(ev.kind, 0)
            counts.append(counts[-1] + step)
        return counts

    def replace(self, base_strands=None, events=None, orientations=None, labels=None) -> "FrontDiagram":
        return FrontDiagram(
            self.base_strands if base_strands is None else base_strands,
            self.events if events is None else events,
            self.orientations if orientations is None else orientations,
            self.labels if labels is None else labels,
        )

    def __str__(self):
        word = " ".join(str(ev) for ev in self.events) or "-"
        return f"<front strands={self.base_strands} events={word}>"


@dataclass(frozen=True)
class ComponentInvariants:
    tb: int
    rot: int
    winding: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.tb, self.rot, self.winding)


@dataclass(frozen=True)
class Violation:
    event_index: Optional[int]
    rule: str

    def __str__(self):
        where = "diagram" if self.event_index is None else f"event {self.event_index}"
        return f"{where}: {self.rule}"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        return "ok" if self.ok else "; ".join(str(v) for v in self.violations)


@dataclass
class FrontTrace:
    """Arcs are maximal strand pieces without cusps; slices[k] lists the arc ids
    bottom to top just before event k (slices[len(events)] is the closing slice)."""

    slices: List[Tuple[int, ...]]
    arc_component: List[int]
    arc_direction: List[int]
    crossings: List[Tuple[int, int, int]]
    cusps: List[Tuple[int, EventKind, int, int]]
    component_count: int
    winding: List[int] = field(default_factory=list)

    def arc_at(self, slice_index: int, position: int) -> int:
        return self.slices[slice_index][position - 1]

    def component_at(self, slice_index: int, position: int) -> int:
        return self.arc_component[self.arc_at(slice_index, position)]

    def direction_at(self, slice_index: int, position: int) -> int:
        return self.arc_direction[self.arc_at(slice_index, position)]

    def first_segment(self, component: int) -> Tuple[int, int]:
        """(slice, position) where the component starts: its lowest base strand,
        or the lower branch right after its first left cusp."""
        for position, arc in enumerate(self.slices[0], start=1):
            if self.arc_component[arc] == component:
                return 0, position
        for event_index, kind, lower, _upper in self.cusps:
            if kind is EventKind.LEFT_CUSP and self.arc_component[lower] == component:
                return event_index + 1, self.slices[event_index + 1].index(lower) + 1
        raise FrontError(f"unknown component {component}")


def _structure_violations(diagram: FrontDiagram) -> List[Violation]:
    if diagram.base_strands < 0:
        return [Violation(None, "strand count must be nonnegative")]
    count = diagram.base_strands
    for idx, ev in enumerate(diagram.events):
        i = ev.position
        if i < 1:
            return [Violation(idx, "position must be at least 1")]
        if ev.kind is EventKind.CROSSING:
            if count < 2:
                return [Violation(idx, "crossing needs two strands")]
            if i + 1 > count:
                return [Violation(idx, "crossing above the top strand")]
        elif ev.kind is EventKind.LEFT_CUSP:
            if i > count + 1:
                return [Violation(idx, "left cusp above the top gap")]
            count += 2
        else:
            if count < 2:
                return [Violation(idx, "right cusp needs two strands")]
            if i + 1 > count:
                return [Violation(idx, "right cusp above the top strand")]
            count -= 2
    if count != diagram.base_strands:
        return [Violation(None, f"closure: strand count ends at {count}, expected {diagram.base_strands}")]
    return []


def validate(diagram: FrontDiagram) -> ValidationReport:
    violations = _structure_violations(diagram)
    if violations:
        return ValidationReport(tuple(violations))
    try:
        trace = _trace(diagram)
    except FrontError as e:
        return ValidationReport((Violation(None, str(e)),))
    count = trace.component_count
    for component, sign in diagram.orientations:
        if component >= count or component < 0:
            violations.append(Violation(None, f"orientation for unknown component {component}"))
        elif sign not in (1, -1):
            violations.append(Violation(None, f"orientation of component {component} must be +1 or -1"))
    for component, _label in diagram.labels:
        if component >= count or component < 0:
            violations.append(Violation(None, f"label for unknown component {component}"))
    link_labels = [diagram.label(c) for c in range(count)]
    if len(set(link_labels)) != len(link_labels):
        violations.append(Violation(None, "duplicate link label"))
    return ValidationReport(tuple(violations))


class _ParityUnion:
    def __init__(self):
        self.parent: List[int] = []
        self.parity: List[int] = []

    def add(self) -> int:
        self.parent.append(len(self.parent))
        self.parity.append(0)
        return len(self.parent) - 1

    def find(self, x: int) -> Tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root, acc = x, 0
        for node in reversed(path):
            acc ^= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a: int, b: int, flip: int):
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if pa ^ pb != flip:
                raise FrontError("component closes with an odd number of cusps")
            return
        if rb < ra:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ flip


def _trace(diagram: FrontDiagram) -> FrontTrace:
    arcs = _ParityUnion()
    current = [arcs.add() for _ in range(diagram.base_strands)]
    slices = [tuple(current)]
    crossings, cusps = [], []
    for idx, ev in enumerate(diagram.events):
        i = ev.position
        if ev.kind is EventKind.CROSSING:
            lower, upper = current[i - 1], current[i]
            crossings.append((idx, lower, upper))
            current[i - 1], current[i] = upper, lower
        elif ev.kind is EventKind.LEFT_CUSP:
            lower, upper = arcs.add(), arcs.add()
            arcs.union(lower, upper, 1)
            cusps.append((idx, ev.kind, lower, upper))
            current[i - 1:i - 1] = [lower, upper]
        else:
            lower, upper = current[i - 1], current[i]
            arcs.union(lower, upper, 1)
            cusps.append((idx, ev.kind, lower, upper))
            del current[i - 1:i + 1]
        slices.append(tuple(current))
    for position, arc in enumerate(current):
        arcs.union(arc, position, 0)

    # the smallest arc id of a component is its reference arc: base arcs are
    # numbered bottom to top, cusp arcs in event order with the lower branch first
    roots = {}
    for arc in range(len(arcs.parent)):
        root, _ = arcs.find(arc)
        roots.setdefault(root, len(roots))
    arc_component, raw = [], []
    for arc in range(len(arcs.parent)):
        root, parity = arcs.find(arc)
        arc_component.append(roots[root])
        raw.append(-1 if parity else 1)
    # arcs.find(root) has parity 0 and the root is the minimal arc, so raw is
    # relative to the reference arc
    direction = [raw[a] * diagram.orientation(arc_component[a]) for a in range(len(raw))]
    winding = [0] * len(roots)
    for arc in slices[0]:
        winding[arc_component[arc]] += direction[arc]
    return FrontTrace(slices, arc_component, direction, crossings, cusps, len(roots), winding)


def trace_components(diagram: FrontDiagram) -> FrontTrace:
    violations = _structure_violations(diagram)
    if violations:
        raise FrontError(f"invalid front: {violations[0]}")
    return _trace(diagram)


def _check_component(diagram: FrontDiagram, component: int):
    if not 0 <= component < diagram.component_count:
        raise FrontError(f"unknown component {component}")


def crossing_sign(diagram: FrontDiagram, event_index: int) -> int:
    if not 0 <= event_index < len(diagram.events) or diagram.events[event_index].kind is not EventKind.CROSSING:
        raise FrontError(f"event {event_index} is not a crossing")
    trace = diagram.trace
    for idx, lower, upper in trace.crossings:
        if idx == event_index:
            return trace.arc_direction[lower] * trace.arc_direction[upper]
    raise FrontError(f"event {event_index} is not a crossing")


def cusp_is_downward(trace: FrontTrace, kind: EventKind, lower: int) -> bool:
    if kind is EventKind.LEFT_CUSP:
        return trace.arc_direction[lower] == 1
    return trace.arc_direction[lower] == -1


def invariants(diagram: FrontDiagram, component: int) -> ComponentInvariants:
    _check_component(diagram, component)
    trace = diagram.trace
    writhe = 0
    for _idx, lower, upper in trace.crossings:
        if trace.arc_component[lower] == component and trace.arc_component[upper] == component:
            writhe += trace.arc_direction[lower] * trace.arc_direction[upper]
    down = up = 0
    for _idx, kind, lower, _upper in trace.cusps:
        if trace.arc_component[lower] != component:
            continue
        if cusp_is_downward(trace, kind, lower):
            down += 1
        else:
            up += 1
    return ComponentInvariants(writhe - (down + up) // 2, (down - up) // 2, trace.winding[component])


def all_invariants(diagram: FrontDiagram) -> Dict[int, ComponentInvariants]:
    return {c: invariants(diagram, c) for c in range(diagram.component_count)}


def invariants_by_label(diagram: FrontDiagram) -> Dict[int, ComponentInvariants]:
    return {diagram.label(c): inv for c, inv in all_invariants(diagram).items()}


def inter_component_crossing_sum(diagram: FrontDiagram, a: int, b: int) -> int:
    if a == b:
        raise FrontError("inter-component sum needs two different components")
    _check_component(diagram, a)
    _check_component(diagram, b)
    trace = diagram.trace
    total = 0
    for _idx, lower, upper in trace.crossings:
        if {trace.arc_component[lower], trace.arc_component[upper]} == {a, b}:
            total += trace.arc_direction[lower] * trace.arc_direction[upper]
    return total


def crossing_sums_by_label(diagram: FrontDiagram) -> Dict[Tuple[int, int], int]:
    count = diagram.component_count
    sums = {}
    for a in range(count):
        for b in range(a + 1, count):
            key = tuple(sorted((diagram.label(a), diagram.label(b))))
            sums[key] = inter_component_crossing_sum(diagram, a, b)
    return sums


def lambda_front(n: int) -> FrontDiagram:
    if n < 1:
        raise FrontError("lambda_front needs at least one strand")
    return FrontDiagram(n)


def meridian_eye_front() -> FrontDiagram:
    return FrontDiagram(1, (L(2), X(1), X(1), R(2)))


def _check_torus_type(p: int, q: int):
    if p < 1 or q < 1:
        raise FrontError(f"torus type needs p, q >= 1, got ({p},{q})")
    if gcd(p, q) != 1:
        raise FrontError(f"torus type ({p},{q}) is not coprime")


def _braid_block(q: int, shift: int = 0) -> List[Event]:
    return [X(k + shift) for k in range(q - 1, 0, -1)]


def torus_braid_front(p: int, q: int) -> FrontDiagram:
    _check_torus_type(p, q)
    return FrontDiagram(q, tuple(ev for _ in range(p) for ev in _braid_block(q)))


def cable_link_front(p: int, q: int) -> FrontDiagram:
    """L0 is the flat strand at position 1; each braid block of L1 ends with its
    lowest strand dipping in front of and back behind L0."""
    _check_torus_type(p, q)
    events = []
    for _ in range(p):
        events.extend(_braid_block(q, shift=1))
        events.extend([X(1), X(1)])
    return FrontDiagram(q + 1, tuple(events))
