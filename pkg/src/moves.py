# moves.py
import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.front_core import (
    Event, EventKind, FrontDiagram, FrontError, L, R, X, cusp_is_downward,
)

log = logging.getLogger("Moves")

DEFAULT_DESTABILIZE_WINDOW = 8
DEFAULT_ORBIT_LIMIT = 20000


class MoveError(ValueError):
    pass


class MoveKind(str, Enum):
    TRIPLE_POINT = "TriplePoint"
    CUSP_THROUGH_STRAND = "CuspThroughStrand"
    CUSP_CROSSING_SLIDE = "CuspCrossingSlide"
    ZIGZAG_SWAP = "ZigzagSwap"
    COMMUTE = "Commute"
    ROTATE_BASEPOINT = "RotateBasepoint"


PLANAR_KINDS = frozenset({MoveKind.COMMUTE, MoveKind.ROTATE_BASEPOINT})


@dataclass(frozen=True)
class MoveSite:
    """A move at event `index` (for births: slice `index`, strand `position`).

    `forward` adds events (crossings through a cusp, swallowtail birth) or, for
    RotateBasepoint, carries the first event to the end of the word.
    """

    kind: MoveKind
    index: int
    variant: str = ""
    position: int = 0
    forward: bool = True

    def __str__(self):
        text = f"{self.kind.value}@{self.index}"
        if self.variant:
            text += f":{self.variant}"
        if self.kind is MoveKind.CUSP_CROSSING_SLIDE and self.forward:
            text += f"/{self.position}"
        if self.kind not in (MoveKind.COMMUTE, MoveKind.TRIPLE_POINT, MoveKind.ZIGZAG_SWAP):
            text += "+" if self.forward else "-"
        return text


Sign = Union[int, str]


def _sign(sign: Sign) -> int:
    if sign in (1, "+", "+1"):
        return 1
    if sign in (-1, "-", "-1"):
        return -1
    raise MoveError(f"stabilisation sign must be + or -, got {sign!r}")


# ---------------------------------------------------------------- annotations

def _transfer(old: FrontDiagram, base: int, events: Sequence[Event],
              slice_pairs: Iterable[Tuple[int, int]]) -> FrontDiagram:
    """Rebuild orientations and labels of `old` on a rewritten word. Each pair
    names a slice of the old word and the identical slice of the new one."""
    bare = FrontDiagram(base, tuple(events))
    old_trace, new_trace = old.trace, bare.trace
    orientations: Dict[int, int] = {}
    labels: Dict[int, int] = {}
    for k_old, k_new in slice_pairs:
        for arc_old, arc_new in zip(old_trace.slices[k_old], new_trace.slices[k_new]):
            component = new_trace.arc_component[arc_new]
            if component in orientations:
                continue
            orientations[component] = old_trace.arc_direction[arc_old] * new_trace.arc_direction[arc_new]
            labels[component] = old.label(old_trace.arc_component[arc_old])
        if len(orientations) == new_trace.component_count:
            break
    if len(orientations) != new_trace.component_count:
        raise MoveError("a component lost its orientation through the rewrite")
    return FrontDiagram(base, tuple(events), orientations, labels)


def _splice(diagram: FrontDiagram, start: int, old_len: int, new_sub: Sequence[Event]) -> FrontDiagram:
    events = diagram.events
    new_events = events[:start] + tuple(new_sub) + events[start + old_len:]
    shift = len(new_sub) - old_len
    pairs = [(start, start), (start + old_len, start + old_len + shift)]
    pairs += [(k, k) for k in range(start)]
    pairs += [(k, k + shift) for k in range(start + old_len + 1, len(events) + 1)]
    return _transfer(diagram, diagram.base_strands, new_events, pairs)


# ------------------------------------------------------------------ commuting

def _commute_options(e1: Event, e2: Event) -> List[Tuple[str, Event, Event]]:
    """Ways to write e1 e2 as e2' e1' by a planar isotopy of disjoint pieces."""
    i, j = e1.position, e2.position
    k1, k2 = e1.kind, e2.kind
    e1_gap = k1 is EventKind.RIGHT_CUSP
    e2_gap = k2 is EventKind.LEFT_CUSP
    if not e1_gap and not e2_gap:
        if not (j + 1 < i or j > i + 1):
            return []
        below = j + 1 < i
        jp = j if (k1 is not EventKind.LEFT_CUSP or below) else j - 2
        ip = i - 2 if (k2 is EventKind.RIGHT_CUSP and below) else i
    elif e1_gap and not e2_gap:
        if j + 1 == i:
            return []
        below = j < i
        jp = j if below else j + 2
        ip = i - 2 if (k2 is EventKind.RIGHT_CUSP and below) else i
    elif not e1_gap:
        if j == i + 1:
            return []
        below = j <= i
        jp = j if (k1 is not EventKind.LEFT_CUSP or below) else j - 2
        ip = i + 2 if below else i
    elif j != i:
        below = j < i
        jp = j if below else j + 2
        ip = i + 2 if below else i
    else:
        return [("below", L(i), R(i + 2)), ("above", L(i + 2), R(i))]
    return [("", Event(k2, jp), Event(k1, ip))]


def _rotate(diagram: FrontDiagram, forward: bool) -> FrontDiagram:
    events = diagram.events
    n = len(events)
    if n == 0:
        return diagram
    counts = diagram.strand_counts()
    if forward:
        return _transfer(diagram, counts[1], events[1:] + events[:1], [(k + 1, k) for k in range(n)])
    return _transfer(diagram, counts[n - 1], events[-1:] + events[:-1], [(k, k + 1) for k in range(n)])


# ---------------------------------------------------------------- rewrite table

def _is(ev: Event, kind: EventKind, position: int) -> bool:
    return ev.kind is kind and ev.position == position


_CUSP_VARIANTS = ("left-below", "left-above", "right-below", "right-above")


def _through_strand_long(variant: str, ev: Event, count_before: int) -> Optional[List[Event]]:
    i = ev.position
    if variant == "left-below" and ev.kind is EventKind.LEFT_CUSP and i >= 2:
        return [L(i - 1), X(i), X(i - 1)]
    if variant == "left-above" and ev.kind is EventKind.LEFT_CUSP and i <= count_before:
        return [L(i + 1), X(i), X(i + 1)]
    if variant == "right-below" and ev.kind is EventKind.RIGHT_CUSP and i >= 2:
        return [X(i - 1), X(i), R(i - 1)]
    if variant == "right-above" and ev.kind is EventKind.RIGHT_CUSP and i + 2 <= count_before:
        return [X(i + 1), X(i), R(i + 1)]
    return None


def _through_strand_short(variant: str, window: Sequence[Event]) -> Optional[Event]:
    if len(window) < 3:
        return None
    a, b, c = window[:3]
    if variant == "left-below" and a.kind is EventKind.LEFT_CUSP:
        p = a.position
        if _is(b, EventKind.CROSSING, p + 1) and _is(c, EventKind.CROSSING, p):
            return L(p + 1)
    if variant == "left-above" and a.kind is EventKind.LEFT_CUSP and a.position >= 2:
        p = a.position
        if _is(b, EventKind.CROSSING, p - 1) and _is(c, EventKind.CROSSING, p):
            return L(p - 1)
    if variant == "right-below" and c.kind is EventKind.RIGHT_CUSP:
        p = c.position
        if _is(a, EventKind.CROSSING, p) and _is(b, EventKind.CROSSING, p + 1):
            return R(p + 1)
    if variant == "right-above" and c.kind is EventKind.RIGHT_CUSP and c.position >= 2:
        p = c.position
        if _is(a, EventKind.CROSSING, p) and _is(b, EventKind.CROSSING, p - 1):
            return R(p - 1)
    return None


def _swallowtail(variant: str, i: int) -> List[Event]:
    if variant == "lower":
        return [L(i + 1), X(i), R(i + 1)]
    return [L(i), X(i + 1), R(i)]


def _swallowtail_variant(window: Sequence[Event]) -> Optional[Tuple[str, int]]:
    if len(window) < 3:
        return None
    a, b, c = window[:3]
    if a.kind is not EventKind.LEFT_CUSP or c.kind is not EventKind.RIGHT_CUSP or c.position != a.position:
        return None
    if a.position >= 2 and _is(b, EventKind.CROSSING, a.position - 1):
        return "lower", a.position - 1
    if _is(b, EventKind.CROSSING, a.position + 1):
        return "upper", a.position
    return None


def _triple_point(window: Sequence[Event]) -> Optional[Tuple[str, List[Event]]]:
    if len(window) < 3 or any(ev.kind is not EventKind.CROSSING for ev in window[:3]):
        return None
    a, b, c = (ev.position for ev in window[:3])
    if a == c and b == a + 1:
        return "lower-first", [X(a + 1), X(a), X(a + 1)]
    if a == c and b == a - 1:
        return "upper-first", [X(b), X(a), X(b)]
    return None


def _zigzag_swap(window: Sequence[Event]) -> Optional[List[Event]]:
    """Opposite zigzags on one strand, written in the other order."""
    if len(window) < 4:
        return None
    word = list(window[:4])
    p = min(word[0].position, word[1].position)
    up, down = [L(p + 1), R(p)], [L(p), R(p + 1)]
    if word == up + down:
        return down + up
    if word == down + up:
        return up + down
    return None


def _pair_sites(e1: Event, e2: Event, k: int) -> List[MoveSite]:
    return [MoveSite(MoveKind.COMMUTE, k, variant) for variant, _e2, _e1 in _commute_options(e1, e2)]


def _triple_sites(window: Sequence[Event], k: int) -> List[MoveSite]:
    sites = []
    triple = _triple_point(window)
    if triple:
        sites.append(MoveSite(MoveKind.TRIPLE_POINT, k, triple[0]))
    for variant in _CUSP_VARIANTS:
        if _through_strand_short(variant, window):
            sites.append(MoveSite(MoveKind.CUSP_THROUGH_STRAND, k, variant, forward=False))
    tail = _swallowtail_variant(window)
    if tail:
        sites.append(MoveSite(MoveKind.CUSP_CROSSING_SLIDE, k, tail[0], tail[1], forward=False))
    return sites


def _single_sites(diagram: FrontDiagram, include_births: bool) -> List[MoveSite]:
    events = diagram.events
    counts = diagram.strand_counts()
    sites = [MoveSite(MoveKind.CUSP_THROUGH_STRAND, k, variant, forward=True)
             for k, ev in enumerate(events) for variant in _CUSP_VARIANTS
             if _through_strand_long(variant, ev, counts[k])]
    if include_births:
        for k in range(len(events) + 1):
            for position in range(1, counts[k] + 1):
                for variant in ("lower", "upper"):
                    sites.append(MoveSite(MoveKind.CUSP_CROSSING_SLIDE, k, variant, position, forward=True))
    return sites


def applicable_moves(diagram: FrontDiagram, include_births: bool = True) -> List[MoveSite]:
    events = diagram.events
    n = len(events)
    sites = _single_sites(diagram, include_births)
    for k in range(n):
        sites += _triple_sites(events[k:k + 3], k)
        if _zigzag_swap(events[k:k + 4]):
            sites.append(MoveSite(MoveKind.ZIGZAG_SWAP, k))
        if k + 1 < n:
            sites += _pair_sites(events[k], events[k + 1], k)
    sites.append(MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=True))
    sites.append(MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=False))
    return sites


def apply_move(diagram: FrontDiagram, site: MoveSite) -> FrontDiagram:
    events = diagram.events
    k = site.index
    if site.kind is MoveKind.ROTATE_BASEPOINT:
        return _rotate(diagram, site.forward)
    if site.kind is MoveKind.CUSP_CROSSING_SLIDE and site.forward:
        counts = diagram.strand_counts()
        if not 0 <= k <= len(events) or not 1 <= site.position <= counts[k] or site.variant not in ("lower", "upper"):
            raise MoveError(f"no swallowtail birth at {site}")
        return _splice(diagram, k, 0, _swallowtail(site.variant, site.position))
    if not 0 <= k < len(events):
        raise MoveError(f"move index {k} outside the event word")
    window = events[k:k + 3]
    if site.kind is MoveKind.COMMUTE:
        if k + 1 >= len(events):
            raise MoveError(f"nothing to commute at {k}")
        for variant, e2, e1 in _commute_options(events[k], events[k + 1]):
            if variant == site.variant:
                return _splice(diagram, k, 2, [e2, e1])
        raise MoveError(f"events {k} and {k + 1} do not commute ({site.variant or 'plain'})")
    if site.kind is MoveKind.TRIPLE_POINT:
        triple = _triple_point(window)
        if not triple or triple[0] != site.variant:
            raise MoveError(f"no triple point at {site}")
        return _splice(diagram, k, 3, triple[1])
    if site.kind is MoveKind.CUSP_THROUGH_STRAND:
        if site.forward:
            long_form = _through_strand_long(site.variant, events[k], diagram.strand_counts()[k])
            if not long_form:
                raise MoveError(f"no cusp to push through a strand at {site}")
            return _splice(diagram, k, 1, long_form)
        short = _through_strand_short(site.variant, window)
        if not short:
            raise MoveError(f"no strand to pull off a cusp at {site}")
        return _splice(diagram, k, 3, [short])
    if site.kind is MoveKind.CUSP_CROSSING_SLIDE:
        tail = _swallowtail_variant(window)
        if not tail or tail[0] != site.variant:
            raise MoveError(f"no swallowtail at {site}")
        return _splice(diagram, k, 3, [])
    if site.kind is MoveKind.ZIGZAG_SWAP:
        swapped = _zigzag_swap(events[k:k + 4])
        if not swapped:
            raise MoveError(f"no pair of opposite zigzags at {site}")
        return _splice(diagram, k, 4, swapped)
    raise MoveError(f"unknown move kind {site.kind}")


# ------------------------------------------------------------ stabilisation

def _zigzag(position: int, downward_pattern: bool) -> List[Event]:
    if downward_pattern:
        return [L(position), R(position + 1)]
    return [L(position + 1), R(position)]


def stabilize(diagram: FrontDiagram, component: int, sign: Sign) -> FrontDiagram:
    s = _sign(sign)
    if not 0 <= component < diagram.component_count:
        raise FrontError(f"unknown component {component}")
    trace = diagram.trace
    k, position = trace.first_segment(component)
    direction = trace.direction_at(k, position)
    # a zigzag through the lower side of a rightward strand has both cusps downward
    zigzag = _zigzag(position, (s == 1) == (direction == 1))
    events = diagram.events
    new_events = events[:k] + tuple(zigzag) + events[k:]
    pairs = [(t, t) for t in range(k + 1)] + [(t, t + 2) for t in range(k, len(events) + 1)]
    return _transfer(diagram, diagram.base_strands, new_events, pairs)


def _find_component(diagram: FrontDiagram, link_label: int) -> int:
    for component in range(diagram.component_count):
        if diagram.label(component) == link_label:
            return component
    raise MoveError(f"component with label {link_label} disappeared")


def _zigzag_partner(diagram: FrontDiagram, window: int) -> Optional[int]:
    """Index of a right cusp closing a zigzag with the left cusp at index 0."""
    trace = diagram.trace
    cusps = {idx: (lower, upper) for idx, _kind, lower, upper in trace.cusps}
    a, b = cusps[0]
    for idx in range(1, min(window, len(diagram.events) - 1) + 1):
        if diagram.events[idx].kind is not EventKind.RIGHT_CUSP:
            continue
        lower, upper = cusps[idx]
        if (lower == b and upper != a) or (upper == a and lower != b):
            return idx
    return None


def destabilize(diagram: FrontDiagram, component: int, sign: Sign,
                window: int = DEFAULT_DESTABILIZE_WINDOW) -> Optional[FrontDiagram]:
    s = _sign(sign)
    if not 0 <= component < diagram.component_count:
        raise FrontError(f"unknown component {component}")
    link_label = diagram.label(component)
    trace = diagram.trace
    left_cusps = [idx for idx, kind, lower, _ in trace.cusps
                  if kind is EventKind.LEFT_CUSP and trace.arc_component[lower] == component]
    for idx in left_cusps:
        current = diagram
        for _ in range(idx):
            current = _rotate(current, True)
        partner = _zigzag_partner(current, window)
        if partner is None:
            continue
        for t in range(partner, 1, -1):
            options = _commute_options(current.events[t - 1], current.events[t])
            if not options:
                break
            current = apply_move(current, MoveSite(MoveKind.COMMUTE, t - 1, options[0][0]))
        else:
            found = _remove_zigzag(current, s)
            if found is not None:
                log.debug(f"Destabilised component {component} ({s:+d}) at cusp {idx}")
                _find_component(found, link_label)
                return found
    return None


def _remove_zigzag(diagram: FrontDiagram, sign: int) -> Optional[FrontDiagram]:
    events = diagram.events
    if len(events) < 2 or events[0].kind is not EventKind.LEFT_CUSP or events[1].kind is not EventKind.RIGHT_CUSP:
        return None
    if abs(events[0].position - events[1].position) != 1:
        return None
    trace = diagram.trace
    (_, k0, lower0, _), (_, k1, lower1, _) = trace.cusps[0], trace.cusps[1]
    down0, down1 = cusp_is_downward(trace, k0, lower0), cusp_is_downward(trace, k1, lower1)
    if down0 != down1 or (1 if down0 else -1) != sign:
        return None
    pairs = [(0, 0)] + [(t + 2, t) for t in range(len(events) - 1)]
    return _transfer(diagram, diagram.base_strands, events[2:], pairs)


# --------------------------------------------------------------- canonical key

def exact_key(diagram: FrontDiagram) -> tuple:
    annotations = tuple((diagram.orientation(c), diagram.label(c)) for c in range(diagram.component_count))
    word = tuple((ev.kind.value, ev.position) for ev in diagram.events)
    return (diagram.base_strands, word, annotations)


def _independent(e1: Event, e2: Event) -> bool:
    # only crossings on disjoint strand pairs commute without renumbering anything
    return (e1.kind is EventKind.CROSSING and e2.kind is EventKind.CROSSING
            and abs(e1.position - e2.position) >= 2)


def _letter(ev: Event) -> Tuple[str, int]:
    return ev.kind.value, ev.position


def trace_normal_form(events: Sequence[Event]) -> Tuple[Event, ...]:
    """Least word, letter by letter, reachable by swapping adjacent independent crossings."""
    remaining = list(events)
    out: List[Event] = []
    while remaining:
        best = 0
        for idx, ev in enumerate(remaining):
            if idx and all(_independent(prev, ev) for prev in remaining[:idx]):
                if _letter(ev) < _letter(remaining[best]):
                    best = idx
            if ev.kind is not EventKind.CROSSING:
                break
        out.append(remaining.pop(best))
    return tuple(out)


def _reorder_steps(events: Sequence[Event], target: Sequence[Event]) -> List[MoveSite]:
    """Commutes turning `events` into `target`, one independent pair at a time."""
    current = list(events)
    steps = []
    for t, wanted in enumerate(target):
        idx = current.index(wanted, t)
        for k in range(idx, t, -1):
            if not _independent(current[k - 1], current[k]):
                raise MoveError("words differ by more than commuting crossings")
            current[k - 1], current[k] = current[k], current[k - 1]
            steps.append(MoveSite(MoveKind.COMMUTE, k - 1))
    return steps


def _normalized(diagram: FrontDiagram) -> Tuple[FrontDiagram, List[MoveSite]]:
    target = trace_normal_form(diagram.events)
    if target == diagram.events:
        return diagram, []
    # crossings add no arcs, so component numbering and annotations carry over
    return diagram.replace(events=target), _reorder_steps(diagram.events, target)


def normal_form(diagram: FrontDiagram) -> FrontDiagram:
    return _normalized(diagram)[0]


OrbitEntry = Tuple[FrontDiagram, Optional[tuple], Tuple[MoveSite, ...]]


def orbit(diagram: FrontDiagram, limit: int = DEFAULT_ORBIT_LIMIT) -> Dict[tuple, OrbitEntry]:
    """Words up to RotateBasepoint and commuting independent crossings.

    Every member is kept in `trace_normal_form`. A step moves one letter that
    can lead the word to the front and rotates it to the end, so the class is
    the finite set of cyclic shifts of the crossing trace. Entries hold the BFS
    parent and the moves from the parent's word (from `diagram` for the root).
    """
    root, steps = _normalized(diagram)
    seen: Dict[tuple, OrbitEntry] = {exact_key(root): (root, None, tuple(steps))}
    queue = deque([root])
    rotate = MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=True)
    while queue:
        current = queue.popleft()
        current_key = exact_key(current)
        events = current.events
        for idx, ev in enumerate(events):
            if all(_independent(prev, ev) for prev in events[:idx]):
                moved = (ev,) + events[:idx] + events[idx + 1:]
                lead = _reorder_steps(events, moved)
                rotated = _rotate(current.replace(events=moved) if lead else current, True)
                nxt, tail = _normalized(rotated)
                key = exact_key(nxt)
                if key not in seen:
                    seen[key] = (nxt, current_key, tuple(lead + [rotate] + tail))
                    if len(seen) >= limit:
                        log.warning(f"Planar class of {diagram} truncated at {limit} words")
                        return seen
                    queue.append(nxt)
            if ev.kind is not EventKind.CROSSING:
                break
    return seen


def orbit_path(entries: Dict[tuple, OrbitEntry], key: tuple) -> List[MoveSite]:
    """Moves from the diagram the entries were built from to the member `key`."""
    chunks = []
    while key is not None:
        _diagram, parent, steps = entries[key]
        chunks.append(steps)
        key = parent
    return [site for chunk in reversed(chunks) for site in chunk]


def canonical_key(diagram: FrontDiagram, limit: int = DEFAULT_ORBIT_LIMIT) -> tuple:
    return min(orbit(diagram, limit))


# ------------------------------------------------------------- search support

def inverse_move(after: FrontDiagram, before: FrontDiagram, site: MoveSite) -> MoveSite:
    """The move taking `after` back to `before`, where `after` came from `site`."""
    if site.kind is MoveKind.ROTATE_BASEPOINT:
        return MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=not site.forward)
    pair = after.events[site.index:site.index + 2]
    if site.kind is MoveKind.COMMUTE and len(pair) == 2 and _independent(*pair):
        return site
    wanted = exact_key(before)
    for candidate in applicable_moves(after, include_births=True):
        if candidate.kind is MoveKind.ROTATE_BASEPOINT:
            continue
        if exact_key(apply_move(after, candidate)) == wanted:
            return candidate
    raise MoveError(f"no move undoes {site}")


def invert_path(start: FrontDiagram, path: Sequence[MoveSite]) -> List[MoveSite]:
    """Moves from the end of `path` (replayed on `start`) back to `start`."""
    diagrams = [start]
    for site in path:
        diagrams.append(apply_move(diagrams[-1], site))
    return [inverse_move(diagrams[idx + 1], diagrams[idx], path[idx]) for idx in reversed(range(len(path)))]


def _descendants(events: Sequence[Event]) -> List[int]:
    """Bit masks of the events each event must stay in front of."""
    reach = [0] * len(events)
    for i in range(len(events) - 1, -1, -1):
        for j in range(i + 1, len(events)):
            if not _independent(events[i], events[j]):
                reach[i] |= (1 << j) | reach[j]
    return reach


def _gather(events: Sequence[Event], reach: List[int], chosen: Sequence[int]) -> Optional[Tuple[tuple, int]]:
    """Reorder independent crossings so the chosen events stand next to each
    other; returns the word and the index of the first chosen event."""
    mask = 0
    above = 0
    for s in chosen:
        mask |= 1 << s
        above |= reach[s]
    above &= ~mask
    indices = range(len(events))
    if any(above >> y & 1 and reach[y] & mask for y in indices):
        return None
    before = [events[y] for y in indices if not (mask | above) >> y & 1]
    after = [events[y] for y in indices if above >> y & 1]
    return tuple(before + [events[s] for s in chosen] + after), len(before)


Reachable = Tuple[FrontDiagram, List[MoveSite], MoveSite]


def reachable_moves(diagram: FrontDiagram, include_births: bool = False) -> List[Reachable]:
    """Moves other than RotateBasepoint and crossing commutes, on this word or
    on any word its independent crossings commute to.

    Each entry is (word the move applies to, commutes leading there, move).
    """
    events = diagram.events
    n = len(events)
    found: List[Reachable] = [(diagram, [], site) for site in _single_sites(diagram, include_births)]
    found += [(diagram, [], MoveSite(MoveKind.ZIGZAG_SWAP, k)) for k in range(n) if _zigzag_swap(events[k:k + 4])]
    reach = _descendants(events)

    def emit(chosen, make_sites):
        gathered = _gather(events, reach, chosen)
        if gathered is None:
            return
        word, t = gathered
        if word == events:
            linear, lead = diagram, []
        else:
            linear, lead = diagram.replace(events=word), _reorder_steps(events, word)
        for site in make_sites(word, t):
            found.append((linear, lead, site))

    for i in range(n):
        for j in range(i + 1, n):
            if _independent(events[i], events[j]):
                continue
            if _commute_options(events[i], events[j]):
                emit((i, j), lambda word, t: _pair_sites(word[t], word[t + 1], t))
            for k in range(j + 1, n):
                if _triple_sites((events[i], events[j], events[k]), 0):
                    emit((i, j, k), lambda word, t: _triple_sites(word[t:t + 3], t))
    return found
