# isotopy_search.py
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from src.front_core import FrontDiagram, all_invariants, crossing_sums_by_label, invariants_by_label
from src.moves import (
    DEFAULT_ORBIT_LIMIT, PLANAR_KINDS, MoveError, MoveKind, MoveSite, apply_move, exact_key, invert_path,
    normal_form, orbit, orbit_path, reachable_moves,
)

log = logging.getLogger("IsotopySearch")

DEFAULT_MAX_DEPTH = 14
DEFAULT_MAX_STATES = 2_000_000


class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_ISOTOPIC = "not-isotopic"
    BUDGET_EXHAUSTED = "budget-exhausted"
    FRONTIER_EXHAUSTED = "frontier-exhausted"


@dataclass
class SearchResult:
    status: SearchStatus
    path: List[MoveSite] = field(default_factory=list)
    states: int = 0
    depth: int = 0
    reason: str = ""
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


@dataclass
class _Node:
    diagram: FrontDiagram
    parent: Optional[tuple] = None
    steps: Tuple[MoveSite, ...] = ()
    depth: int = 0


def invariant_mismatch(d1: FrontDiagram, d2: FrontDiagram) -> Optional[str]:
    """A reason the two links cannot be isotopic, read off classical data."""
    multiset1 = Counter(inv.as_tuple() for inv in all_invariants(d1).values())
    multiset2 = Counter(inv.as_tuple() for inv in all_invariants(d2).values())
    if multiset1 != multiset2:
        return "component invariants (tb, rot, winding) differ"
    if invariants_by_label(d1) != invariants_by_label(d2):
        return "invariants of equally labelled components differ"
    if crossing_sums_by_label(d1) != crossing_sums_by_label(d2):
        return "inter-component crossing sums differ"
    return None


class IsotopySearch:
    """Bidirectional breadth-first search over classes of words up to
    RotateBasepoint and commuting independent crossings.

    Every other move, cusp commutes included, is one level of depth. The
    returned path also lists the planar moves needed between them.
    """

    def __init__(self, config: Optional[Mapping] = None):
        search_cfg = (config or {}).get("search", {})
        self.max_depth = search_cfg.get("max_depth", DEFAULT_MAX_DEPTH)
        self.max_states = search_cfg.get("max_states", DEFAULT_MAX_STATES)
        self.orbit_limit = search_cfg.get("orbit_limit", DEFAULT_ORBIT_LIMIT)
        self.allow_births = search_cfg.get("allow_births", False)
        self._keys: Dict[tuple, tuple] = {}

    def canonical(self, diagram: FrontDiagram) -> tuple:
        normal = normal_form(diagram)
        key = exact_key(normal)
        if key not in self._keys:
            members = orbit(normal, self.orbit_limit)
            canon = min(members)
            for member in members:
                self._keys[member] = canon
        return self._keys[key]

    @staticmethod
    def _presentations(diagram: FrontDiagram):
        """The word under each basepoint, with the rotations leading there."""
        rotate = MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=True)
        current, lead = diagram, []
        for _ in range(max(len(diagram.events), 1)):
            yield current, list(lead)
            current = apply_move(current, rotate)
            lead.append(rotate)

    def _expand(self, node: _Node, depth: int):
        for presented, rotations in self._presentations(node.diagram):
            for word, commutes, site in reachable_moves(presented, include_births=self.allow_births):
                result = apply_move(word, site)
                steps = tuple(rotations + commutes + [site])
                yield self.canonical(result), _Node(result, steps=steps, depth=depth)

    def run(self, d1: FrontDiagram, d2: FrontDiagram, max_depth: Optional[int] = None,
            max_states: Optional[int] = None) -> SearchResult:
        started = time.monotonic()
        max_depth = self.max_depth if max_depth is None else max_depth
        max_states = self.max_states if max_states is None else max_states
        mismatch = invariant_mismatch(d1, d2)
        if mismatch:
            log.info(f"Search short-circuited: {mismatch}")
            return SearchResult(SearchStatus.NOT_ISOTOPIC, reason=mismatch)

        k1, k2 = self.canonical(d1), self.canonical(d2)
        sides = ({k1: _Node(d1)}, {k2: _Node(d2)})
        frontiers = ([k1], [k2])
        depths = [0, 0]
        if k1 == k2:
            return self._finish(sides, k1, started)

        while True:
            states = len(sides[0]) + len(sides[1])
            if not frontiers[0] or not frontiers[1]:
                return SearchResult(SearchStatus.FRONTIER_EXHAUSTED, states=states, depth=sum(depths),
                                    reason="every reachable class explored without a meeting",
                                    elapsed=time.monotonic() - started)
            if depths[0] + depths[1] >= max_depth:
                log.warning(f"Search depth {max_depth} exhausted after {states} states")
                return SearchResult(SearchStatus.BUDGET_EXHAUSTED, states=states, depth=sum(depths),
                                    reason=f"depth budget {max_depth} exhausted",
                                    elapsed=time.monotonic() - started)
            side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
            own, other = sides[side], sides[1 - side]
            depths[side] += 1
            next_frontier = []
            for key in frontiers[side]:
                for new_key, node in self._expand(own[key], depths[side]):
                    if new_key in own:
                        continue
                    node.parent = key
                    own[new_key] = node
                    if new_key in other:
                        return self._finish(sides, new_key, started)
                    next_frontier.append(new_key)
                    if len(own) + len(other) >= max_states:
                        log.warning(f"Search state budget {max_states} exhausted")
                        return SearchResult(SearchStatus.BUDGET_EXHAUSTED, states=max_states,
                                            depth=sum(depths), reason=f"state budget {max_states} exhausted",
                                            elapsed=time.monotonic() - started)
            frontiers[side][:] = next_frontier
            log.debug(f"Search level: side={side} depth={depths[side]} frontier={len(next_frontier)} "
                      f"states={len(own) + len(other)}")

    def _finish(self, sides, key, started) -> SearchResult:
        forward, backward = sides
        chain = []
        current = key
        while forward[current].parent is not None:
            chain.append(forward[current])
            current = forward[current].parent
        path: List[MoveSite] = [site for node in reversed(chain) for site in node.steps]
        path += self._connect(forward[key].diagram, backward[key].diagram)

        depth = len(chain)
        node = backward[key]
        while node.parent is not None:
            parent = backward[node.parent]
            path += invert_path(parent.diagram, node.steps)
            node = parent
            depth += 1

        states = len(forward) + len(backward)
        planar = sum(site.kind in PLANAR_KINDS for site in path)
        log.info(f"Isotopy found: {len(path)} moves ({planar} planar), depth {depth}, {states} states")
        return SearchResult(SearchStatus.FOUND, path, states, depth, elapsed=time.monotonic() - started)

    def _connect(self, source: FrontDiagram, target: FrontDiagram) -> List[MoveSite]:
        """Planar moves between two words with the same canonical key."""
        if exact_key(source) == exact_key(target):
            return []
        source_class = orbit(source, self.orbit_limit)
        target_class = orbit(target, self.orbit_limit)
        meeting = min(source_class)
        if meeting not in target_class:
            raise MoveError("meeting words are not related by planar moves")
        return orbit_path(source_class, meeting) + invert_path(target, orbit_path(target_class, meeting))


def search_isotopy(d1: FrontDiagram, d2: FrontDiagram, max_depth: Optional[int] = None,
                   max_states: Optional[int] = None, config: Optional[Mapping] = None) -> SearchResult:
    return IsotopySearch(config).run(d1, d2, max_depth, max_states)


def replay(diagram: FrontDiagram, path: List[MoveSite]) -> FrontDiagram:
    for site in path:
        diagram = apply_move(diagram, site)
    return diagram
