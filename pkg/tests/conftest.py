import random

import pytest

from src.front_core import FrontDiagram, L, R, X, validate


def random_front(rng: random.Random, max_events: int = 8, max_base: int = 2) -> FrontDiagram:
    """A random valid front: random events, then R1/L1 until the strand count closes up."""
    while True:
        base = rng.randint(0, max_base)
        count = base
        events = []
        for _ in range(rng.randint(1, max_events)):
            choices = ["L"]
            if count >= 2:
                choices += ["X", "X", "R"]
            kind = rng.choice(choices)
            if kind == "X":
                events.append(X(rng.randint(1, count - 1)))
            elif kind == "L":
                events.append(L(rng.randint(1, count + 1)))
                count += 2
            else:
                events.append(R(rng.randint(1, count - 1)))
                count -= 2
        while count > base:
            events.append(R(1))
            count -= 2
        while count < base:
            events.append(L(1))
            count += 2
        diagram = FrontDiagram(base, tuple(events))
        if validate(diagram).ok and diagram.component_count:
            return diagram


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def make_front():
    return random_front


@pytest.fixture
def small_config():
    return {
        "search": {"max_depth": 14, "max_states": 200000, "orbit_limit": 20000, "allow_births": False},
        "moves": {"destabilize_window": 8},
        "slopes": {"r_margin": 2, "stability_step": 2},
        "svg": {"x_step": 40, "z_step": 30, "margin": 20, "stroke_width": 2, "palette": ["#000000", "#ff0000"]},
        "grid": {"p_min": -3, "p_max": 3, "q_max": 3, "m_max": 2},
    }
