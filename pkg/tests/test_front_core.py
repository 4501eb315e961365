from math import gcd

import pytest

from src.front_core import (
    EventKind, FrontDiagram, FrontError, L, R, X, all_invariants, cable_link_front, crossing_sign,
    crossing_sums_by_label, inter_component_crossing_sum, invariants, invariants_by_label, lambda_front,
    meridian_eye_front, torus_braid_front, trace_components, validate,
)


def test_lambda_front_has_unknotted_straight_components():
    diagram = lambda_front(3)
    assert diagram.component_count == 3
    for component in range(3):
        assert invariants(diagram, component).as_tuple() == (0, 0, 1)
    assert crossing_sums_by_label(diagram) == {(0, 1): 0, (0, 2): 0, (1, 2): 0}


def test_lambda_front_needs_a_strand():
    with pytest.raises(FrontError):
        lambda_front(0)


def test_meridian_eye_invariants():
    eye = meridian_eye_front()
    assert eye.component_count == 2
    assert invariants(eye, 0).as_tuple() == (0, 0, 1)
    assert invariants(eye, 1).as_tuple() == (-1, 0, 0)
    assert crossing_sums_by_label(eye) == {(0, 1): 2}


@pytest.mark.parametrize("p", range(1, 7))
@pytest.mark.parametrize("q", range(1, 7))
def test_torus_braid_invariants(p, q):
    if gcd(p, q) != 1:
        pytest.skip("not a knot")
    diagram = torus_braid_front(p, q)
    assert diagram.component_count == 1
    assert invariants(diagram, 0).as_tuple() == (p * (q - 1), 0, q)


def test_torus_braid_rejects_non_coprime():
    with pytest.raises(FrontError):
        torus_braid_front(2, 4)


@pytest.mark.parametrize("p, q", [(1, 1), (1, 2), (2, 3), (3, 2), (3, 4), (2, 5), (1, 3), (4, 3)])
def test_cable_link_front_components(p, q):
    diagram = cable_link_front(p, q)
    assert diagram.component_count == 2
    inv = all_invariants(diagram)
    assert inv[0].as_tuple() == (0, 0, 1)
    assert inv[1].as_tuple() == (p * (q - 1), 0, q)
    assert crossing_sums_by_label(diagram) == {(0, 1): 2 * p}
    assert inter_component_crossing_sum(diagram, 0, 1) == 2 * p


def test_reversing_a_component_flips_rot_and_winding():
    eye = meridian_eye_front()
    flipped = eye.replace(orientations={1: -1})
    assert invariants(flipped, 1).as_tuple() == (-1, 0, 0)
    base_flipped = eye.replace(orientations={0: -1})
    assert invariants(base_flipped, 0).winding == -1
    assert crossing_sums_by_label(base_flipped) == {(0, 1): -2}


def test_crossing_sign_of_self_crossing():
    diagram = torus_braid_front(1, 2)
    assert crossing_sign(diagram, 0) == 1
    with pytest.raises(FrontError):
        crossing_sign(meridian_eye_front(), 0)


def test_sparse_annotations_are_normalised():
    a = FrontDiagram(2, (), {0: 1, 1: 1}, {0: 0, 1: 1})
    b = FrontDiagram(2)
    assert a == b
    assert a.labels == () and a.orientations == ()


def test_labels_travel_with_components():
    swapped = lambda_front(2).replace(labels={0: 1, 1: 0})
    assert swapped.label(0) == 1 and swapped.label(1) == 0
    assert set(invariants_by_label(swapped)) == {0, 1}


@pytest.mark.parametrize("diagram, rule", [
    (FrontDiagram(1, (X(1),)), "crossing needs two strands"),
    (FrontDiagram(2, (X(2),)), "crossing above the top strand"),
    (FrontDiagram(1, (L(3),)), "left cusp above the top gap"),
    (FrontDiagram(1, (R(1),)), "right cusp needs two strands"),
    (FrontDiagram(1, (L(1),)), "closure"),
])
def test_validate_structure(diagram, rule):
    report = validate(diagram)
    assert not report.ok
    assert rule in str(report)


def test_closed_loop_with_a_crossing():
    diagram = FrontDiagram(0, (L(1), X(1), R(1)))
    assert validate(diagram).ok
    assert diagram.component_count == 1
    assert invariants(diagram, 0).as_tuple() == (-2, 1, 0)


def test_validate_rejects_bad_annotations():
    report = validate(FrontDiagram(1, (), {3: -1}))
    assert "unknown component" in str(report)
    report = validate(FrontDiagram(2, (), (), {0: 1}))
    assert "duplicate link label" in str(report)


def test_trace_first_segment_after_left_cusp():
    trace = meridian_eye_front().trace
    assert trace.first_segment(0) == (0, 1)
    assert trace.first_segment(1) == (1, 2)
    assert [kind for _, kind, _, _ in trace.cusps] == [EventKind.LEFT_CUSP, EventKind.RIGHT_CUSP]


def test_reversing_every_component_keeps_tb(rng, make_front):
    for _ in range(50):
        diagram = make_front(rng)
        reversed_all = diagram.replace(orientations={c: -1 for c in range(diagram.component_count)})
        for component, inv in all_invariants(diagram).items():
            flipped = invariants(reversed_all, component)
            assert flipped.as_tuple() == (inv.tb, -inv.rot, -inv.winding)


def test_trace_of_eye():
    trace = trace_components(meridian_eye_front())
    assert trace.component_count == 2
    assert len(trace.slices[0]) == 1 and len(trace.slices[1]) == 3
    assert trace.winding == [1, 0]
    assert len(trace.crossings) == 2 and len(trace.cusps) == 2


def test_trace_rejects_structurally_invalid_front():
    with pytest.raises(FrontError):
        trace_components(FrontDiagram(1, (X(1),)))


def test_inter_component_crossing_sum():
    eye = meridian_eye_front()
    assert inter_component_crossing_sum(eye, 0, 1) == inter_component_crossing_sum(eye, 1, 0) == 2
    # every block of the cable passes L1 once in front of and once behind L0
    assert inter_component_crossing_sum(cable_link_front(2, 3), 0, 1) == 4
    with pytest.raises(FrontError):
        inter_component_crossing_sum(eye, 1, 1)
    with pytest.raises(FrontError):
        inter_component_crossing_sum(eye, 0, 2)
