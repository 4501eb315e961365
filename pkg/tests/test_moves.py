import pytest

from src.front_core import (
    FrontDiagram, FrontError, L, R, X, all_invariants, cable_link_front, crossing_sums_by_label,
    invariants_by_label, lambda_front, meridian_eye_front, torus_braid_front, validate,
)
from src.moves import (
    MoveError, MoveKind, MoveSite, PLANAR_KINDS, applicable_moves, apply_move, canonical_key, destabilize,
    exact_key, invert_path, orbit, orbit_path, reachable_moves, stabilize, trace_normal_form,
)


def _classical(diagram):
    by_label = {label: inv.as_tuple() for label, inv in invariants_by_label(diagram).items()}
    return by_label, crossing_sums_by_label(diagram)


def test_stabilize_lambda_zero():
    plus = stabilize(lambda_front(1), 0, "+")
    assert plus.events == (L(1), R(2))
    assert all_invariants(plus)[0].as_tuple() == (-1, 1, 1)
    minus = stabilize(lambda_front(1), 0, "-")
    assert minus.events == (L(2), R(1))
    assert all_invariants(minus)[0].as_tuple() == (-1, -1, 1)


def test_stabilize_rejects_bad_input():
    with pytest.raises(FrontError):
        stabilize(lambda_front(1), 2, "+")
    with pytest.raises(MoveError):
        stabilize(lambda_front(1), 0, "*")


def test_stabilize_keeps_labels():
    swapped = lambda_front(2).replace(labels={0: 1, 1: 0})
    stabilized = stabilize(swapped, 0, "+")
    assert invariants_by_label(stabilized)[1].as_tuple() == (-1, 1, 1)
    assert invariants_by_label(stabilized)[0].as_tuple() == (0, 0, 1)


def test_stabilize_changes_tb_and_rot(rng, make_front):
    for _ in range(100):
        diagram = make_front(rng)
        component = rng.randrange(diagram.component_count)
        sign = rng.choice("+-")
        label = diagram.label(component)
        before = invariants_by_label(diagram)
        after = invariants_by_label(stabilize(diagram, component, sign))
        step = 1 if sign == "+" else -1
        assert after[label].tb == before[label].tb - 1
        assert after[label].rot == before[label].rot + step
        assert after[label].winding == before[label].winding
        for other in before:
            if other != label:
                assert after[other] == before[other]


def test_random_moves_preserve_invariants(rng, make_front):
    violations = 0
    for _ in range(200):
        diagram = make_front(rng)
        site = rng.choice(applicable_moves(diagram))
        moved = apply_move(diagram, site)
        assert validate(moved).ok
        if _classical(moved) != _classical(diagram):
            violations += 1
    assert violations == 0


def test_every_listed_move_applies(make_front, rng):
    for _ in range(20):
        diagram = make_front(rng)
        for site in applicable_moves(diagram, include_births=False):
            assert validate(apply_move(diagram, site)).ok


def test_cusp_through_strand_round_trip():
    diagram = stabilize(lambda_front(2), 1, "+")
    assert diagram.events == (L(2), R(3))
    site = MoveSite(MoveKind.CUSP_THROUGH_STRAND, 0, "left-below", forward=True)
    pushed = apply_move(diagram, site)
    assert pushed.events == (L(1), X(2), X(1), R(3))
    back = MoveSite(MoveKind.CUSP_THROUGH_STRAND, 0, "left-below", forward=False)
    assert back in applicable_moves(pushed)
    assert apply_move(pushed, back) == diagram


def test_triple_point():
    diagram = FrontDiagram(3, (X(1), X(2), X(1)))
    site = MoveSite(MoveKind.TRIPLE_POINT, 0, "lower-first")
    assert site in applicable_moves(diagram)
    moved = apply_move(diagram, site)
    assert moved.events == (X(2), X(1), X(2))
    assert apply_move(moved, MoveSite(MoveKind.TRIPLE_POINT, 0, "upper-first")).events == diagram.events


def test_swallowtail_birth_and_death():
    diagram = lambda_front(1)
    birth = MoveSite(MoveKind.CUSP_CROSSING_SLIDE, 0, "lower", position=1, forward=True)
    assert birth in applicable_moves(diagram)
    assert birth not in applicable_moves(diagram, include_births=False)
    born = apply_move(diagram, birth)
    assert born.events == (L(2), X(1), R(2))
    assert _classical(born) == _classical(diagram)
    death = MoveSite(MoveKind.CUSP_CROSSING_SLIDE, 0, "lower", forward=False)
    assert apply_move(born, death) == diagram


def test_commute_far_apart_events():
    diagram = FrontDiagram(4, (X(1), X(3)))
    moved = apply_move(diagram, MoveSite(MoveKind.COMMUTE, 0))
    assert moved.events == (X(3), X(1))


def test_commute_right_then_left_cusp_has_two_variants():
    diagram = FrontDiagram(2, (R(1), L(1)))
    variants = {site.variant for site in applicable_moves(diagram) if site.kind is MoveKind.COMMUTE}
    assert variants == {"below", "above"}
    below = apply_move(diagram, MoveSite(MoveKind.COMMUTE, 0, "below"))
    assert below.events == (L(1), R(3))


def test_illegal_moves_raise():
    with pytest.raises(MoveError):
        apply_move(FrontDiagram(3, (X(1), X(2))), MoveSite(MoveKind.COMMUTE, 0))
    with pytest.raises(MoveError):
        apply_move(lambda_front(1), MoveSite(MoveKind.TRIPLE_POINT, 0, "lower-first"))


def test_rotate_basepoint_is_invertible():
    eye = meridian_eye_front()
    forward = apply_move(eye, MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=True))
    assert forward.base_strands == 3
    assert forward.events == (X(1), X(1), R(2), L(2))
    back = apply_move(forward, MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=False))
    assert exact_key(back) == exact_key(eye)
    assert _classical(forward) == _classical(eye)


def test_orbit_paths_replay_to_members():
    diagram = torus_braid_front(2, 3)
    members = orbit(diagram)
    assert exact_key(diagram) in members
    for key, (member, _parent, _site) in members.items():
        current = diagram
        for site in orbit_path(members, key):
            assert site.kind in PLANAR_KINDS
            current = apply_move(current, site)
        assert exact_key(current) == key


def test_canonical_key_ignores_rotation_but_not_labels():
    plus_minus = stabilize(stabilize(lambda_front(1), 0, "+"), 0, "-")
    minus_plus = stabilize(stabilize(lambda_front(1), 0, "-"), 0, "+")
    assert canonical_key(plus_minus) == canonical_key(minus_plus)
    swapped = lambda_front(2).replace(labels={0: 1, 1: 0})
    assert canonical_key(swapped) != canonical_key(lambda_front(2))


@pytest.mark.parametrize("sign", ["+", "-"])
def test_destabilize_undoes_stabilize(sign):
    eye = meridian_eye_front()
    for component in range(eye.component_count):
        stabilized = stabilize(eye, component, sign)
        reduced = destabilize(stabilized, component, sign)
        assert reduced is not None
        assert _classical(reduced) == _classical(eye)


def test_destabilize_needs_matching_sign():
    plus = stabilize(lambda_front(1), 0, "+")
    assert destabilize(plus, 0, "-") is None
    assert destabilize(lambda_front(1), 0, "+") is None


ROTATE = MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=True)


def test_trace_normal_form_sorts_independent_crossings():
    assert trace_normal_form((X(3), X(1))) == (X(1), X(3))
    assert trace_normal_form((X(2), X(1))) == (X(2), X(1))
    assert trace_normal_form((X(4), L(1), X(1))) == (X(4), L(1), X(1))
    assert trace_normal_form((X(5), X(3), X(1), X(4))) == (X(1), X(3), X(5), X(4))


def test_canonical_key_of_disjoint_crossings_survives_rotation_and_commute():
    diagram = FrontDiagram(12, tuple(X(i) for i in (1, 3, 5, 7, 9, 11) * 2))
    moved = apply_move(apply_move(diagram, ROTATE), ROTATE)
    moved = apply_move(moved, MoveSite(MoveKind.COMMUTE, 0))
    assert moved.events != diagram.events
    assert canonical_key(moved) == canonical_key(diagram)


def test_canonical_key_is_invariant_on_random_fronts(rng, make_front):
    for _ in range(30):
        diagram = make_front(rng)
        key = canonical_key(diagram)
        assert canonical_key(apply_move(diagram, ROTATE)) == key
        back = MoveSite(MoveKind.ROTATE_BASEPOINT, 0, forward=False)
        assert canonical_key(apply_move(diagram, back)) == key
        for site in applicable_moves(diagram, include_births=False):
            pair = diagram.events[site.index:site.index + 2]
            if site.kind is MoveKind.COMMUTE and all(ev.kind.value == "X" for ev in pair):
                assert canonical_key(apply_move(diagram, site)) == key


def test_planar_class_of_a_zigzag_is_finite():
    members = orbit(stabilize(lambda_front(1), 0, "+"))
    assert len(members) == 2
    assert {member.base_strands for member, _parent, _steps in members.values()} == {1, 3}


def test_canonical_key_separates_stabilized_fronts():
    assert canonical_key(stabilize(lambda_front(1), 0, "+")) != canonical_key(lambda_front(1))


@pytest.mark.parametrize("diagram", [
    lambda_front(1), lambda_front(2), lambda_front(3), torus_braid_front(2, 3), cable_link_front(2, 3),
], ids=["lambda1", "lambda2", "lambda3", "torus23", "cable23"])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_destabilize_restores_canonical_key(diagram, sign):
    for component in range(diagram.component_count):
        reduced = destabilize(stabilize(diagram, component, sign), component, sign)
        assert reduced is not None
        assert canonical_key(reduced) == canonical_key(diagram)


def test_destabilize_restores_canonical_key_of_eye_core():
    eye = meridian_eye_front()
    reduced = destabilize(stabilize(eye, 0, "+"), 0, "+")
    assert canonical_key(reduced) == canonical_key(eye)


def test_zigzag_swap_reorders_opposite_stabilizations():
    plus_minus = stabilize(stabilize(lambda_front(2), 1, "+"), 1, "-")
    minus_plus = stabilize(stabilize(lambda_front(2), 1, "-"), 1, "+")
    site = MoveSite(MoveKind.ZIGZAG_SWAP, 0)
    assert site in applicable_moves(plus_minus)
    swapped = apply_move(plus_minus, site)
    assert exact_key(swapped) == exact_key(minus_plus)
    assert _classical(swapped) == _classical(plus_minus)
    with pytest.raises(MoveError):
        apply_move(stabilize(stabilize(lambda_front(1), 0, "+"), 0, "+"), site)


def test_reachable_moves_look_past_independent_crossings():
    diagram = FrontDiagram(3, (L(1), X(2), X(4), X(1), R(4)))
    assert validate(diagram).ok
    pulled = [(word, lead, site) for word, lead, site in reachable_moves(diagram)
              if site.kind is MoveKind.CUSP_THROUGH_STRAND and not site.forward]
    assert pulled
    word, lead, site = pulled[0]
    assert word.events == (L(1), X(2), X(1), X(4), R(4))
    assert lead == [MoveSite(MoveKind.COMMUTE, 2)]
    current = diagram
    for step in lead:
        current = apply_move(current, step)
    assert exact_key(current) == exact_key(word)
    result = apply_move(word, site)
    assert result.events == (L(2), X(4), R(4))
    assert _classical(result) == _classical(diagram)


def test_reachable_moves_skip_crossing_commutes():
    diagram = FrontDiagram(4, (X(1), X(3)))
    assert reachable_moves(diagram) == []


def test_invert_path_returns_to_start(rng, make_front):
    for _ in range(20):
        diagram = make_front(rng)
        path, current = [], diagram
        for _ in range(4):
            site = rng.choice(applicable_moves(current, include_births=False))
            path.append(site)
            current = apply_move(current, site)
        for site in invert_path(diagram, path):
            current = apply_move(current, site)
        assert exact_key(current) == exact_key(diagram)
