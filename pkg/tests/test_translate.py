from math import gcd

import pytest

from src.classify import tb_max
from src.translate import (
    HypothesisError, S3CableType, cable_type_to_S3, cor_noimage_gap, m_to_S3, reverse_orientation,
    s3_cable_tb_max, s3_positive_torus_tb_max, tb_from_S3, tb_to_S3, to_S3,
)


@pytest.mark.parametrize("p, q, expected", [(2, 3, (-3, 1)), (0, 1, (-1, 1)), (-1, 4, (-4, 5)), (1, 0, (0, -1))])
def test_cable_type_to_S3(p, q, expected):
    assert cable_type_to_S3(p, q) == expected
    assert gcd(*expected) == 1


def test_cable_type_to_S3_rejects_unnormalized():
    with pytest.raises(ValueError):
        cable_type_to_S3(1, -2)


def test_tb_and_m_translation():
    assert tb_to_S3(4, 3) == -5
    assert tb_to_S3(7, 0) == 7
    assert tb_to_S3(0, 1) == -1
    assert tb_from_S3(-5, 3) == 4
    assert m_to_S3(0) == 1 and m_to_S3(2) == 3
    for m in range(8):
        assert tb_to_S3(-m, 1) == -m_to_S3(m)
    with pytest.raises(ValueError):
        m_to_S3(-1)


def test_to_S3_bundle():
    assert to_S3(2, 3, 1) == S3CableType(-3, 1, 2)


def test_reverse_orientation_is_an_involution():
    assert reverse_orientation(0, -1, 0, 0) == (0, 1, 0, 0)
    assert reverse_orientation(3, -2, 3, 1) == (-3, 2, 3, -1)
    for args in [(2, 3, 4, 0), (-3, 2, -7, 5)]:
        assert reverse_orientation(*reverse_orientation(*args)) == args
        assert reverse_orientation(*args)[2] == args[2]


def test_helix_core_and_reversed_copy_are_push_offs():
    for q in range(1, 8):
        m = q
        tb0 = -m
        tb1 = tb_max(-1, q, m)
        assert tb1 == -q == tb0
        p_rev, q_rev, tb_rev, rot_rev = reverse_orientation(-1, q, tb1, 0)
        assert (p_rev, q_rev, rot_rev) == (1, -q, 0)
        assert tb_rev == tb0
        # the meridian coefficient of the S3 cable type is its linking with L0
        assert cable_type_to_S3(-1, q)[0] == tb0


def test_noimage_gap():
    for q in range(3, 11):
        for p in range(1, q - 1):
            assert cor_noimage_gap(p, q) == p
    assert cor_noimage_gap(2, 5) == 2
    assert cor_noimage_gap(2, 4) == 2
    assert cor_noimage_gap(3, 6) == 3


@pytest.mark.parametrize("p, q", [(3, 4), (0, 5), (5, 3)])
def test_noimage_gap_hypothesis(p, q):
    with pytest.raises(HypothesisError):
        cor_noimage_gap(p, q)


def test_positive_torus_ceiling():
    assert s3_positive_torus_tb_max(-2, -1) == -1
    assert tb_from_S3(s3_positive_torus_tb_max(-2, -1), 2) == 3
    assert s3_positive_torus_tb_max(-1, 0) == -1
    assert s3_positive_torus_tb_max(-3, -2) == 1
    with pytest.raises(HypothesisError):
        s3_positive_torus_tb_max(-3, 1)


def test_positive_cables_translate_exactly():
    for p in range(1, 9):
        for q in range(1, p + 1):
            if gcd(p, q) == 1:
                assert tb_max(p, q, 0) == s3_positive_torus_tb_max(-q, q - p) + q * q


def test_s3_cable_ceiling_reproduces_negative_cables():
    for q in range(1, 7):
        for p in range(-8, 0):
            if gcd(p, q) != 1:
                continue
            for m in range(0, 6):
                s3 = to_S3(p, q, m)
                assert tb_from_S3(s3_cable_tb_max(s3.p, s3.q, s3.m), q) == tb_max(p, q, m)


def test_s3_cable_ceiling_gives_positive_bound_through_shifted_cable():
    for q in range(2, 8):
        for p in range(1, q):
            if gcd(p, q) == 1:
                assert tb_from_S3(s3_cable_tb_max(p - q, q, 1), q) == tb_max(p, q, 0)


def test_s3_cable_ceiling_hypotheses():
    with pytest.raises(HypothesisError):
        s3_cable_tb_max(1, 2, 1)
    with pytest.raises(HypothesisError):
        s3_cable_tb_max(-2, -1, 1)
    with pytest.raises(HypothesisError):
        s3_cable_tb_max(-2, 1, 0)
