# translate.py
"""Invariant arithmetic across the contactomorphism J1(S1) = S3 minus K0.

On the S3 side the torus around K0 carries (mu, lambda) viewed as the boundary
of the complement of K0; references using the usual knot-side basis differ
from these numbers by a basis change.
"""
import logging
from dataclasses import dataclass
from math import gcd
from typing import Tuple

from src.slope_calc import CurveClass

log = logging.getLogger("Translate")


class HypothesisError(ValueError):
    pass


@dataclass(frozen=True)
class S3CableType:
    p: int
    q: int
    m: int

    def __str__(self):
        return f"({self.p},{self.q}) m'={self.m}"


def cable_type_to_S3(p: int, q: int) -> Tuple[int, int]:
    if not CurveClass(p, q).normalized:
        raise ValueError(f"cable type ({p},{q}) is not normalized")
    return -q, q - p


def tb_to_S3(tb: int, q: int) -> int:
    return tb - q * q


def tb_from_S3(tb: int, q: int) -> int:
    return tb + q * q


def m_to_S3(m: int) -> int:
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    return m + 1


def to_S3(p: int, q: int, m: int) -> S3CableType:
    p_s3, q_s3 = cable_type_to_S3(p, q)
    return S3CableType(p_s3, q_s3, m_to_S3(m))


def reverse_orientation(p: int, q: int, tb: int, rot: int) -> Tuple[int, int, int, int]:
    return -p, -q, tb, -rot


def cor_noimage_gap(p: int, q: int) -> int:
    """How far the S3 ceiling for the (-q, q-p)-cable exceeds the image of J1(S1)."""
    if not 0 < p:
        raise HypothesisError(f"gap needs 0 < p, got p={p}")
    if not p < q - 1:
        raise HypothesisError(f"gap needs p < q - 1, got p={p}, q={q}")
    s3_ceiling = p * q - q * q
    image_ceiling = tb_to_S3(p * (q - 1), q)
    return s3_ceiling - image_ceiling


def s3_positive_torus_tb_max(p_s3: int, q_s3: int) -> int:
    """Maximal tb of a positive (-p', -q')-torus knot, written in the S3 cable coordinates."""
    if (p_s3, q_s3) == (-1, 0):
        return -1
    if not (p_s3 < 0 and q_s3 < 0):
        raise HypothesisError(f"(-p',-q') = ({-p_s3},{-q_s3}) is not a positive torus knot type")
    if gcd(p_s3, q_s3) != 1:
        raise HypothesisError(f"({p_s3},{q_s3}) is not coprime")
    return p_s3 * q_s3 + p_s3 + q_s3


def s3_cable_tb_max(p_s3: int, q_s3: int, m_s3: int) -> int:
    """Maximal tb of L1' in a (p',q')-cable link around a tb = -m' unknot, p' < 0 < q'."""
    if p_s3 >= 0 or q_s3 < 1:
        raise HypothesisError(f"S3 cable ceiling needs p' < 0 < q', got ({p_s3},{q_s3})")
    if m_s3 < 1:
        raise HypothesisError(f"S3 cable ceiling needs m' >= 1, got {m_s3}")
    return p_s3 * q_s3 - max(m_s3 * p_s3 + q_s3, 0)
