# slope_calc.py
import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Mapping, Optional, Sequence

import numpy as np

log = logging.getLogger("SlopeCalc")

DEFAULT_R_MARGIN = 2
DEFAULT_STABILITY_STEP = 2
MAX_R_BOUND = 256


@dataclass(frozen=True, order=True)
class SlopePair:
    """Dividing-curve slope -r/s on a standardly embedded torus; s = 0 is slope infinity."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 0:
            raise ValueError(f"slope pair needs r >= 1 and s >= 0, got ({self.r},{self.s})")
        if gcd(self.r, self.s) != 1:
            raise ValueError(f"slope pair ({self.r},{self.s}) is not coprime")

    @property
    def is_infinite(self) -> bool:
        return self.s == 0

    def __str__(self):
        return "inf" if self.is_infinite else f"-{self.r}/{self.s}"


@dataclass(frozen=True)
class CurveClass:
    """The class p*mu + q*lambda on a standard torus around L0."""

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0) or gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError(f"curve class ({self.p},{self.q}) is not primitive")

    @property
    def normalized(self) -> bool:
        return self.q > 0 or (self.q == 0 and self.p == 1)


def _require_normalized(cls: CurveClass):
    if not cls.normalized:
        raise ValueError(f"curve class ({cls.p},{cls.q}) must have q >= 0, and p = 1 when q = 0")


def kanda_twist(intersection_count: int) -> int:
    if intersection_count < 0 or intersection_count % 2:
        raise ValueError(f"intersection count must be even and nonnegative, got {intersection_count}")
    return -intersection_count // 2


def twist_on_torus(tb: int, cls: CurveClass) -> int:
    return tb - cls.p * cls.q


def admissible_slopes(m: int, r_bound: int) -> List[SlopePair]:
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if r_bound < 1:
        raise ValueError(f"r_bound must be at least 1, got {r_bound}")
    return [SlopePair(r, s) for r in range(1, r_bound + 1) for s in range(0, r * m + 1) if gcd(r, s) == 1]


def _slope_grid(m: int, r_bound: int):
    r, s = np.meshgrid(np.arange(1, r_bound + 1), np.arange(0, r_bound * m + 1), indexing="ij")
    mask = (s <= r * m) & (np.gcd(r, s) == 1)
    return r[mask], s[mask]


def _min_over_slopes(cls: CurveClass, m: int, r_bound: int):
    r, s = _slope_grid(m, r_bound)
    counts = 2 * np.abs(cls.p * r + cls.q * s)
    best = int(np.argmin(counts))
    return int(counts[best]), SlopePair(int(r[best]), int(s[best]))


def minimizing_slope(cls: CurveClass, m: int, config: Optional[Mapping] = None):
    """(min_intersection, a slope attaining it)."""
    _require_normalized(cls)
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    slopes_cfg = (config or {}).get("slopes", {})
    step = slopes_cfg.get("stability_step", DEFAULT_STABILITY_STEP)
    r_bound = max(cls.q, 1) + slopes_cfg.get("r_margin", DEFAULT_R_MARGIN)
    value, slope = _min_over_slopes(cls, m, r_bound)
    while r_bound < MAX_R_BOUND:
        wider, wider_slope = _min_over_slopes(cls, m, r_bound + step)
        if wider == value:
            break
        log.debug(f"Slope bound {r_bound} unstable for ({cls.p},{cls.q}), m={m}: {value} -> {wider}")
        value, slope, r_bound = wider, wider_slope, r_bound + step
    return value, slope


def min_intersection(cls: CurveClass, m: int, config: Optional[Mapping] = None) -> int:
    return minimizing_slope(cls, m, config)[0]


def tb_max_oracle(cls: CurveClass, m: int, config: Optional[Mapping] = None) -> int:
    return cls.p * cls.q + kanda_twist(min_intersection(cls, m, config))


def ruling_curve_tb(cls: CurveClass, m: int) -> int:
    """tb of a ruling curve of slope q/p on the boundary of a standard
    neighbourhood of L0 (two dividing curves of slope -1/m)."""
    _require_normalized(cls)
    if not (cls.p < 0 and m * cls.q + cls.p < 0):
        raise ValueError(f"ruling construction needs p < 0 and mq + p < 0, got ({cls.p},{cls.q}), m={m}")
    determinant = -cls.p - m * cls.q
    return cls.p * cls.q - abs(determinant)


def _as_matrix(matrix: Sequence[Sequence[int]]) -> np.ndarray:
    arr = np.asarray(matrix, dtype=np.int64)
    if arr.shape != (2, 2):
        raise ValueError(f"basis change must be a 2x2 integer matrix, got shape {arr.shape}")
    det = int(arr[0, 0] * arr[1, 1] - arr[0, 1] * arr[1, 0])
    if det not in (1, -1):
        raise ValueError(f"basis change must be unimodular, determinant is {det}")
    return arr


def change_basis(cls: CurveClass, matrix: Sequence[Sequence[int]]) -> CurveClass:
    arr = _as_matrix(matrix)
    p, q = (int(v) for v in arr @ np.array([cls.p, cls.q], dtype=np.int64))
    return CurveClass(p, q)


def inverse_basis(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    arr = _as_matrix(matrix)
    det = int(arr[0, 0] * arr[1, 1] - arr[0, 1] * arr[1, 0])
    a, b, c, d = (int(v) for v in arr.ravel())
    return [[d * det, -b * det], [-c * det, a * det]]


def longitude_shift_matrix(q: int) -> List[List[int]]:
    """Basis change taking the class -mu + q*lambda to the new longitude (0,1)."""
    return [[q, 1], [-1, 0]]


def tb_after_longitude_shift(tb: int, winding: int, shift: int) -> int:
    return tb + shift * winding * winding
