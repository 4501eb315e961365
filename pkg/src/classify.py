# classify.py
import logging
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import permutations
from typing import FrozenSet, Optional, Set, Tuple

from src.slope_calc import CurveClass, tb_after_longitude_shift
from src.translate import reverse_orientation

log = logging.getLogger("Classify")

FIRST_BELOW = "first-below"
FIRST_ABOVE = "first-above"
HEIGHT_ORDERS = (FIRST_BELOW, FIRST_ABOVE)


class NotRealizable(ValueError):
    pass


class UnknownRotation(ValueError):
    """Raised where the rotation numbers at maximal tb are not determined."""


class Verdict(str, Enum):
    ISOTOPIC = "Isotopic"
    NOT_ISOTOPIC = "NotIsotopic"
    EXCEPTIONAL_PAIR = "ExceptionalPair"
    UNKNOWN_CASE4_ROT = "UnknownCase4Rot"


class Realizability(str, Enum):
    REALIZABLE = "Realizable"
    NOT_REALIZABLE = "NotRealizable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RealizabilityCheck:
    status: Realizability
    reason: str = ""

    def __bool__(self):
        return self.status is Realizability.REALIZABLE


@dataclass(frozen=True)
class CableDescriptor:
    p: int
    q: int
    m: int
    rot0: int
    tb1: int
    rot1: int
    height_order: Optional[str] = None

    def __post_init__(self):
        CurveClass(self.p, self.q)
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")
        if self.height_order is not None and self.height_order not in HEIGHT_ORDERS:
            raise ValueError(f"height_order must be one of {HEIGHT_ORDERS}, got {self.height_order!r}")

    @property
    def tb0(self) -> int:
        return -self.m

    def normalized(self) -> "CableDescriptor":
        """Reverse L1 so that q >= 0, and p = 1 when q = 0."""
        if CurveClass(self.p, self.q).normalized:
            return self
        p, q, tb1, rot1 = reverse_orientation(self.p, self.q, self.tb1, self.rot1)
        return replace(self, p=p, q=q, tb1=tb1, rot1=rot1)


@dataclass(frozen=True)
class ClassResult:
    verdict: Verdict
    normal_form: Optional[Tuple[int, int, int, int]] = None
    height_order: Optional[str] = None
    ambiguity: Tuple[str, ...] = ()
    reason: str = ""

    @property
    def class_label(self):
        return (self.normal_form, self.height_order)


def _normalized_class(p: int, q: int) -> CurveClass:
    cls = CurveClass(p, q)
    if not cls.normalized:
        raise ValueError(f"cable type ({p},{q}) is not normalized: need q >= 0, and p = 1 when q = 0")
    return cls


def helix_normal_form(tb: int, rot: int) -> Tuple[int, int]:
    if tb + abs(rot) > 0:
        raise NotRealizable(f"tb + |rot| = {tb + abs(rot)} > 0")
    if (tb - rot) % 2:
        raise NotRealizable(f"tb={tb} and rot={rot} have different parity")
    return (-tb + rot) // 2, (-tb - rot) // 2


def classify_helix(inv0: Tuple[int, int], inv1: Tuple[int, int],
                   height_order: Optional[str] = None) -> ClassResult:
    """Class of the helix link L0 + L1 (both components topologically Lambda)."""
    k0, l0 = helix_normal_form(*inv0)
    k1, l1 = helix_normal_form(*inv1)
    normal_form = (k0, l0, k1, l1)
    if inv0[0] == 0 and inv1[0] == 0:
        if height_order is None:
            return ClassResult(Verdict.EXCEPTIONAL_PAIR, normal_form, ambiguity=HEIGHT_ORDERS,
                               reason="two classes with tb = 0, told apart by which copy lies below")
        if height_order not in HEIGHT_ORDERS:
            raise ValueError(f"height_order must be one of {HEIGHT_ORDERS}, got {height_order!r}")
        return ClassResult(Verdict.ISOTOPIC, normal_form, height_order)
    # Either vertical order gives the same class once one copy is stabilized.
    return ClassResult(Verdict.ISOTOPIC, normal_form)


def compare_classes(first: ClassResult, second: ClassResult) -> Verdict:
    if Verdict.EXCEPTIONAL_PAIR in (first.verdict, second.verdict):
        if first.normal_form != second.normal_form:
            return Verdict.NOT_ISOTOPIC
        return Verdict.EXCEPTIONAL_PAIR
    return Verdict.ISOTOPIC if first.class_label == second.class_label else Verdict.NOT_ISOTOPIC


def tb_max(p: int, q: int, m: int) -> int:
    _normalized_class(p, q)
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if (p, q) == (0, 1):
        return 0
    if (p, q) == (1, 0):
        return -1
    if p >= 1:
        return p * (q - 1)
    if m * q + p < 0:
        return p * q + m * q + p
    return p * q


def rot_at_tb_max(p: int, q: int, m: int) -> Optional[int]:
    """Rotation number of the tb-maximizing L1, or None where several values occur."""
    _normalized_class(p, q)
    if p < 0:
        return None
    return 0


def check_realizable(d: CableDescriptor) -> RealizabilityCheck:
    d = d.normalized()
    if d.m < abs(d.rot0) or (d.m - d.rot0) % 2:
        return RealizabilityCheck(Realizability.NOT_REALIZABLE,
                                  f"L0 with tb={d.tb0} cannot have rot={d.rot0}")
    ceiling = tb_max(d.p, d.q, d.m)
    if d.tb1 > ceiling:
        return RealizabilityCheck(Realizability.NOT_REALIZABLE,
                                  f"tb1={d.tb1} exceeds the maximum {ceiling}")
    base = rot_at_tb_max(d.p, d.q, d.m)
    if base is None:
        return RealizabilityCheck(Realizability.UNKNOWN,
                                  f"rot1 range below tb1={ceiling} is not determined for p < 0")
    drop = ceiling - d.tb1
    if abs(d.rot1 - base) > drop or (drop - (d.rot1 - base)) % 2:
        return RealizabilityCheck(Realizability.NOT_REALIZABLE,
                                  f"rot1={d.rot1} is outside the range reachable from ({ceiling},{base})")
    return RealizabilityCheck(Realizability.REALIZABLE)


def cable_normal_form(d: CableDescriptor) -> Optional[Tuple[int, int, int, int]]:
    d = d.normalized()
    base = rot_at_tb_max(d.p, d.q, d.m)
    if base is None:
        return None
    drop = tb_max(d.p, d.q, d.m) - d.tb1
    return ((d.m + d.rot0) // 2, (d.m - d.rot0) // 2,
            (drop + d.rot1 - base) // 2, (drop - d.rot1 + base) // 2)


def _invariants(d: CableDescriptor):
    return d.m, d.rot0, d.tb1, d.rot1


def classify_cable(d1: CableDescriptor, d2: CableDescriptor) -> ClassResult:
    d1, d2 = d1.normalized(), d2.normalized()
    if (d1.p, d1.q) != (d2.p, d2.q):
        return ClassResult(Verdict.NOT_ISOTOPIC,
                           reason=f"link types ({d1.p},{d1.q}) and ({d2.p},{d2.q}) differ")
    checks = (check_realizable(d1), check_realizable(d2))
    for d, check in zip((d1, d2), checks):
        if check.status is Realizability.NOT_REALIZABLE:
            raise NotRealizable(f"{d}: {check.reason}")
    if _invariants(d1) != _invariants(d2):
        return ClassResult(Verdict.NOT_ISOTOPIC, reason="classical invariants differ")

    normal_form = cable_normal_form(d1)
    if (d1.p, d1.q) == (0, 1) and d1.m == 0 and d1.tb1 == 0:
        if d1.height_order is None or d2.height_order is None:
            return ClassResult(Verdict.EXCEPTIONAL_PAIR, normal_form, ambiguity=HEIGHT_ORDERS,
                               reason="height order of the unstabilized copies not given")
        if d1.height_order != d2.height_order:
            return ClassResult(Verdict.NOT_ISOTOPIC, normal_form,
                               reason="unstabilized copies stacked in opposite orders")
        return ClassResult(Verdict.ISOTOPIC, normal_form, d1.height_order)
    # for p < 0 the classical invariants still decide; only realizability stays open
    return ClassResult(Verdict.ISOTOPIC, normal_form)


def enumerate_mountain_range(p: int, q: int, m: int, tb_floor: int) -> Set[Tuple[int, int]]:
    ceiling = tb_max(p, q, m)
    base = rot_at_tb_max(p, q, m)
    if base is None:
        raise UnknownRotation(f"rot at tb={ceiling} is not determined for ({p},{q}); "
                              "use check_realizable for the tb ceiling")
    if tb_floor > ceiling:
        raise ValueError(f"tb_floor {tb_floor} lies above the maximum {ceiling}")
    return {
        (ceiling - k - l, base + k - l)
        for k in range(ceiling - tb_floor + 1)
        for l in range(ceiling - tb_floor + 1 - k)
    }


@dataclass(frozen=True)
class UnwoundLink:
    tb0: int
    tb1: int
    two_copy: bool


def unwind_unit_cable(p: int, m: int) -> UnwoundLink:
    """Re-identify a tb-maximal (p,1)-cable link with p < 0 <= m + p as a helix link."""
    if p >= 0 or m + p < 0:
        raise ValueError(f"unwinding needs p < 0 and m + p >= 0, got p={p}, m={m}")
    ceiling = tb_max(p, 1, m)
    tb0 = tb_after_longitude_shift(-m, 1, -p)
    tb1 = tb_after_longitude_shift(ceiling, 1, -p)
    return UnwoundLink(tb0, tb1, m + p == 0)


@dataclass(frozen=True)
class PermutationGroup:
    name: str
    degree: int
    elements: FrozenSet[Tuple[int, ...]] = field(default_factory=frozenset)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, perm):
        return tuple(perm) in self.elements


def _identity(n: int) -> PermutationGroup:
    return PermutationGroup("trivial", n, frozenset({tuple(range(n))}))


def _symmetric(n: int) -> PermutationGroup:
    return PermutationGroup(f"S{n}", n, frozenset(permutations(range(n))))


def _cyclic(n: int) -> PermutationGroup:
    return PermutationGroup(f"C{n}", n,
                            frozenset(tuple((i + k) % n for i in range(n)) for k in range(n)))


_FIXED_SETTINGS = {
    "J1-helix-2copy-unstabilized": lambda: _identity(2),
    "J1-helix-2copy-stabilized": lambda: _symmetric(2),
    "J1-cable-unit-2copy": lambda: _symmetric(2),
}
_NCOPY = re.compile(r"S3-unknot-Ncopy\((\d+)\)$")


def allowed_permutations(setting: str, n: Optional[int] = None) -> PermutationGroup:
    """Permutations of the copies realizable by Legendrian isotopy.
    `S3-unknot-Ncopy` takes N either inline, as `S3-unknot-Ncopy(3)`, or via n."""
    if setting in _FIXED_SETTINGS:
        return _FIXED_SETTINGS[setting]()
    match = _NCOPY.match(setting)
    if match:
        n = int(match.group(1))
    elif setting != "S3-unknot-Ncopy" or n is None:
        raise ValueError(f"unknown permutation setting {setting!r}")
    if n < 1:
        raise ValueError(f"N-copy needs N >= 1, got {n}")
    log.debug(f"Cyclic group for {n} copies")
    return _cyclic(n)
