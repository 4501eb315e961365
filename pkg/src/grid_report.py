# grid_report.py
import logging
from math import gcd
from typing import Dict, Iterator, Mapping, Optional, Tuple

import pandas as pd

from src.classify import tb_max
from src.slope_calc import CurveClass, tb_max_oracle
from src.translate import to_S3, tb_to_S3

log = logging.getLogger("GridReport")

DEFAULT_GRID = {"p_min": -8, "p_max": 8, "q_max": 8, "m_max": 6}

COLUMNS = ["p", "q", "m", "case", "closed_form", "oracle", "match", "p_s3", "q_s3", "m_s3", "tb_s3"]


def cable_case(p: int, q: int, m: int) -> str:
    if (p, q) == (0, 1):
        return "helix"
    if (p, q) == (1, 0):
        return "meridian"
    if p >= 1:
        return "positive"
    return "negative-steep" if m * q + p < 0 else "negative-shallow"


def grid_types(grid: Optional[Mapping] = None) -> Iterator[Tuple[int, int, int]]:
    bounds = {**DEFAULT_GRID, **(grid or {})}
    for q in range(0, bounds["q_max"] + 1):
        for p in range(bounds["p_min"], bounds["p_max"] + 1):
            if (p, q) == (0, 0) or gcd(p, q) != 1 or not CurveClass(p, q).normalized:
                continue
            for m in range(0, bounds["m_max"] + 1):
                yield p, q, m


def build_grid(config: Optional[Mapping] = None) -> pd.DataFrame:
    config = config or {}
    rows = []
    for p, q, m in grid_types(config.get("grid")):
        closed = tb_max(p, q, m)
        oracle = tb_max_oracle(CurveClass(p, q), m, config)
        s3 = to_S3(p, q, m)
        rows.append((p, q, m, cable_case(p, q, m), closed, oracle, closed == oracle,
                     s3.p, s3.q, s3.m, tb_to_S3(closed, q)))
    frame = pd.DataFrame(rows, columns=COLUMNS)
    log.info(f"Grid of {len(frame)} cable types built, {int((~frame['match']).sum())} mismatches")
    return frame


def summarize(frame: pd.DataFrame) -> Dict[str, int]:
    summary = {"rows": len(frame), "mismatches": int((~frame["match"]).sum())}
    for case, count in frame.groupby("case").size().items():
        summary[f"case.{case}"] = int(count)
    return summary
