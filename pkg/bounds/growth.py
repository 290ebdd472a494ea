"""Q_{4k} 族的增长趋势：L 侧相邻比值 L_{4(k+1)}/L_{4k}，D 侧 c_of_m = D_{4k}^{1/4k}。"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

import mpmath
import pandas as pd

from bounds.generators import lower_D_4k, lower_L_4k
from config.tables import GROWTH_C_THRESHOLD
from models.report import SearchConfig
from phi.logreal import LogReal
from utils.errors import InvalidInputError

# k_max 不超过这个值时逐个 k 计算，否则抽样
_FULL_RANGE_MAX_K = 200


@dataclass
class GrowthRow:
    k: int
    m: int
    l_bound: LogReal
    l_ratio: object
    d_bound: LogReal
    c_of_m: object


@dataclass
class GrowthTable:
    rows: list[GrowthRow] = field(default_factory=list)
    threshold: str = GROWTH_C_THRESHOLD
    meets_threshold: bool = False

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([
            {
                'k': row.k,
                'm': row.m,
                'l_bound': str(row.l_bound),
                'l_ratio': mpmath.nstr(row.l_ratio, 12),
                'd_bound': str(row.d_bound),
                'c_of_m': mpmath.nstr(row.c_of_m, 12),
            }
            for row in self.rows
        ])


def default_ks(k_max: int) -> list[int]:
    """k_max 较小时取 1…k_max；否则取 1…50，之后每 50 取一个，并包含 k_max。"""
    if k_max <= _FULL_RANGE_MAX_K:
        return list(range(1, k_max + 1))
    ks = list(range(1, 51)) + list(range(100, k_max, 50))
    return sorted(set(ks) | {k_max})


def growth_analysis(
    k_max: int,
    cfg: Optional[SearchConfig] = None,
    ks: Optional[Iterable[int]] = None,
) -> GrowthTable:
    if isinstance(k_max, bool) or not isinstance(k_max, int) or k_max < 2:
        raise InvalidInputError(f"k_max 必须是 >= 2 的整数: {k_max!r}")
    cfg = cfg or SearchConfig()
    ks = sorted(set(ks)) if ks is not None else default_ks(k_max)
    if any(k < 1 or k > k_max for k in ks):
        raise InvalidInputError(f"k 必须在 [1, {k_max}] 内")

    table = GrowthTable()
    for k in ks:
        l_here = lower_L_4k(k, cfg).value
        l_next = lower_L_4k(k + 1, cfg).value
        d_report = lower_D_4k(k, cfg)
        ratio = (l_next / l_here).to_mpf()
        table.rows.append(GrowthRow(k, 4 * k, l_here, ratio, d_report.value, d_report.c_of_m))

    last = table.rows[-1]
    table.meets_threshold = bool(last.c_of_m >= mpmath.mpf(GROWTH_C_THRESHOLD))
    logging.info(
        f"[growth_analysis] k={last.k}: L 比值 {mpmath.nstr(last.l_ratio, 8)}，"
        f"c_of_m {mpmath.nstr(last.c_of_m, 10)}，"
        f"{'达到' if table.meets_threshold else '未达到'} {GROWTH_C_THRESHOLD}"
    )
    return table
