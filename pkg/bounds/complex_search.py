"""D_{C,2} 的下界：在复二次型上最大化 ‖a‖_{4/3} / ‖P‖。

f₂(a,b,c) = (|a|^{4/3}+|b|^{4/3}+|c|^{4/3})^{3/4} / ((|a|+|b|)·√(1 + c²/(4|ab|)))，
约束 ab < 0、|c(a+b)| ≤ 4|ab|（复范数公式的第二支）。f₂ 对正数缩放不变，
因此固定 a = 1，在 b ∈ [−1, −b_floor]、c ∈ [0, c_max] 上搜索。
"""

from __future__ import annotations

import logging
from typing import Any, Optional

import mpmath
import numpy as np

from config.settings import NUMERIC_CONFIG
from config.tables import COMPLEX_CONSTANTS, HEADLINE_VALUES
from models.report import BoundFamily, BoundReport, SearchConfig
from norms.complex_quadratic import complex_quadratic_norm_value
from phi.logreal import LogReal
from polycore.families import Quadratic
from polycore.scalar import to_mpf
from utils.errors import InvalidInputError
from utils.search import golden_section_max

_MAX_SWEEPS = 100


def f2(a: Any, b: Any, c: Any):
    """按当前 mpmath 精度计算 f₂；不检查约束。"""
    a, b, c = to_mpf(a), to_mpf(b), to_mpf(c)
    if a * b == 0:
        raise InvalidInputError(f"f₂ 要求 ab ≠ 0: a={a}, b={b}")
    p = mpmath.mpf(4) / 3
    numerator = (abs(a) ** p + abs(b) ** p + abs(c) ** p) ** (1 / p)
    denominator = (abs(a) + abs(b)) * mpmath.sqrt(1 + c ** 2 / (4 * abs(a * b)))
    return numerator / denominator


def f2_feasible(a: Any, b: Any, c: Any) -> bool:
    a, b, c = to_mpf(a), to_mpf(b), to_mpf(c)
    return a * b < 0 and abs(c * (a + b)) <= 4 * abs(a * b)


def dc2_ratio(a: Any, b: Any, c: Any):
    """‖(a,b,c)‖_{4/3} / ‖a·z₁² + b·z₂² + c·z₁z₂‖，可行域内与 f₂ 相同。"""
    a, b, c = to_mpf(a), to_mpf(b), to_mpf(c)
    p = mpmath.mpf(4) / 3
    numerator = (abs(a) ** p + abs(b) ** p + abs(c) ** p) ** (1 / p)
    return numerator / complex_quadratic_norm_value(a, b, c)


def _f2_grid(B: np.ndarray, C: np.ndarray) -> np.ndarray:
    absb = np.abs(B)
    numerator = (1 + absb ** (4 / 3) + C ** (4 / 3)) ** 0.75
    denominator = (1 + absb) * np.sqrt(1 + C ** 2 / (4 * absb))
    feasible = C * np.abs(1 + B) <= 4 * absb
    return np.where(feasible, numerator / denominator, -np.inf)


def _c_upper(b, c_max):
    # a = 1、b < 0 时约束化为 c·(1+b) ≤ −4b
    if b == -1:
        return c_max
    return min(c_max, -4 * b / (1 + b))


def _b_upper(c, b_floor):
    return min(-b_floor, -c / (4 + c))


def lower_D_C2(cfg: SearchConfig) -> BoundReport:
    bits = cfg.precision_bits
    n = cfg.dc2_grid
    b_floor = NUMERIC_CONFIG['dc2_b_floor']
    c_max = NUMERIC_CONFIG['dc2_c_max']
    cap = COMPLEX_CONSTANTS['scan_cap']

    bs = np.linspace(-1.0, -b_floor, n)
    cs = np.linspace(0.0, c_max, n)
    B, C = np.meshgrid(bs, cs, indexing='ij')
    values = _f2_grid(B, C)
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    grid_max = float(values[i, j])
    certificate = {
        'grid': f"{n}x{n}",
        'region': f"b ∈ [-1, -{b_floor}], c ∈ [0, {c_max}]",
        'feasible_points': int(np.isfinite(values).sum()),
        'grid_max': f"{grid_max:.10f}",
        'cap': cap,
        'below_cap': grid_max < cap,
    }
    if grid_max >= cap:
        logging.warning(f"[lower_D_C2] 网格最大值 {grid_max:.10f} 没有低于 {cap}")

    with mpmath.workprec(bits):
        db = mpmath.mpf(bs[1] - bs[0])
        dc = mpmath.mpf(cs[1] - cs[0])
        b, c = mpmath.mpf(bs[i]), mpmath.mpf(cs[j])
        best = f2(1, b, c)
        sweeps = 0
        for sweeps in range(1, _MAX_SWEEPS + 1):
            hi_c = _c_upper(b, c_max)
            c = golden_section_max(lambda x: f2(1, b, x), max(0, c - 2 * dc), min(hi_c, c + 2 * dc), cfg.tol_t).argmax
            hi_b = _b_upper(c, b_floor)
            b = golden_section_max(lambda x: f2(1, x, c), max(-1, b - 2 * db), min(hi_b, b + 2 * db), cfg.tol_t).argmax
            current = f2(1, b, c)
            improved = current - best
            best = max(best, current)
            if improved <= cfg.tol_t:
                break

        wc_num, wc_den = COMPLEX_CONSTANTS['witness_c']
        paper_point = f2(1, -1, mpmath.mpf(wc_num) / wc_den)
        value = LogReal.from_value(best, bits)
        b_str, c_str = mpmath.nstr(b, 15), mpmath.nstr(c, 15)

    logging.info(
        f"[lower_D_C2] max f₂ ≈ {mpmath.nstr(best, 12)} at (1, {b_str}, {c_str})，"
        f"网格最大 {grid_max:.8f}，{sweeps} 轮坐标下降"
    )
    return BoundReport.build(
        family=BoundFamily.D_C,
        m=2,
        value=value,
        witness={'polynomial': Quadratic(1, b_str, c_str).label(), 'a': '1', 'b': b_str, 'c': c_str},
        search={**cfg.to_dict(), 'working_bits': bits, 'sweeps': sweeps},
        precision_bits=bits,
        abs_err=mpmath.mpf(cfg.tol_t),
        descriptor=Quadratic(1, b_str, c_str),
        extras={
            'certificate': certificate,
            'paper_witness': {
                'point': f"(1, -1, {wc_num}/{wc_den})",
                'f2': mpmath.nstr(paper_point, 12),
            },
            'statement': f"{HEADLINE_VALUES['DC2']} <= D_C2 <= {COMPLEX_CONSTANTS['upper_bound']}",
        },
    )


def paper_witness_value(bits: Optional[int] = None):
    """f₂(1, −1, 352203/125000)。"""
    wc_num, wc_den = COMPLEX_CONSTANTS['witness_c']
    with mpmath.workprec(bits or NUMERIC_CONFIG['precision_bits']):
        return f2(1, -1, mpmath.mpf(wc_num) / wc_den)
