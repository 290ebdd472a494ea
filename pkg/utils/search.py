"""一维最大化：numpy 稠密网格定位候选峰，再用 mpmath 黄金分割精修。"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

import mpmath
import numpy as np


@dataclass
class SearchResult:
    argmax: Any
    maximum: Any
    iterations: int
    converged: bool
    # 精修后与最优值相差不超过 tol 的峰个数
    local_maxima: int = 1
    grid_peaks: int = 1


def golden_section_max(
    f: Callable[[Any], Any],
    lo: Any,
    hi: Any,
    tol: float,
    max_iterations: int = 400,
) -> SearchResult:
    """在 [lo, hi] 上对单峰函数 f 求最大值，按当前 mpmath 精度运算。

    收敛后再和两个端点比较，端点更大时返回端点。
    """
    ratio = (mpmath.sqrt(5) - 1) / 2
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
    f_lo, f_hi = f(lo), f(hi)
    x1 = hi - ratio * (hi - lo)
    x2 = lo + ratio * (hi - lo)
    f1, f2 = f(x1), f(x2)

    a, b = lo, hi
    iteration = 0
    while iteration < max_iterations and b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - ratio * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + ratio * (b - a)
            f2 = f(x2)
        iteration += 1

    x_best, f_best = (x1, f1) if f1 >= f2 else (x2, f2)
    if f_lo > f_best:
        x_best, f_best = lo, f_lo
    if f_hi > f_best:
        x_best, f_best = hi, f_hi
    return SearchResult(
        argmax=x_best,
        maximum=f_best,
        iterations=iteration,
        converged=iteration < max_iterations,
    )


def local_maxima_indices(values: np.ndarray) -> np.ndarray:
    """网格上的局部极大（含端点），按函数值降序。"""
    values = np.asarray(values, dtype=float)
    n = len(values)
    if n == 0:
        return np.array([], dtype=int)
    if n == 1:
        return np.array([0])
    left = np.concatenate(([-np.inf], values[:-1]))
    right = np.concatenate((values[1:], [-np.inf]))
    peaks = np.nonzero((values >= left) & (values >= right) & np.isfinite(values))[0]
    return peaks[np.argsort(-values[peaks], kind='stable')]


def grid_then_golden(
    f_np: Callable[[np.ndarray], np.ndarray],
    f_mp: Callable[[Any], Any],
    lo: float,
    hi: float,
    samples: int,
    tol: float,
    top: int = 8,
) -> SearchResult:
    """稠密网格 + 对最好的若干个网格峰分别黄金分割精修，取最大者。"""
    xs = np.linspace(lo, hi, samples)
    with np.errstate(invalid='ignore', divide='ignore'):
        values = np.asarray(f_np(xs), dtype=float)
    values = np.where(np.isfinite(values), values, -np.inf)
    peaks = local_maxima_indices(values)
    if len(peaks) == 0:
        peaks = np.array([int(np.argmax(values))])

    results = []
    for i in peaks[:top]:
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, samples - 1)]
        results.append(golden_section_max(f_mp, float(a), float(b), tol))
    best = max(results, key=lambda r: r.maximum)
    # 同一个峰可能被相邻两个网格点夹住，按 argmax 去重
    distinct = {mpmath.nstr(r.argmax, 8) for r in results if best.maximum - r.maximum <= tol}
    best.local_maxima = len(distinct)
    best.grid_peaks = len(peaks)
    return best
