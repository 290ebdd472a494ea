"""复二元二次型 a·z₁² + b·z₂² + c·z₁z₂ 在单位多圆盘上的 sup 范数。

由旋转不变性，只需看 |a + b·w² + c·w|，w = e^{iθ}。
"""

from __future__ import annotations

from typing import Any

import mpmath
import numpy as np

from config.settings import NUMERIC_CONFIG
from models.report import NormMethod, NormResult
from polycore.scalar import DEFAULT_BITS, to_mpf
from utils.errors import InvalidInputError
from utils.search import grid_then_golden


def complex_quadratic_norm_value(a: Any, b: Any, c: Any) -> mpmath.mpf:
    """闭式公式，按当前 mpmath 精度计算。

    ab ≥ 0 或 |c(a+b)| > 4|ab| 时为 |a+b| + |c|，
    否则为 (|a|+|b|)·√(1 + c²/(4|ab|))。两支在分界处连续。
    """
    a, b, c = to_mpf(a), to_mpf(b), to_mpf(c)
    if a * b >= 0 or abs(c * (a + b)) > 4 * abs(a * b):
        return abs(a + b) + abs(c)
    return (abs(a) + abs(b)) * mpmath.sqrt(1 + c ** 2 / (4 * abs(a * b)))


def _theta_search(a, b, c, samples: int, tol: float):
    a_f, b_f, c_f = float(a), float(b), float(c)

    def f_np(theta: np.ndarray) -> np.ndarray:
        w = np.exp(1j * theta)
        return np.abs(a_f + b_f * w * w + c_f * w)

    def f_mp(theta):
        w = mpmath.expj(theta)
        return abs(a + b * w * w + c * w)

    return grid_then_golden(f_np, f_mp, 0.0, 2 * np.pi, samples, tol)


def complex_quadratic_norm(a: Any, b: Any, c: Any, bits: int = DEFAULT_BITS) -> NormResult:
    """闭式值加一个见证点 (1, e^{iθ})。"""
    with mpmath.workprec(bits):
        a, b, c = to_mpf(a), to_mpf(b), to_mpf(c)
        value = complex_quadratic_norm_value(a, b, c)
        search = _theta_search(a, b, c, NUMERIC_CONFIG['grid_points'], NUMERIC_CONFIG['tol_t'])
        witness = (mpmath.mpc(1), mpmath.expj(search.argmax))
    return NormResult(value, witness, NUMERIC_CONFIG['norm_tol'], NormMethod.CLOSED_FORM)


def complex_quadratic_norm_sampled(a: Any, b: Any, c: Any, samples: int = 1 << 16) -> float:
    """在环面上均匀采样求最大模（float 精度），用来交叉检查闭式公式。"""
    a, b, c = float(a), float(b), float(c)
    if samples < 16:
        raise InvalidInputError(f"采样点数至少为 16: {samples}")
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    w = np.exp(1j * theta)
    return float(np.max(np.abs(a + b * w * w + c * w)))
