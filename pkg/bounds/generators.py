"""实常数 L_{R,m}、D_{R,m} 的下界生成器。

每个生成器返回一个 BoundReport：数值、见证多项式（族描述符）和搜索参数。
一维族先在 numpy 网格上找峰，再用 mpmath 黄金分割精修到 tol_t。
"""

from __future__ import annotations

import logging
from functools import lru_cache
from math import comb
from typing import Callable, Optional

import mpmath
import numpy as np

from models.report import BoundFamily, BoundReport, SearchConfig
from norms.linf import supnorm_linf
from norms.square import supnorm_square_quadratic
from phi.functional import bh_exponent, coeff_lp_norm, grouped_power_sum, phi_value
from phi.logreal import LogReal
from polycore.families import (
    P3,
    ChoiKim,
    PowerP2k,
    Q4k,
    QuarticE,
    SquareExtreme,
    lift_to_quartic,
    make_family,
    square_extreme_coefficients,
)
from polycore.scalar import HighPrecReal, scalar_sqrt
from powercoeffs.coeffs import a_coeffs, b_coeffs
from utils.errors import ConsistencyError, InvalidInputError
from utils.search import SearchResult, grid_then_golden

# 这些 k 以内顺带用范数 oracle 核对见证多项式的范数为 1
_VERIFY_NORM_MAX_K = {'L2k': 6, 'Q4k': 3}


def working_precision(cfg: SearchConfig, m: int, exact_coefficients: bool = False) -> int:
    """m 次族的工作精度。

    系数精确（B_j 为整数）时只剩对数域求和的舍入，加上 log2(m) 量级的保护位即可；
    系数本身是浮点（A_j 含 t₀）时按 max(bits, 2m) 抬高。
    """
    if not cfg.auto_raise_precision:
        return cfg.precision_bits
    if exact_coefficients:
        return cfg.precision_bits + m.bit_length() + 16
    return max(cfg.precision_bits, 2 * m)


def _rel_err_bound(value: LogReal, bits: int):
    with mpmath.workprec(bits):
        return value.to_mpf() * mpmath.ldexp(1, -(bits - 32))


def _check_k(k) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInputError(f"k 必须是正整数: {k!r}")


def _search_info(cfg: SearchConfig, bits: int, result: Optional[SearchResult] = None) -> dict:
    info = cfg.to_dict()
    info['working_bits'] = bits
    if result is not None:
        info['local_maxima'] = result.local_maxima
        info['grid_peaks'] = result.grid_peaks
        info['golden_iterations'] = result.iterations
    return info


# ── 一维目标函数 ──

def l2_objective(t):
    """[2t^{4/3} + 2(t(1−t))^{2/3}]^{3/4}：ChoiKim(t) 的 Φ 值。"""
    return (2 * mpmath.power(t, mpmath.mpf(4) / 3)
            + 2 * mpmath.power(t * (1 - t), mpmath.mpf(2) / 3)) ** (mpmath.mpf(3) / 4)


def _l2_objective_np(t: np.ndarray) -> np.ndarray:
    return (2 * t ** (4 / 3) + 2 * (t * (1 - t)) ** (2 / 3)) ** 0.75


def d2_objective(t):
    """[2t^{4/3} + (2√(t(1−t)))^{4/3}]^{3/4}：ChoiKim(t) 系数的 ℓ_{4/3} 范数。"""
    return (2 * mpmath.power(t, mpmath.mpf(4) / 3)
            + mpmath.power(2 * mpmath.sqrt(t * (1 - t)), mpmath.mpf(4) / 3)) ** (mpmath.mpf(3) / 4)


def _d2_objective_np(t: np.ndarray) -> np.ndarray:
    return (2 * t ** (4 / 3) + (2 * np.sqrt(t * (1 - t))) ** (4 / 3)) ** 0.75


def l4e_objective(a, b, c):
    """[|a|^{8/5} + |b|^{8/5} + 6|c/6|^{8/5}]^{5/8}：四次型 a·x⁴+b·y⁴+c·x²y² 的 Φ 值。"""
    p = mpmath.mpf(8) / 5
    a, b, c = (mpmath.mpf(v) for v in (a, b, c))
    return (abs(a) ** p + abs(b) ** p + 6 * abs(c / 6) ** p) ** (1 / p)


def _l4e_t_family_np(t: np.ndarray) -> np.ndarray:
    # (t, −1, 2√(1−t)) 与 (−1, t, 2√(1−t)) 取值相同
    return (t ** 1.6 + 1 + 6 * (np.sqrt(1 - t) / 3) ** 1.6) ** 0.625


def _l4e_t_family(t):
    return l4e_objective(t, -1, 2 * mpmath.sqrt(1 - t))


def paper_l4_closed_form(t):
    """L_{R,4} 对 (t₀x² − t₀y² + 2√(t₀(1−t₀))xy)² 的展开式：
    [2t^{16/5} + 6((2t−3t²)/3)^{8/5} + 8(t√(t(1−t)))^{8/5}]^{5/8}。
    与 lower_L_2k(2) 的通用公式应当逐位一致。
    """
    t = mpmath.mpf(t)
    p = mpmath.mpf(8) / 5
    total = (2 * t ** (mpmath.mpf(16) / 5)
             + 6 * abs((2 * t - 3 * t ** 2) / 3) ** p
             + 8 * (t * mpmath.sqrt(t * (1 - t))) ** p)
    return total ** (1 / p)


def _maximize(f_np: Callable, f_mp: Callable, lo: float, hi: float, cfg: SearchConfig, bits: int) -> SearchResult:
    with mpmath.workprec(bits):
        return grid_then_golden(f_np, f_mp, lo, hi, cfg.grid_points, cfg.tol_t)


@lru_cache(maxsize=None)
def optimal_t0(grid_points: int, tol_t: float, bits: int):
    """L2 目标函数在 [1/2, 1] 上的最大点 t₀。"""
    cfg = SearchConfig(grid_points=grid_points, tol_t=tol_t, precision_bits=bits)
    result = _maximize(_l2_objective_np, l2_objective, 0.5, 1.0, cfg, bits)
    logging.info(f"[optimal_t0] t₀ = {mpmath.nstr(result.argmax, 15)}（{result.iterations} 次黄金分割迭代）")
    return result.argmax


def _one_dim_bound(
    family: BoundFamily,
    f_np: Callable,
    f_mp: Callable,
    cfg: SearchConfig,
) -> BoundReport:
    bits = cfg.precision_bits
    result = _maximize(f_np, f_mp, 0.5, 1.0, cfg, bits)
    value = LogReal.from_value(result.maximum, bits)
    with mpmath.workprec(bits):
        abs_err = result.maximum * cfg.tol_t
    t_str = mpmath.nstr(result.argmax, 15)
    return BoundReport.build(
        family=family,
        m=2,
        value=value,
        witness={'polynomial': ChoiKim(t_str).label(), 't': t_str},
        search=_search_info(cfg, bits, result),
        precision_bits=bits,
        abs_err=abs_err,
        descriptor=ChoiKim(result.argmax),
    )


def lower_L2(cfg: SearchConfig) -> BoundReport:
    """L_{R,2} >= max_t Φ(ChoiKim(t)) ≈ 1.7700，t₀ ≈ 0.9147。"""
    return _one_dim_bound(BoundFamily.L_R, _l2_objective_np, l2_objective, cfg)


def lower_D2(cfg: SearchConfig) -> BoundReport:
    """D_{R,2} >= max_t ‖ChoiKim(t)‖_{4/3} ≈ 1.8374。"""
    return _one_dim_bound(BoundFamily.D_R, _d2_objective_np, d2_objective, cfg)


def lower_L4_E(cfg: SearchConfig) -> BoundReport:
    """在四次子空间 {a·x⁴+b·y⁴+c·x²y²} 上取单位球极点的 Φ 最大值。

    极点来自二次型在 [0,1]² 上的单位球：两个含参族（t ∈ [0,1]）加上
    ±(x²+y²−xy)、±(x²+y²−3xy)、±x²、±y²。
    """
    bits = cfg.precision_bits
    candidates: dict[str, tuple] = {}

    for variant in ('t_x2', 't_y2'):
        with mpmath.workprec(bits):
            result = grid_then_golden(_l4e_t_family_np, _l4e_t_family, 0.0, 1.0, cfg.grid_points, cfg.tol_t)
        spec = SquareExtreme(variant, result.argmax)
        candidates[f"{variant}(t={mpmath.nstr(result.argmax, 12)})"] = (result.maximum, spec)

    for variant in ('xy1', 'xy3', 'x2', 'y2'):
        spec = SquareExtreme(variant)
        quartic = lift_to_quartic(make_family(spec, bits))
        candidates[variant] = (phi_value(quartic, bits).to_mpf(), spec)

    # 每个候选都必须是正方形范数下的单位元
    square_norms = {}
    for name, (_, spec) in candidates.items():
        a, b, c = square_extreme_coefficients(spec.variant, spec.t, bits)
        norm = supnorm_square_quadratic(a, b, c, bits)
        if abs(norm.value - 1) > cfg.norm_tol:
            raise ConsistencyError(f"极点 {name} 的正方形范数为 {mpmath.nstr(norm.value, 12)}，不是 1")
        square_norms[name] = mpmath.nstr(norm.value, 12)

    best_name = max(candidates, key=lambda name: candidates[name][0])
    best_value, best_spec = candidates[best_name]
    a, b, c = square_extreme_coefficients(best_spec.variant, best_spec.t, bits)
    descriptor = QuarticE(a, b, c)
    value = LogReal.from_value(best_value, bits)
    logging.info(f"[lower_L4_E] 最优极点 {best_name}，Φ = {mpmath.nstr(best_value, 12)}")
    return BoundReport.build(
        family=BoundFamily.L_R,
        m=4,
        value=value,
        witness={'polynomial': descriptor.label(), 'extreme_point': best_name},
        search=_search_info(cfg, bits),
        precision_bits=bits,
        abs_err=_rel_err_bound(value, bits) if best_spec.t is None else value.to_mpf() * cfg.tol_t,
        descriptor=descriptor,
        extras={
            'candidates': {name: mpmath.nstr(v, 12) for name, (v, _) in candidates.items()},
            'square_norms': square_norms,
        },
    )


def lower_L_2k(k: int, cfg: SearchConfig) -> BoundReport:
    """L_{R,2k} >= [Σ_j C(2k,j)·|A_j/C(2k,j)|^p]^{1/p}，A_j 来自 (t₀x² − t₀y² + 2√(t₀(1−t₀))xy)^k。"""
    _check_k(k)
    m = 2 * k
    bits = working_precision(cfg, m)
    t0 = optimal_t0(cfg.grid_points, cfg.tol_t, cfg.precision_bits)
    t = HighPrecReal.of(t0, bits)
    c = 2 * scalar_sqrt(t * (1 - t), bits)
    coeffs = a_coeffs(t, -t, c, k, bits)
    value = grouped_power_sum(((comb(m, j), a) for j, a in enumerate(coeffs)), bh_exponent(m), bits)

    extras = {}
    if k <= _VERIFY_NORM_MAX_K['L2k']:
        norm = supnorm_linf(coeffs.to_poly(), cfg.norm_tol)
        extras['witness_norm'] = mpmath.nstr(norm.value, 15)
        if abs(norm.value - 1) > 10 * cfg.norm_tol:
            raise ConsistencyError(f"(ChoiKim(t₀))^{k} 的范数为 {mpmath.nstr(norm.value, 15)}，不是 1")

    t_str = mpmath.nstr(t0, 15)
    return BoundReport.build(
        family=BoundFamily.L_R,
        m=m,
        value=value,
        witness={'polynomial': f"(ChoiKim(t={t_str}))^{k}", 't': t_str},
        search=_search_info(cfg, bits),
        precision_bits=bits,
        abs_err=value.to_mpf() * cfg.tol_t,
        descriptor=PowerP2k(t0, -t0, c.value, k),
        extras=extras,
    )


@lru_cache(maxsize=64)
def _b_coeffs_cached(k: int):
    return b_coeffs(k)


def _q4k_bound(k: int, cfg: SearchConfig, family: BoundFamily) -> BoundReport:
    _check_k(k)
    m = 4 * k
    bits = working_precision(cfg, m, exact_coefficients=True)
    coeffs = _b_coeffs_cached(k)
    if family is BoundFamily.L_R:
        entries = ((comb(m, 2 * j), b) for j, b in enumerate(coeffs))
    else:
        entries = ((1, b) for b in coeffs)
    value = grouped_power_sum(entries, bh_exponent(m), bits)

    extras = {}
    if k <= _VERIFY_NORM_MAX_K['Q4k']:
        norm = supnorm_linf(coeffs.to_poly(), cfg.norm_tol)
        extras['witness_norm'] = mpmath.nstr(norm.value, 15)
        if abs(norm.value - 1) > 10 * cfg.norm_tol:
            raise ConsistencyError(f"Q_{{{m}}} 的范数为 {mpmath.nstr(norm.value, 15)}，不是 1")

    return BoundReport.build(
        family=family,
        m=m,
        value=value,
        witness={'polynomial': Q4k(k).label()},
        search=_search_info(cfg, bits),
        precision_bits=bits,
        abs_err=_rel_err_bound(value, bits),
        descriptor=Q4k(k),
        extras=extras,
    )


def lower_L_4k(k: int, cfg: SearchConfig) -> BoundReport:
    """L_{R,4k} >= [Σ_j C(4k,2j)·|B_j/C(4k,2j)|^p]^{1/p}，见证 Q_{4k}，范数为 1。"""
    return _q4k_bound(k, cfg, BoundFamily.L_R)


def lower_D_4k(k: int, cfg: SearchConfig) -> BoundReport:
    """D_{R,4k} >= (Σ_j |B_j|^p)^{1/p}。"""
    return _q4k_bound(k, cfg, BoundFamily.D_R)


def lower_D_3(cfg: Optional[SearchConfig] = None) -> BoundReport:
    """D_{R,3} >= ‖a(P₃)‖_{3/2} / ‖P₃‖ = 12^{2/3} / (5/2) ≈ 2.096。"""
    cfg = cfg or SearchConfig()
    bits = cfg.precision_bits
    P = make_family(P3(), bits)
    if len(P) != 12 or any(abs(c) != 1 for _, c in P.terms):
        raise ConsistencyError(f"P₃ 展开后应有 12 个 ±1 系数，实际 {len(P)} 项")
    norm = supnorm_linf(P, cfg.norm_tol)
    value = coeff_lp_norm(P, bits) / LogReal.from_value(norm.value, bits)
    with mpmath.workprec(bits):
        abs_err = value.to_mpf() * norm.tolerance / norm.value
    return BoundReport.build(
        family=BoundFamily.D_R,
        m=3,
        value=value,
        witness={'polynomial': P3().label(), 'norm': mpmath.nstr(norm.value, 15)},
        search={**_search_info(cfg, bits), 'norm': norm.to_dict()},
        precision_bits=bits,
        abs_err=abs_err,
        descriptor=P3(),
    )
