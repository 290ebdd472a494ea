"""Φ 泛函、系数 ℓ_p 范数与下界比值。

所有幂和都在对数域里求：每项先取 log，按降序减去最大值后再指数求和。
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Any, Iterable, Optional

import mpmath

from config.settings import NUMERIC_CONFIG
from models.report import BoundFamily, BoundReport
from norms.linf import supnorm_linf
from phi.logreal import LogReal
from polycore.multiindex import index_counts, multinomial
from polycore.poly import HomogPoly, polar_coefficient
from polycore.scalar import HighPrecReal, Scalar
from utils.errors import InvalidInputError, UnsupportedScaleError


def bh_exponent(m: int) -> Fraction:
    """m 次的 BH 指数 p = 2m/(m+1)（最简分数）。"""
    if m < 1:
        raise InvalidInputError(f"次数必须 >= 1: {m}")
    return Fraction(2 * m, m + 1)


def _log_abs(c: Scalar) -> mpmath.mpf:
    if isinstance(c, HighPrecReal):
        return mpmath.log(abs(c.value))
    c = Fraction(c)
    return mpmath.log(abs(c.numerator)) - mpmath.log(c.denominator)


def grouped_power_sum(entries: Iterable[tuple[int, Scalar]], p: Fraction, bits: int) -> LogReal:
    """[Σ w·|c/w|^p]^{1/p}，entries 为 (w, c)，w 是正整数权重。

    w 全为 1 时就是 ℓ_p 范数；w 取多项式系数时就是分组形式的 Φ。零系数跳过。
    """
    with mpmath.workprec(bits):
        p_mp = mpmath.mpf(p.numerator) / p.denominator
        logs = []
        for w, c in entries:
            if not c:
                continue
            log_w = mpmath.log(w)
            logs.append(log_w + p_mp * (_log_abs(c) - log_w))
        if not logs:
            return LogReal.zero(bits)
        return LogReal(1, LogReal.log_sum(logs, bits) / p_mp, bits)


def _require_degree(P: HomogPoly) -> None:
    if P.degree < 2:
        raise InvalidInputError(f"Φ 只对次数 >= 2 的多项式定义，收到 m={P.degree}")


def phi_value(P: HomogPoly, bits: Optional[int] = None) -> LogReal:
    """分组形式：[Σ_α C(m,α)·|a_α / C(m,α)|^p]^{1/p}，p = 2m/(m+1)。"""
    _require_degree(P)
    entries = ((multinomial(P.degree, alpha), c) for alpha, c in P.terms)
    return grouped_power_sum(entries, bh_exponent(P.degree), bits or P.bits)


def phi_bruteforce(P: HomogPoly, bits: Optional[int] = None) -> LogReal:
    """逐个枚举 (i₁,…,i_m) ∈ [n]^m 求 Σ |L(e_{i₁},…,e_{i_m})|^p，只用来交叉检查。"""
    _require_degree(P)
    n, m = P.nvars, P.degree
    limit = NUMERIC_CONFIG['bruteforce_max_terms']
    if n ** m > limit:
        raise UnsupportedScaleError(f"n^m = {n}^{m} 超过暴力枚举上限 {limit}")

    bits = bits or P.bits
    p = bh_exponent(m)
    with mpmath.workprec(bits):
        p_mp = mpmath.mpf(p.numerator) / p.denominator
        powered: dict[tuple, mpmath.mpf] = {}
        values = []
        for indices in itertools.product(range(n), repeat=m):
            alpha = index_counts(indices, n)
            if alpha not in powered:
                coeff = polar_coefficient(P, alpha)
                powered[alpha] = mpmath.exp(p_mp * _log_abs(coeff)) if coeff else mpmath.mpf(0)
            values.append(powered[alpha])
        values.sort(reverse=True)
        total = mpmath.fsum(values)
    return LogReal.from_value(total, bits).pow(1 / p)


def coeff_lp_norm(P: HomogPoly, bits: Optional[int] = None) -> LogReal:
    """(Σ_α |a_α|^p)^{1/p}，p = 2m/(m+1)。"""
    _require_degree(P)
    return grouped_power_sum(((1, c) for _, c in P.terms), bh_exponent(P.degree), bits or P.bits)


def _ratio_report(
    P: HomogPoly,
    numerator: LogReal,
    family: BoundFamily,
    tol: Optional[float],
    descriptor: Any,
) -> BoundReport:
    if not P:
        raise InvalidInputError("零多项式没有下界比值")
    norm = supnorm_linf(P, tol)
    value = numerator / LogReal.from_value(norm.value, P.bits)
    if value < 1:
        # 任意多项式的比值可以小于 1，只是这时它不构成有意义的下界
        logging.warning(f"[{family.value}] m={P.degree} 比值 {value} < 1，不是有效下界")
        return BoundReport(
            family=family,
            m=P.degree,
            value=value,
            c_of_m=value.root(P.degree).to_mpf(),
            witness=_witness(P, descriptor),
            search={'norm': norm.to_dict()},
            precision_bits=P.bits,
            descriptor=descriptor,
        )
    with mpmath.workprec(P.bits):
        abs_err = value.to_mpf() * norm.tolerance / norm.value
    return BoundReport.build(
        family=family,
        m=P.degree,
        value=value,
        witness=_witness(P, descriptor),
        search={'norm': norm.to_dict()},
        precision_bits=P.bits,
        abs_err=abs_err,
        descriptor=descriptor,
    )


def _witness(P: HomogPoly, descriptor: Any) -> dict:
    label = descriptor.label() if descriptor is not None else f"HomogPoly(n={P.nvars}, m={P.degree}, {len(P)} terms)"
    return {'polynomial': label}


def L_ratio(P: HomogPoly, tol: Optional[float] = None, descriptor: Any = None) -> BoundReport:
    """L_{R,m} >= Φ(P)/‖P‖。"""
    return _ratio_report(P, phi_value(P), BoundFamily.L_R, tol, descriptor)


def D_ratio(P: HomogPoly, tol: Optional[float] = None, descriptor: Any = None) -> BoundReport:
    """D_{R,m} >= ‖a‖_p/‖P‖。"""
    return _ratio_report(P, coeff_lp_norm(P), BoundFamily.D_R, tol, descriptor)

