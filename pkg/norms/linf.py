"""ℓ∞ 单位立方 [−1,1]^n 上的 sup 范数 oracle。

步骤：
1. 只以一次出现的变量（仿射变量）在 ±1 处取极值，逐个枚举符号组合；
2. 代入后按变量是否同时出现在某一项里拆成互不相交的块，
   整体最大值 = 常数项 + Σ 各块最大值（最小值同理）；
3. 单变量块：稠密网格 + 黄金分割；二元及以上的齐次块：只扫 x_i = 1 的面
   （偶次还要算原点 0，奇次用 P(−x) = −P(x)）；非齐次块：网格 + 逐级缩放。
最后在见证点上用 mpmath 重新求值，返回值恰为 |P(witness)|。
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath
import numpy as np

from config.settings import NUMERIC_CONFIG
from models.report import NormMethod, NormResult
from polycore.poly import HomogPoly
from polycore.scalar import to_mpf
from utils.errors import InvalidInputError, UnsupportedDimensionError
from utils.search import grid_then_golden

# 多维网格首轮的总点数
_BOX_BUDGET = 2 ** 18
# 每轮缩放时每个坐标轴的点数
_ZOOM_POINTS = 5
# 多维网格首轮保留的候选点数
_ZOOM_CANDIDATES = 4

Terms = list[tuple[tuple[int, ...], mpmath.mpf]]


@dataclass
class _Extrema:
    max_value: mpmath.mpf
    max_point: tuple
    min_value: mpmath.mpf
    min_point: tuple
    used_grid: bool = False


def affine_variables(P: HomogPoly) -> list[int]:
    """在所有项里指数都不超过 1、且至少出现一次的变量。"""
    seen = set()
    nonaffine = set()
    for alpha, _ in P.terms:
        for i, e in enumerate(alpha):
            if e:
                seen.add(i)
            if e > 1:
                nonaffine.add(i)
    return sorted(seen - nonaffine)


def _eval_np(terms: Terms, X: np.ndarray) -> np.ndarray:
    values = np.zeros(X.shape[0])
    for exps, c in terms:
        mono = np.full(X.shape[0], float(c))
        for i, e in enumerate(exps):
            if e:
                mono = mono * X[:, i] ** e
        values += mono
    return values


def _eval_mp(terms: Terms, point: Sequence) -> mpmath.mpf:
    parts = []
    for exps, c in terms:
        term = c
        for x, e in zip(point, exps):
            if e:
                term *= mpmath.mpf(x) ** e
        parts.append(term)
    return mpmath.fsum(parts)


def _merge(terms) -> Terms:
    acc: dict[tuple[int, ...], mpmath.mpf] = defaultdict(lambda: mpmath.mpf(0))
    for exps, c in terms:
        acc[exps] += c
    return [(e, c) for e, c in sorted(acc.items()) if c != 0]


def _interval_extrema(terms: Terms, samples: int, tol: float) -> _Extrema:
    degree = max((e[0] for e, _ in terms), default=0)
    coeffs = [mpmath.mpf(0)] * (degree + 1)
    for (e,), c in terms:
        coeffs[e] += c
    coeffs_np = np.array([float(c) for c in coeffs])
    descending = list(reversed(coeffs))

    def f_np(xs):
        return np.polynomial.polynomial.polyval(xs, coeffs_np)

    def f_mp(x):
        return mpmath.polyval(descending, x)

    top = grid_then_golden(f_np, f_mp, -1.0, 1.0, samples, tol)
    bottom = grid_then_golden(lambda xs: -f_np(xs), lambda x: -f_mp(x), -1.0, 1.0, samples, tol)
    return _Extrema(top.maximum, (top.argmax,), -bottom.maximum, (bottom.argmax,))


def _zoom(terms: Terms, center: np.ndarray, h: float, sign: float, tol: float) -> np.ndarray:
    dim = len(center)
    best_point = center
    best_value = sign * _eval_np(terms, center[None, :])[0]
    while h > tol:
        axes = [np.linspace(max(c - h, -1.0), min(c + h, 1.0), _ZOOM_POINTS) for c in best_point]
        pts = np.array(list(itertools.product(*axes))) if dim > 1 else axes[0][:, None]
        values = sign * _eval_np(terms, pts)
        idx = int(np.argmax(values))
        if values[idx] >= best_value:
            best_value, best_point = values[idx], pts[idx]
        h /= 2
    return best_point


def _box_extrema(terms: Terms, dim: int, samples: int, tol: float) -> _Extrema:
    """一般（非齐次）多项式在 [−1,1]^dim 上的最大/最小值。"""
    if dim == 0:
        value = sum((c for _, c in terms), mpmath.mpf(0))
        return _Extrema(value, (), value, ())
    if dim == 1:
        return _interval_extrema(terms, samples, tol)

    per_axis = max(_ZOOM_POINTS, int(round(_BOX_BUDGET ** (1.0 / dim))))
    axis = np.linspace(-1.0, 1.0, per_axis)
    pts = np.array(list(itertools.product(axis, repeat=dim)))
    values = _eval_np(terms, pts)
    spacing = 2.0 / (per_axis - 1)

    def refine(sign: float) -> tuple:
        order = np.argsort(-sign * values, kind='stable')[:_ZOOM_CANDIDATES]
        best, best_value = None, None
        for idx in order:
            point = _zoom(terms, pts[idx], spacing, sign, tol)
            value = sign * _eval_mp(terms, point)
            if best is None or value > best_value:
                best, best_value = point, value
        return tuple(mpmath.mpf(float(x)) for x in best), sign * best_value

    max_point, max_value = refine(1.0)
    min_point, min_value = refine(-1.0)
    return _Extrema(max_value, max_point, min_value, min_point, used_grid=True)


def _homogeneous_extrema(terms: Terms, dim: int, degree: int, samples: int, tol: float) -> _Extrema:
    """齐次块：只看 x_i = 1 的 dim 个面。"""
    face_max: Optional[tuple] = None
    face_min: Optional[tuple] = None
    used_grid = False
    for i in range(dim):
        face_terms = _merge(((exps[:i] + exps[i + 1:]), c) for exps, c in terms)
        ext = _box_extrema(face_terms, dim - 1, samples, tol)
        used_grid = used_grid or ext.used_grid

        def lift(point: tuple) -> tuple:
            return point[:i] + (mpmath.mpf(1),) + point[i:]

        if face_max is None or ext.max_value > face_max[0]:
            face_max = (ext.max_value, lift(ext.max_point))
        if face_min is None or ext.min_value < face_min[0]:
            face_min = (ext.min_value, lift(ext.min_point))

    origin = tuple(mpmath.mpf(0) for _ in range(dim))
    if degree % 2 == 0:
        top = face_max if face_max[0] > 0 else (mpmath.mpf(0), origin)
        bottom = face_min if face_min[0] < 0 else (mpmath.mpf(0), origin)
        return _Extrema(top[0], top[1], bottom[0], bottom[1], used_grid)

    # 奇次：x_i = −1 的面上取值是 x_i = 1 面上的相反数
    if face_max[0] >= -face_min[0]:
        value, point = face_max
    else:
        value, point = -face_min[0], tuple(-x for x in face_min[1])
    return _Extrema(value, point, -value, tuple(-x for x in point), used_grid)


def _components(terms: Terms, free: list[int]) -> list[list[int]]:
    """按"同时出现在某一项里"把自由变量分组（并查集）。"""
    parent = {i: i for i in free}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    used = set()
    for exps, _ in terms:
        vars_in_term = [i for i in free if exps[i]]
        used.update(vars_in_term)
        for a, b in zip(vars_in_term, vars_in_term[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: dict[int, list[int]] = defaultdict(list)
    for i in sorted(used):
        groups[find(i)].append(i)
    return [groups[r] for r in sorted(groups)]


def _block_extrema(terms: Terms, dim: int, samples: int, tol: float) -> _Extrema:
    degrees = {sum(exps) for exps, _ in terms}
    if dim == 1:
        return _interval_extrema(terms, samples, tol)
    if len(degrees) == 1:
        return _homogeneous_extrema(terms, dim, degrees.pop(), samples, tol)
    return _box_extrema(terms, dim, samples, tol)


def _reduced_sup(terms: Terms, nvars: int, fixed: dict[int, int], samples: int, tol: float):
    reduced: dict[tuple[int, ...], mpmath.mpf] = defaultdict(lambda: mpmath.mpf(0))
    for exps, c in terms:
        coef = c
        new = list(exps)
        for i, s in fixed.items():
            if exps[i]:
                coef *= s
                new[i] = 0
        reduced[tuple(new)] += coef

    zero = tuple([0] * nvars)
    const = reduced.pop(zero, mpmath.mpf(0))
    reduced_terms = [(e, c) for e, c in sorted(reduced.items()) if c != 0]
    free = [i for i in range(nvars) if i not in fixed]

    hi, lo = const, const
    hi_point = {i: mpmath.mpf(s) for i, s in fixed.items()}
    lo_point = dict(hi_point)
    used_grid = False
    for block in _components(reduced_terms, free):
        local = [(tuple(e[i] for i in block), c) for e, c in reduced_terms if any(e[i] for i in block)]
        ext = _block_extrema(local, len(block), samples, tol)
        used_grid = used_grid or ext.used_grid
        hi += ext.max_value
        lo += ext.min_value
        hi_point.update(zip(block, ext.max_point))
        lo_point.update(zip(block, ext.min_point))

    chosen = hi_point if hi >= -lo else lo_point
    point = tuple(chosen.get(i, mpmath.mpf(0)) for i in range(nvars))
    return point, used_grid


def supnorm_linf(
    P: HomogPoly,
    tol: Optional[float] = None,
    *,
    grid: Optional[int] = None,
    bits: Optional[int] = None,
) -> NormResult:
    """max_{x ∈ [−1,1]^n} |P(x)|，误差不超过 tol。"""
    tol = NUMERIC_CONFIG['norm_tol'] if tol is None else tol
    if P.nvars > NUMERIC_CONFIG['max_nvars']:
        raise UnsupportedDimensionError(
            f"变量数 {P.nvars} 超过上限 {NUMERIC_CONFIG['max_nvars']}"
        )
    if not tol > 0:
        raise InvalidInputError(f"容差必须为正: {tol}")
    samples = grid or NUMERIC_CONFIG['grid_points']
    if samples < 16:
        raise InvalidInputError(f"网格点数至少为 16: {samples}")
    bits = bits or P.bits

    with mpmath.workprec(bits):
        if not P:
            return NormResult(mpmath.mpf(0), tuple(mpmath.mpf(0) for _ in range(P.nvars)),
                              tol, NormMethod.VERTEX_REDUCED_SCAN)

        terms = [(tuple(alpha), to_mpf(c)) for alpha, c in P.terms]
        affine = affine_variables(P)
        candidates = []
        any_grid = False
        for signs in itertools.product((-1, 1), repeat=len(affine)):
            point, used_grid = _reduced_sup(terms, P.nvars, dict(zip(affine, signs)), samples, tol)
            any_grid = any_grid or used_grid
            candidates.append((abs(_eval_mp(terms, point)), point))

        top = max(v for v, _ in candidates)
        # 与最大值相差不超过 tol 的候选里取字典序最小的见证点
        value, witness = min(
            (c for c in candidates if c[0] >= top - tol),
            key=lambda c: tuple(float(x) for x in c[1]),
        )

    method = NormMethod.GRID_POLISH if any_grid else NormMethod.VERTEX_REDUCED_SCAN
    logging.debug(
        f"[supnorm_linf] n={P.nvars} m={P.degree} 仿射变量 {len(affine)} 个，"
        f"‖P‖ ≈ {mpmath.nstr(value, 12)}（{method.value}）"
    )
    return NormResult(value, witness, tol, method, sign_patterns=len(candidates))


def soundness_gap(P: HomogPoly, norm: NormResult, points: int = 10000, seed: int = 0) -> float:
    """在 points 个随机点上取 max |P(x)| − ‖P‖（float 精度）；明显大于 0 说明漏掉了极值。"""
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1.0, 1.0, size=(points, P.nvars))
    terms = [(tuple(alpha), to_mpf(c)) for alpha, c in P.terms]
    observed = float(np.max(np.abs(_eval_np(terms, X)))) if terms else 0.0
    return observed - float(norm.value)
