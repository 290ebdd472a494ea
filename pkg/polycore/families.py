"""下界构造中用到的具名多项式族。

每个族是一个不可变描述符（dataclass），make_family 按类型查表分派到构造函数。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Union

from polycore.poly import HomogPoly, poly_mul, poly_pow
from polycore.scalar import DEFAULT_BITS, Scalar, as_scalar, scalar_sqrt
from utils.errors import InvalidInputError


@dataclass(frozen=True)
class ChoiKim:
    """t·x² − t·y² + s·2√(t(1−t))·xy，t ∈ [1/2, 1]，s = ±1。"""

    t: Any
    sign: int = 1

    def label(self) -> str:
        return f"ChoiKim(t={self.t}, sign={self.sign:+d})"


@dataclass(frozen=True)
class SquareExtreme:
    """正方形范数单位球 [−1,1]³ 的极点族（见 SQUARE_VARIANTS）。"""

    variant: str
    t: Any = None

    def label(self) -> str:
        return f"SquareExtreme({self.variant}" + (f", t={self.t})" if self.t is not None else ")")


@dataclass(frozen=True)
class Quadratic:
    """a·x² + b·y² + c·xy。"""

    a: Any
    b: Any
    c: Any

    def label(self) -> str:
        return f"Quadratic({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True)
class QuarticE:
    """a·x⁴ + b·y⁴ + c·x²y²。"""

    a: Any
    b: Any
    c: Any

    def label(self) -> str:
        return f"QuarticE({self.a}, {self.b}, {self.c})"


@dataclass(frozen=True)
class P3:
    """6 元 3 次：(x₁+x₂)(x₃²+x₃x₄−x₄²) + (x₁−x₂)(x₅²+x₅x₆−x₆²)。"""

    def label(self) -> str:
        return "P3"


@dataclass(frozen=True)
class Q4k:
    """(x⁴ + y⁴ − 3x²y²)^k。"""

    k: int

    def label(self) -> str:
        return f"Q4k(k={self.k})"


@dataclass(frozen=True)
class PowerP2k:
    """(a·x² + b·y² + c·xy)^k。"""

    a: Any
    b: Any
    c: Any
    k: int

    def label(self) -> str:
        return f"PowerP2k(a={self.a}, b={self.b}, c={self.c}, k={self.k})"


FamilySpec = Union[ChoiKim, SquareExtreme, Quadratic, QuarticE, P3, Q4k, PowerP2k]

SQUARE_VARIANTS = ('t_x2', 't_y2', 'xy1', 'xy3', 'x2', 'y2')


def quadratic(a: Any, b: Any, c: Any, bits: int = DEFAULT_BITS) -> HomogPoly:
    return HomogPoly(2, 2, {(2, 0): as_scalar(a, bits), (0, 2): as_scalar(b, bits), (1, 1): as_scalar(c, bits)})


def quartic_e(a: Any, b: Any, c: Any, bits: int = DEFAULT_BITS) -> HomogPoly:
    return HomogPoly(2, 4, {(4, 0): as_scalar(a, bits), (0, 4): as_scalar(b, bits), (2, 2): as_scalar(c, bits)})


def _unit_interval(t: Any, lo: Fraction, bits: int, what: str) -> Scalar:
    t = as_scalar(t, bits)
    if not lo <= t <= 1:
        raise InvalidInputError(f"{what} 要求 t ∈ [{lo}, 1]，收到 t={t}")
    return t


def _build_choi_kim(spec: ChoiKim, bits: int) -> HomogPoly:
    t = _unit_interval(spec.t, Fraction(1, 2), bits, "ChoiKim")
    if spec.sign not in (1, -1):
        raise InvalidInputError(f"ChoiKim 的 sign 只能是 ±1: {spec.sign}")
    xy = spec.sign * 2 * scalar_sqrt(t * (1 - t), bits)
    return quadratic(t, -t, xy, bits)


def square_extreme_coefficients(variant: str, t: Any = None, bits: int = DEFAULT_BITS) -> tuple[Scalar, Scalar, Scalar]:
    """返回极点 (a, b, c)，对应 a·x² + b·y² + c·xy。"""
    if variant not in SQUARE_VARIANTS:
        raise InvalidInputError(f"未知的 SquareExtreme 变体: {variant!r}，可选 {SQUARE_VARIANTS}")
    if variant in ('t_x2', 't_y2'):
        if t is None:
            raise InvalidInputError(f"变体 {variant} 需要参数 t")
        t = _unit_interval(t, Fraction(0), bits, "SquareExtreme")
        xy = 2 * scalar_sqrt(1 - t, bits)
        return (t, Fraction(-1), xy) if variant == 't_x2' else (Fraction(-1), t, xy)
    fixed = {
        'xy1': (1, 1, -1),
        'xy3': (1, 1, -3),
        'x2': (1, 0, 0),
        'y2': (0, 1, 0),
    }
    return tuple(Fraction(v) for v in fixed[variant])


def _build_square_extreme(spec: SquareExtreme, bits: int) -> HomogPoly:
    return quadratic(*square_extreme_coefficients(spec.variant, spec.t, bits), bits=bits)


def _build_quadratic(spec: Quadratic, bits: int) -> HomogPoly:
    return quadratic(spec.a, spec.b, spec.c, bits)


def _build_quartic_e(spec: QuarticE, bits: int) -> HomogPoly:
    return quartic_e(spec.a, spec.b, spec.c, bits)


def _build_p3(spec: P3, bits: int) -> HomogPoly:
    def linear(coeffs: dict[int, int]) -> HomogPoly:
        return HomogPoly(6, 1, {tuple(1 if j == i else 0 for j in range(6)): c for i, c in coeffs.items()})

    def square_part(i: int, j: int) -> HomogPoly:
        def mono(pi: int, pj: int) -> tuple[int, ...]:
            exps = [0] * 6
            exps[i], exps[j] = pi, pj
            return tuple(exps)
        return HomogPoly(6, 2, {mono(2, 0): 1, mono(1, 1): 1, mono(0, 2): -1})

    return poly_mul(linear({0: 1, 1: 1}), square_part(2, 3)) + poly_mul(linear({0: 1, 1: -1}), square_part(4, 5))


def _build_q4k(spec: Q4k, bits: int) -> HomogPoly:
    _check_power(spec.k)
    return poly_pow(quartic_e(1, 1, -3), spec.k)


def _build_power_p2k(spec: PowerP2k, bits: int) -> HomogPoly:
    _check_power(spec.k)
    # 原文正文把幂次印成 2k；按次数 2k 的要求这里取 k
    logging.warning(f"[PowerP2k] 按 (a·x²+b·y²+c·xy)^k 构造，次数为 2k={2 * spec.k}")
    return poly_pow(quadratic(spec.a, spec.b, spec.c, bits), spec.k)


def _check_power(k: Any):
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInputError(f"k 必须是正整数: {k!r}")


_BUILDERS: dict[type, Callable[[Any, int], HomogPoly]] = {
    ChoiKim: _build_choi_kim,
    SquareExtreme: _build_square_extreme,
    Quadratic: _build_quadratic,
    QuarticE: _build_quartic_e,
    P3: _build_p3,
    Q4k: _build_q4k,
    PowerP2k: _build_power_p2k,
}


def make_family(spec: FamilySpec, bits: int = DEFAULT_BITS) -> HomogPoly:
    builder = _BUILDERS.get(type(spec))
    if builder is None:
        raise InvalidInputError(f"未知的多项式族: {spec!r}")
    return builder(spec, bits)


def lift_to_quartic(P: HomogPoly) -> HomogPoly:
    """x_i → x_i²：二次型 a·x²+b·y²+c·xy 变成 a·x⁴+b·y⁴+c·x²y²。"""
    return HomogPoly(P.nvars, 2 * P.degree, [(alpha.scaled(2), c) for alpha, c in P.terms])
