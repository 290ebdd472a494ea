"""齐次多项式：稀疏存储、精确/高精度系数、乘法与幂。"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

import mpmath

from polycore.multiindex import MultiIndex, multinomial
from polycore.scalar import (
    DEFAULT_BITS,
    HighPrecReal,
    Scalar,
    as_scalar,
    is_zero,
    promote,
    to_mpf,
)
from utils.errors import InvalidInputError


@dataclass(frozen=True)
class HomogPoly:
    """n 元 m 次齐次多项式 Σ a_α x^α。

    terms 构造时可以传 dict 或 (α, a_α) 序列；规范化后是按 α 字典序排列、
    不含零系数的元组。任一系数不精确时，全部系数提升为同精度 HighPrecReal。
    """

    nvars: int
    degree: int
    terms: Any = field(default=())

    def __post_init__(self):
        if self.nvars < 1:
            raise InvalidInputError(f"变量数必须 >= 1: {self.nvars}")
        if self.degree < 1:
            raise InvalidInputError(f"次数必须 >= 1: {self.degree}")

        items = self.terms.items() if isinstance(self.terms, Mapping) else self.terms
        merged: dict[MultiIndex, Scalar] = {}
        for alpha, coeff in items:
            alpha = MultiIndex(alpha)
            if alpha.nvars != self.nvars:
                raise InvalidInputError(f"指标 {tuple(alpha)} 的长度与 n={self.nvars} 不一致")
            if alpha.degree != self.degree:
                raise InvalidInputError(f"指标 {tuple(alpha)} 的次数与 m={self.degree} 不一致")
            coeff = as_scalar(coeff)
            merged[alpha] = merged[alpha] + coeff if alpha in merged else coeff

        keys = sorted(k for k, v in merged.items() if not is_zero(v))
        values = promote([merged[k] for k in keys])
        object.__setattr__(self, 'terms', tuple(zip(keys, values)))

    @classmethod
    def zero(cls, nvars: int, degree: int) -> HomogPoly:
        return cls(nvars, degree, ())

    @cached_property
    def coeffs(self) -> dict[MultiIndex, Scalar]:
        """α → a_α 的只读视图（不要修改返回的 dict）。"""
        return dict(self.terms)

    def coefficient(self, alpha: Sequence[int]) -> Scalar:
        return self.coeffs.get(MultiIndex(alpha), Fraction(0))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self.terms)

    @property
    def bits(self) -> int:
        return max((c.bits for _, c in self.terms if isinstance(c, HighPrecReal)), default=DEFAULT_BITS)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check_same_shape(self, other: HomogPoly):
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise InvalidInputError(
                f"形状不一致: (n={self.nvars}, m={self.degree}) vs (n={other.nvars}, m={other.degree})"
            )

    def __add__(self, other: HomogPoly) -> HomogPoly:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check_same_shape(other)
        return HomogPoly(self.nvars, self.degree, list(self.terms) + list(other.terms))

    def __neg__(self) -> HomogPoly:
        return HomogPoly(self.nvars, self.degree, [(a, -c) for a, c in self.terms])

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, lam: Any) -> HomogPoly:
        lam = as_scalar(lam)
        return HomogPoly(self.nvars, self.degree, [(a, lam * c) for a, c in self.terms])

    def __mul__(self, other: Any) -> HomogPoly:
        if isinstance(other, HomogPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other: Any) -> HomogPoly:
        return self.scale(other)

    def __pow__(self, k: int) -> HomogPoly:
        return poly_pow(self, k)

    def __call__(self, *point: Any, bits: int | None = None):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return eval_poly(self, point, bits=bits)

    def dump(self) -> str:
        return dump_poly(self)


def polar_coefficient(P: HomogPoly, alpha: Sequence[int]) -> Scalar:
    """对称 m-线性型在指标类 α 上的系数：a_α / C(m, α)。"""
    alpha = MultiIndex(alpha)
    if alpha.nvars != P.nvars or alpha.degree != P.degree:
        raise InvalidInputError(f"指标 {tuple(alpha)} 与多项式形状 (n={P.nvars}, m={P.degree}) 不一致")
    return P.coefficient(alpha) / multinomial(P.degree, alpha)


def poly_mul(P: HomogPoly, Q: HomogPoly) -> HomogPoly:
    """稀疏卷积：同类项合并，零系数丢弃。"""
    if P.nvars != Q.nvars:
        raise InvalidInputError(f"变量数不一致: {P.nvars} vs {Q.nvars}")
    acc: dict[MultiIndex, Scalar] = defaultdict(lambda: Fraction(0))
    for alpha, a in P.terms:
        for beta, b in Q.terms:
            acc[alpha.shift(beta)] += a * b
    return HomogPoly(P.nvars, P.degree + Q.degree, acc)


def poly_pow(P: HomogPoly, k: int) -> HomogPoly:
    """P^k，平方-乘法。"""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInputError(f"幂次必须是正整数: {k!r}")
    if not P:
        raise InvalidInputError("零多项式不能求幂")
    result: HomogPoly | None = None
    base = P
    while True:
        if k & 1:
            result = base if result is None else poly_mul(result, base)
        k >>= 1
        if not k:
            return result
        base = poly_mul(base, base)


def eval_poly(P: HomogPoly, point: Sequence[Any], bits: int | None = None):
    """在点 x 处求值。系数与点都精确时返回 Fraction，否则返回 mpf。"""
    if len(point) != P.nvars:
        raise InvalidInputError(f"点的维数 {len(point)} 与变量数 {P.nvars} 不一致")

    exact_point = all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in point)
    if P.is_exact and exact_point:
        total = Fraction(0)
        for alpha, a in P.terms:
            term = a
            for x, e in zip(point, alpha):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    with mpmath.workprec(bits or P.bits):
        xs = [to_mpf(x) for x in point]
        values = []
        for alpha, a in P.terms:
            term = to_mpf(a)
            for x, e in zip(xs, alpha):
                if e:
                    term *= x ** e
            values.append(term)
        return mpmath.fsum(values)


def dump_poly(P: HomogPoly) -> str:
    """每行一项：`α₁,…,α_n : 分子/分母`；不精确系数写成 `十进制@精度`。"""
    lines = []
    for alpha, a in P.terms:
        exps = ','.join(str(e) for e in alpha)
        if isinstance(a, Fraction):
            lines.append(f"{exps} : {a.numerator}/{a.denominator}")
        else:
            lines.append(f"{exps} : {a}@{a.bits}")
    return '\n'.join(lines)


def from_terms(nvars: int, terms: Iterable[tuple[Sequence[int], Any]]) -> HomogPoly:
    """从 (α, a_α) 列表推断次数构造多项式。"""
    terms = list(terms)
    if not terms:
        raise InvalidInputError("至少需要一项才能推断次数")
    degree = MultiIndex(terms[0][0]).degree
    return HomogPoly(nvars, degree, terms)
