"""系数标量：精确有理数 Fraction，或带精度标签的 mpmath 实数 HighPrecReal。

两者混合运算时结果提升为 HighPrecReal，精度取参与运算的最大值。
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Any, Union

import mpmath

from config.settings import NUMERIC_CONFIG
from utils.errors import InvalidInputError

DEFAULT_BITS: int = NUMERIC_CONFIG['precision_bits']


def _exact_to_mpf(x: Rational) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class HighPrecReal:
    """一个 mpmath 实数加上它应在的工作精度（bit）。"""

    value: mpmath.mpf
    bits: int = DEFAULT_BITS

    @classmethod
    def of(cls, x: Any, bits: int = DEFAULT_BITS) -> HighPrecReal:
        if isinstance(x, HighPrecReal):
            bits = max(bits, x.bits)
            x = x.value
        with mpmath.workprec(bits):
            if isinstance(x, Rational):
                value = _exact_to_mpf(x)
            else:
                value = mpmath.mpf(x)
        return cls(value, bits)

    def _operand(self, other: Any) -> tuple[mpmath.mpf, int] | None:
        if isinstance(other, HighPrecReal):
            bits = max(self.bits, other.bits)
            return other.value, bits
        if isinstance(other, Rational):
            with mpmath.workprec(self.bits):
                return _exact_to_mpf(other), self.bits
        if isinstance(other, (float, mpmath.mpf)):
            return mpmath.mpf(other), self.bits
        return None

    def _binary(self, other: Any, op, reflected: bool = False):
        operand = self._operand(other)
        if operand is None:
            return NotImplemented
        value, bits = operand
        with mpmath.workprec(bits):
            result = op(value, +self.value) if reflected else op(+self.value, value)
        return HighPrecReal(result, bits)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._binary(other, lambda a, b: a + b, reflected=True)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: a - b, reflected=True)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._binary(other, lambda a, b: a * b, reflected=True)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: a / b, reflected=True)

    def __pow__(self, exponent):
        with mpmath.workprec(self.bits):
            if isinstance(exponent, HighPrecReal):
                exponent = exponent.value
            elif isinstance(exponent, Fraction):
                exponent = _exact_to_mpf(exponent)
            return HighPrecReal(mpmath.power(self.value, exponent), self.bits)

    def __neg__(self):
        with mpmath.workprec(self.bits):
            return HighPrecReal(-self.value, self.bits)

    def __pos__(self):
        return self

    def __abs__(self):
        with mpmath.workprec(self.bits):
            return HighPrecReal(abs(self.value), self.bits)

    def _compare(self, other, op):
        operand = self._operand(other)
        if operand is None:
            return NotImplemented
        value, bits = operand
        with mpmath.workprec(bits):
            return op(self.value, value)

    def __eq__(self, other):
        return self._compare(other, lambda a, b: a == b)

    def __lt__(self, other):
        return self._compare(other, lambda a, b: a < b)

    def __le__(self, other):
        return self._compare(other, lambda a, b: a <= b)

    def __gt__(self, other):
        return self._compare(other, lambda a, b: a > b)

    def __ge__(self, other):
        return self._compare(other, lambda a, b: a >= b)

    def __hash__(self):
        return hash((self.value, self.bits))

    def __float__(self):
        return float(self.value)

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return mpmath.nstr(self.value, max(1, int(self.bits * 0.30103)) - 2)


Scalar = Union[Fraction, HighPrecReal]


def as_scalar(x: Any, bits: int = DEFAULT_BITS) -> Scalar:
    """int/Fraction/十进制字符串保持精确，float/mpf 转为 HighPrecReal。"""
    if isinstance(x, HighPrecReal):
        return x
    if isinstance(x, bool):
        raise InvalidInputError(f"不支持 bool 作为系数: {x!r}")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as e:
            raise InvalidInputError(f"无法解析系数: {x!r}") from e
    if isinstance(x, (float, mpmath.mpf)):
        if not mpmath.isfinite(x):
            raise InvalidInputError(f"系数必须是有限实数: {x!r}")
        return HighPrecReal.of(x, bits)
    raise InvalidInputError(f"不支持的系数类型: {type(x).__name__}")


def is_exact(x: Scalar) -> bool:
    return isinstance(x, Fraction)


def is_zero(x: Scalar) -> bool:
    return not x


def to_mpf(x: Any) -> mpmath.mpf:
    """按当前 mpmath 精度转成 mpf；调用方负责设置 workprec。"""
    if isinstance(x, HighPrecReal):
        return +x.value
    if isinstance(x, Rational):
        return _exact_to_mpf(x)
    return mpmath.mpf(x)


def scalar_sqrt(x: Any, bits: int = DEFAULT_BITS) -> Scalar:
    """平方根；完全平方的有理数返回精确 Fraction。"""
    x = as_scalar(x, bits)
    if x < 0:
        raise InvalidInputError(f"负数不能开平方: {x}")
    if isinstance(x, Fraction):
        num, den = isqrt(x.numerator), isqrt(x.denominator)
        if num * num == x.numerator and den * den == x.denominator:
            return Fraction(num, den)
        x = HighPrecReal.of(x, bits)
    bits = max(bits, x.bits)
    with mpmath.workprec(bits):
        return HighPrecReal(mpmath.sqrt(x.value), bits)


def promote(values: list[Scalar]) -> list[Scalar]:
    """只要有一个不精确，全部提升为同一精度的 HighPrecReal。"""
    inexact = [v for v in values if isinstance(v, HighPrecReal)]
    if not inexact:
        return values
    bits = max(v.bits for v in inexact)
    return [HighPrecReal.of(v, bits) for v in values]
