"""对数域实数：sign · exp(log_magnitude)。

用来承载 1e69 这种量级的界以及中间的幂和，乘除与开方都在对数域里做。
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

import mpmath

from polycore.scalar import DEFAULT_BITS, HighPrecReal, to_mpf
from utils.errors import InvalidInputError


def _as_mpf(x: Any) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return to_mpf(x)


@dataclass(frozen=True)
class LogReal:
    sign: int
    log_magnitude: Any = None
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise InvalidInputError(f"sign 只能是 -1/0/1: {self.sign}")
        if self.sign != 0 and self.log_magnitude is None:
            raise InvalidInputError("非零 LogReal 需要 log_magnitude")
        if self.sign == 0:
            object.__setattr__(self, 'log_magnitude', None)

    @classmethod
    def zero(cls, bits: int = DEFAULT_BITS) -> LogReal:
        return cls(0, None, bits)

    @classmethod
    def from_value(cls, x: Any, bits: int = DEFAULT_BITS) -> LogReal:
        if isinstance(x, HighPrecReal):
            bits = max(bits, x.bits)
        with mpmath.workprec(bits):
            v = _as_mpf(x)
            if v == 0:
                return cls.zero(bits)
            return cls(1 if v > 0 else -1, mpmath.log(abs(v)), bits)

    @classmethod
    def from_log(cls, log_magnitude: Any, sign: int = 1, bits: int = DEFAULT_BITS) -> LogReal:
        with mpmath.workprec(bits):
            return cls(sign, mpmath.mpf(log_magnitude), bits)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def log10(self):
        if self.is_zero:
            raise InvalidInputError("0 没有对数")
        with mpmath.workprec(self.bits):
            return self.log_magnitude / mpmath.ln(10)

    def to_mpf(self) -> mpmath.mpf:
        if self.is_zero:
            return mpmath.mpf(0)
        with mpmath.workprec(self.bits):
            return self.sign * mpmath.exp(self.log_magnitude)

    def __float__(self) -> float:
        return float(self.to_mpf())

    def __neg__(self) -> LogReal:
        return LogReal(-self.sign, self.log_magnitude, self.bits)

    def __abs__(self) -> LogReal:
        return LogReal(abs(self.sign), self.log_magnitude, self.bits)

    def _coerce(self, other: Any) -> LogReal:
        return other if isinstance(other, LogReal) else LogReal.from_value(other, self.bits)

    def __mul__(self, other: Any) -> LogReal:
        other = self._coerce(other)
        bits = max(self.bits, other.bits)
        if self.is_zero or other.is_zero:
            return LogReal.zero(bits)
        with mpmath.workprec(bits):
            return LogReal(self.sign * other.sign, self.log_magnitude + other.log_magnitude, bits)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> LogReal:
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("LogReal 除以 0")
        bits = max(self.bits, other.bits)
        if self.is_zero:
            return LogReal.zero(bits)
        with mpmath.workprec(bits):
            return LogReal(self.sign * other.sign, self.log_magnitude - other.log_magnitude, bits)

    def pow(self, p: Any) -> LogReal:
        """|x|^p，仅对非负数定义（p 可以是分数）。"""
        if self.sign < 0:
            raise InvalidInputError("负数的非整数次幂没有实数定义")
        if self.is_zero:
            return self
        with mpmath.workprec(self.bits):
            return LogReal(1, self.log_magnitude * _as_mpf(p), self.bits)

    def root(self, m: int) -> LogReal:
        """m 次方根，c_of_m = bound^{1/m} 就是它。"""
        if m < 1:
            raise InvalidInputError(f"根次必须 >= 1: {m}")
        return self.pow(Fraction(1, m))

    def _key(self):
        if self.is_zero:
            return (0, mpmath.mpf(0))
        return (self.sign, self.sign * self.log_magnitude)

    def __lt__(self, other: Any) -> bool:
        return self._key() < self._coerce(other)._key()

    def __le__(self, other: Any) -> bool:
        return self._key() <= self._coerce(other)._key()

    def __gt__(self, other: Any) -> bool:
        return self._key() > self._coerce(other)._key()

    def __ge__(self, other: Any) -> bool:
        return self._key() >= self._coerce(other)._key()

    def rel_diff(self, other: LogReal):
        """|self/other − 1|，两者同号非零。"""
        if self.is_zero or other.is_zero or self.sign != other.sign:
            raise InvalidInputError("相对误差只对同号非零值定义")
        bits = max(self.bits, other.bits)
        with mpmath.workprec(bits):
            return abs(mpmath.expm1(self.log_magnitude - other.log_magnitude))

    @staticmethod
    def log_sum(logs: Iterable[Any], bits: int = DEFAULT_BITS):
        """log Σ exp(ℓ_i)：先按降序排列，再减去最大值后求和。"""
        with mpmath.workprec(bits):
            ordered = sorted((mpmath.mpf(x) for x in logs), reverse=True)
            if not ordered:
                raise InvalidInputError("log_sum 至少需要一项")
            top = ordered[0]
            return top + mpmath.log(mpmath.fsum(mpmath.exp(x - top) for x in ordered))

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        with mpmath.workprec(self.bits):
            return mpmath.nstr(self.to_mpf(), 15)
