"""把高精度值截断成只含可信位的十进制字符串。"""

from __future__ import annotations

from typing import Any, Optional

import mpmath

from phi.logreal import LogReal
from utils.errors import InvalidInputError

# 指数不小于这个值时写成 `1.5654e5` 的形式
SCIENTIFIC_FROM_EXP = 5


def format_truncated(
    value: Any,
    significant: int,
    abs_err: Any = None,
    bits: int = 256,
) -> str:
    """向零截断到 significant 位有效数字；给了 abs_err 时只保留误差以上的位。"""
    if significant < 1:
        raise InvalidInputError(f"有效数字位数至少为 1: {significant}")
    lr = value if isinstance(value, LogReal) else LogReal.from_value(value, bits)
    if lr.is_zero:
        return '0'

    with mpmath.workprec(max(bits, lr.bits) + 32):
        log10 = lr.log10
        exp10 = int(mpmath.floor(log10))
        digits = significant
        if abs_err is not None and abs_err > 0:
            trusted = int(mpmath.floor(log10 - mpmath.log10(abs_err)))
            digits = max(1, min(significant, trusted))
        # 精确值（如 5/2）经对数往返后可能落在 2.4999… 上，乘一个远低于误差的放大因子
        scaled = mpmath.power(10, log10 - exp10 + digits - 1) * (1 + mpmath.ldexp(1, -(lr.bits - 16)))
        mantissa = int(mpmath.floor(scaled))
        # 对数舍入可能让 mantissa 溢出一位（如 9.999… → 10.00…）
        if mantissa >= 10 ** digits:
            mantissa //= 10
            exp10 += 1

    text = str(mantissa)
    sign = '-' if lr.sign < 0 else ''
    if exp10 >= SCIENTIFIC_FROM_EXP:
        body = text[0] + ('.' + text[1:] if len(text) > 1 else '')
        return f"{sign}{body}e{exp10}"
    if exp10 >= 0:
        int_part, frac_part = text[:exp10 + 1], text[exp10 + 1:]
        int_part = int_part.ljust(exp10 + 1, '0')
        return f"{sign}{int_part}" + (f".{frac_part}" if frac_part else '')
    return f"{sign}0.{'0' * (-exp10 - 1)}{text}"


def parse_paper_value(text: str, bits: int = 256) -> LogReal:
    """`1.5654e5`、`14.86998167` 之类的字符串 → LogReal。"""
    with mpmath.workprec(bits):
        return LogReal.from_value(mpmath.mpf(text.strip()), bits)


def relative_error(ours: LogReal, paper: LogReal) -> float:
    return float(ours.rel_diff(paper))
