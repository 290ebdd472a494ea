"""幂族的闭式系数。

A_j：(a·x² + b·y² + c·xy)^k = Σ_{j=0}^{2k} A_j x^j y^{2k−j}
B_j：(x⁴ + y⁴ − 3x²y²)^k = Σ_{j=0}^{2k} B_j x^{4k−2j} y^{2j}
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterator, Optional

from polycore.multiindex import MultiIndex, multinomial
from polycore.poly import HomogPoly
from polycore.scalar import DEFAULT_BITS, Scalar, as_scalar, promote
from utils.errors import ConsistencyError, InvalidInputError

# k 不超过这个值时 b_coeffs 的 auto 方法走闭式求和，否则走递推
_CLOSED_FORM_MAX_K = 64


class CoeffFamily(Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class CoeffVector:
    k: int
    entries: tuple
    family: CoeffFamily
    params: Optional[tuple] = None

    def __post_init__(self):
        if len(self.entries) != 2 * self.k + 1:
            raise ConsistencyError(f"系数个数 {len(self.entries)} != 2k+1 = {2 * self.k + 1}")
        if self.family is CoeffFamily.B:
            if not all(isinstance(e, int) for e in self.entries):
                raise ConsistencyError("B_j 必须全是整数")
            if self.entries != self.entries[::-1]:
                raise ConsistencyError(f"B_j 不回文 (k={self.k})")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int):
        return self.entries[j]

    def __iter__(self) -> Iterator:
        return iter(self.entries)

    def monomial(self, j: int) -> MultiIndex:
        if self.family is CoeffFamily.A:
            return MultiIndex((j, 2 * self.k - j))
        return MultiIndex((4 * self.k - 2 * j, 2 * j))

    @property
    def degree(self) -> int:
        return 2 * self.k if self.family is CoeffFamily.A else 4 * self.k

    def to_poly(self) -> HomogPoly:
        return HomogPoly(2, self.degree, [(self.monomial(j), e) for j, e in enumerate(self.entries)])


def _check_k(k: Any) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInputError(f"k 必须是正整数: {k!r}")


def _powers(x: Scalar, k: int) -> list[Scalar]:
    out = [Fraction(1) if isinstance(x, Fraction) else x ** 0]
    for _ in range(k):
        out.append(out[-1] * x)
    return out


def a_coeffs(a: Any, b: Any, c: Any, k: int, bits: int = DEFAULT_BITS) -> CoeffVector:
    """A_j = Σ_ℓ k!/(ℓ!(j−2ℓ)!(k−j+ℓ)!) · a^ℓ b^{k−j+ℓ} c^{j−2ℓ}，跳过 k−j+ℓ < 0 的项。"""
    _check_k(k)
    a, b, c = promote([as_scalar(v, bits) for v in (a, b, c)])
    pa, pb, pc = _powers(a, k), _powers(b, k), _powers(c, k)

    entries = []
    for j in range(2 * k + 1):
        total = Fraction(0)
        for ell in range(j // 2 + 1):
            beta = k - j + ell
            if beta < 0:
                continue
            total = total + multinomial(k, (ell, j - 2 * ell, beta)) * pa[ell] * pb[beta] * pc[j - 2 * ell]
        entries.append(total)
    return CoeffVector(k, tuple(promote(entries)), CoeffFamily.A, params=(a, b, c))


def _b_closed_form(k: int) -> list[int]:
    # 相邻两项之比 T(ℓ+1)/T(ℓ) = (j−2ℓ)(j−2ℓ−1) / (9(ℓ+1)(k−j+ℓ+1))，全程整数
    entries = []
    for j in range(2 * k + 1):
        ell = max(0, j - k)
        term = multinomial(k, (ell, j - 2 * ell, k - j + ell)) * (-3) ** (j - 2 * ell)
        total = term
        while ell + 1 <= j // 2:
            num = term * (j - 2 * ell) * (j - 2 * ell - 1)
            den = 9 * (ell + 1) * (k - j + ell + 1)
            term, rem = divmod(num, den)
            if rem:
                raise ConsistencyError(f"B_j 递推出现非整数项 (k={k}, j={j}, ℓ={ell + 1})")
            total += term
            ell += 1
        entries.append(total)
    return entries


def _b_recurrence(k: int) -> list[int]:
    # 多项式 p(z) = 1 − 3z + z² 的 k 次幂：n·f_n = Σ_{i=1,2} ((k+1)i − n)·p_i·f_{n−i}
    p = (1, -3, 1)
    f = [1]
    for n in range(1, 2 * k + 1):
        acc = 0
        for i in (1, 2):
            if n - i >= 0:
                acc += ((k + 1) * i - n) * p[i] * f[n - i]
        value, rem = divmod(acc, n)
        if rem:
            raise ConsistencyError(f"B_j 递推出现非整数项 (k={k}, n={n})")
        f.append(value)
    return f


_B_METHODS = {
    'closed_form': _b_closed_form,
    'recurrence': _b_recurrence,
}


def b_coeffs(k: int, method: str = 'auto') -> CoeffVector:
    """Q_{4k} 的整数系数 B_0,…,B_{2k}。"""
    _check_k(k)
    if method == 'auto':
        method = 'closed_form' if k <= _CLOSED_FORM_MAX_K else 'recurrence'
    if method not in _B_METHODS:
        raise InvalidInputError(f"未知的 B_j 计算方法: {method!r}，可选 {sorted(_B_METHODS)} 或 'auto'")
    entries = _B_METHODS[method](k)
    logging.debug(f"[b_coeffs] k={k} method={method} 最大系数 {max(map(abs, entries)).bit_length()} bit")
    return CoeffVector(k, tuple(entries), CoeffFamily.B)
