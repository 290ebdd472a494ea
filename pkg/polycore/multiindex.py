"""多重指标 α=(α₁,…,α_n) 与多项式系数。"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from utils.errors import InvalidInputError


class MultiIndex(tuple):
    """非负整数指数元组，|α| 即 degree。

    比较、哈希与普通 tuple 一致（字典序），可以直接作为 dict 的键。
    注意 ``+`` 仍是 tuple 拼接；逐分量相加用 :meth:`shift`。
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]) -> MultiIndex:
        exps = tuple(exponents)
        if not exps:
            raise InvalidInputError("多重指标至少要有一个分量")
        for e in exps:
            if isinstance(e, bool) or int(e) != e or e < 0:
                raise InvalidInputError(f"多重指标分量必须是非负整数: {exps}")
        return super().__new__(cls, (int(e) for e in exps))

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def nvars(self) -> int:
        return len(self)

    def shift(self, other: Sequence[int]) -> MultiIndex:
        if len(other) != len(self):
            raise InvalidInputError(f"变量数不一致: {len(self)} vs {len(other)}")
        return MultiIndex(a + b for a, b in zip(self, other))

    def scaled(self, factor: int) -> MultiIndex:
        return MultiIndex(a * factor for a in self)

    def __repr__(self) -> str:
        return f"MultiIndex{tuple(self)!r}"

    def __getnewargs__(self):
        return (tuple(self),)


@lru_cache(maxsize=None)
def _multinomial(alpha: tuple[int, ...]) -> int:
    # 逐个二项式相乘：C(α₁,α₁)·C(α₁+α₂,α₂)·…
    result, partial = 1, 0
    for a in alpha:
        partial += a
        result *= comb(partial, a)
    return result


def multinomial(m: int, alpha: Iterable[int]) -> int:
    """m!/(α₁!…α_n!)，要求 |α| = m。"""
    alpha = MultiIndex(alpha)
    if alpha.degree != m:
        raise InvalidInputError(f"|α|={alpha.degree} 与 m={m} 不一致")
    return _multinomial(tuple(alpha))


def multi_indices(n: int, m: int) -> Iterator[MultiIndex]:
    """按字典序升序生成所有 n 元、|α|=m 的多重指标。"""
    if n < 1 or m < 0:
        raise InvalidInputError(f"n 必须 >= 1 且 m 必须 >= 0: n={n}, m={m}")

    def _recurse(slots: int, total: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for rest in _recurse(slots - 1, total - head):
                yield (head,) + rest

    for exps in _recurse(n, m):
        yield MultiIndex(exps)


def index_counts(indices: Sequence[int], n: int) -> MultiIndex:
    """指标元组 (i₁,…,i_m) ∈ [n]^m 对应的多重指标：α_j = #{k : i_k = j}。"""
    counts = [0] * n
    for i in indices:
        if not 0 <= i < n:
            raise InvalidInputError(f"指标 {i} 超出 [0, {n})")
        counts[i] += 1
    return MultiIndex(counts)
