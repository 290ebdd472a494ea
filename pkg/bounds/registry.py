"""CLI 族名 → 下界生成器。

生成器统一签名 (k, cfg) -> BoundReport；不带参数的族忽略 k。
"""

from typing import Callable, Optional

from bounds.complex_search import lower_D_C2
from bounds.generators import (
    lower_D2,
    lower_D_3,
    lower_D_4k,
    lower_L2,
    lower_L4_E,
    lower_L_2k,
    lower_L_4k,
)
from models.report import BoundReport, SearchConfig
from utils.errors import InvalidInputError

BOUND_GENERATORS: dict[str, Callable[[Optional[int], SearchConfig], BoundReport]] = {
    "L2": lambda k, cfg: lower_L2(cfg),
    "D2": lambda k, cfg: lower_D2(cfg),
    "L4E": lambda k, cfg: lower_L4_E(cfg),
    "L2k": lambda k, cfg: lower_L_2k(k, cfg),
    "L4k": lambda k, cfg: lower_L_4k(k, cfg),
    "D3": lambda k, cfg: lower_D_3(cfg),
    "D4k": lambda k, cfg: lower_D_4k(k, cfg),
    "DC2": lambda k, cfg: lower_D_C2(cfg),
}

FAMILY_KEYS: list[str] = list(BOUND_GENERATORS)

# 带参数 k 的族：次数 m = step·k
FAMILY_DEGREE_STEP: dict[str, int] = {
    "L2k": 2,
    "L4k": 4,
    "D4k": 4,
}

# bound 命令的对照值（config.tables.HEADLINE_VALUES 的键）
FAMILY_HEADLINE: dict[str, str] = {
    "L2": "L2",
    "D2": "D2",
    "L4E": "L4E",
    "D3": "D3",
    "DC2": "DC2",
}


def resolve_k(family: str, k: Optional[int] = None, m: Optional[int] = None) -> Optional[int]:
    """由 --k 或 --m 得到 k；不带参数的族返回 None。"""
    if family not in BOUND_GENERATORS:
        raise InvalidInputError(f"未知的族: {family}; 可选: {FAMILY_KEYS}")
    step = FAMILY_DEGREE_STEP.get(family)
    if step is None:
        if k is not None or m is not None:
            raise InvalidInputError(f"族 {family} 不接受 --k/--m")
        return None
    if k is not None and m is not None:
        raise InvalidInputError("--k 与 --m 只能给一个")
    if m is not None:
        if m < step or m % step:
            raise InvalidInputError(f"族 {family} 要求 m 是 {step} 的正整数倍，收到 m={m}")
        k = m // step
    if k is None:
        raise InvalidInputError(f"族 {family} 需要 --k 或 --m")
    if k < 1:
        raise InvalidInputError(f"k 必须 >= 1，收到 k={k}")
    return k
