"""二元二次型 q(s,t) = a·s² + b·t² + c·st 在单位正方形 [0,1]² 上的精确 sup 范数。

代换 (s,t) = (x², y²) 后就是四次型 a·x⁴ + b·y⁴ + c·x²y² 在 [−1,1]² 上的范数。
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

import mpmath

from models.report import NormMethod, NormResult
from polycore.scalar import DEFAULT_BITS, as_scalar, to_mpf


def square_candidates(a: Any, b: Any, c: Any) -> list[tuple[Any, Any]]:
    """极值候选点：四个角，s=1 与 t=1 两条边上的抛物线顶点（落在 [0,1] 内时），
    以及内部驻点。s=0、t=0 两条边上只有 b·t²、a·s²，极值在角上。
    Hessian 非奇异时内部驻点只有原点。
    """
    zero, one = Fraction(0), Fraction(1)
    points = [(zero, zero), (one, zero), (zero, one), (one, one)]
    if b != 0:
        t = -c / (2 * b)
        if 0 <= t <= 1:
            points.append((one, t))
    if a != 0:
        s = -c / (2 * a)
        if 0 <= s <= 1:
            points.append((s, one))
    return points


def supnorm_square_quadratic(a: Any, b: Any, c: Any, bits: int = DEFAULT_BITS) -> NormResult:
    a, b, c = (as_scalar(v, bits) for v in (a, b, c))
    best_value, best_point = None, None
    for s, t in square_candidates(a, b, c):
        value = abs(a * s * s + b * t * t + c * s * t)
        if best_value is None or value > best_value:
            best_value, best_point = value, (s, t)

    exact = best_value if isinstance(best_value, Fraction) else None
    with mpmath.workprec(bits):
        value = to_mpf(best_value)
        witness = tuple(to_mpf(x) for x in best_point)
    return NormResult(value, witness, 0.0, NormMethod.CLOSED_FORM, exact=exact)
