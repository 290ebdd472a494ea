from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

import mpmath

from config.settings import NUMERIC_CONFIG
from phi.logreal import LogReal
from utils.errors import InvalidInputError


class BoundFamily(Enum):
    """下界所属的常数族。"""
    L_R = "L_R"  # 实 Bohnenblust–Hille 常数
    D_R = "D_R"  # 实多项式的系数 ℓ_p 版本
    D_C = "D_C"  # 复多项式的系数 ℓ_p 版本


class NormMethod(Enum):
    CLOSED_FORM = "closed_form"
    VERTEX_REDUCED_SCAN = "vertex_reduced_scan"
    GRID_POLISH = "grid_polish"


@dataclass(frozen=True)
class NormResult:
    """sup 范数的计算结果；witness 处 |P| 与 value 相差不超过 tolerance。"""

    value: Any
    witness: tuple
    tolerance: float
    method: NormMethod
    exact: Optional[Fraction] = None
    sign_patterns: int = 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': mpmath.nstr(self.value, 20),
            'witness': [mpmath.nstr(x, 20) if not isinstance(x, Fraction) else str(x) for x in self.witness],
            'tolerance': self.tolerance,
            'method': self.method.value,
            'exact': str(self.exact) if self.exact is not None else None,
            'sign_patterns': self.sign_patterns,
        }


@dataclass(frozen=True)
class SearchConfig:
    """一次计算用到的全部数值参数，默认值取自 config.settings.NUMERIC_CONFIG。"""

    grid_points: int = NUMERIC_CONFIG['grid_points']
    tol_t: float = NUMERIC_CONFIG['tol_t']
    precision_bits: int = NUMERIC_CONFIG['precision_bits']
    norm_tol: float = NUMERIC_CONFIG['norm_tol']
    auto_raise_precision: bool = NUMERIC_CONFIG['auto_raise_precision']
    dc2_grid: int = NUMERIC_CONFIG['dc2_grid']

    def __post_init__(self):
        if self.grid_points < 16:
            raise InvalidInputError(f"grid_points 至少为 16: {self.grid_points}")
        if not self.tol_t > 0:
            raise InvalidInputError(f"tol_t 必须为正: {self.tol_t}")
        if not self.norm_tol > 0:
            raise InvalidInputError(f"norm_tol 必须为正: {self.norm_tol}")
        if self.precision_bits < 53:
            raise InvalidInputError(f"precision_bits 至少为 53: {self.precision_bits}")
        if self.dc2_grid < 16:
            raise InvalidInputError(f"dc2_grid 至少为 16: {self.dc2_grid}")

    @classmethod
    def from_settings(cls, **overrides: Any) -> SearchConfig:
        """CLI 传进来的 None 表示沿用默认值。"""
        return replace(cls(), **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        return {
            'grid_points': self.grid_points,
            'tol_t': self.tol_t,
            'precision_bits': self.precision_bits,
            'norm_tol': self.norm_tol,
            'auto_raise_precision': self.auto_raise_precision,
            'dc2_grid': self.dc2_grid,
        }


@dataclass(frozen=True)
class BoundReport:
    """一个下界 D(m) >= value 及其见证。

    c_of_m = value^{1/m}；abs_err 是 value 的绝对误差估计，输出时据此截断有效数字。
    """

    family: BoundFamily
    m: int
    value: LogReal
    c_of_m: Any
    witness: Dict[str, Any]
    search: Dict[str, Any]
    precision_bits: int
    abs_err: Any = None
    descriptor: Any = None
    extras: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        family: BoundFamily,
        m: int,
        value: LogReal,
        witness: Dict[str, Any],
        search: Dict[str, Any],
        precision_bits: int,
        abs_err: Any = None,
        descriptor: Any = None,
        extras: Optional[Dict[str, Any]] = None,
    ) -> BoundReport:
        if value.sign <= 0:
            raise InvalidInputError(f"下界必须为正: {value}")
        c_of_m = value.root(m).to_mpf()
        return cls(
            family=family,
            m=m,
            value=value,
            c_of_m=c_of_m,
            witness=witness,
            search=search,
            precision_bits=precision_bits,
            abs_err=abs_err,
            descriptor=descriptor,
            extras=extras or {},
        )

    @property
    def label(self) -> str:
        return f"{self.family.value},{self.m}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family.value,
            'm': self.m,
            'bound': str(self.value),
            'c_of_m': mpmath.nstr(self.c_of_m, 15),
            'witness': self.witness,
            'search': self.search,
            'precision_bits': self.precision_bits,
            'extras': self.extras,
        }


@dataclass(frozen=True)
class BoundJob:
    """表格/命令中的一行待计算任务，可以跨进程传递。"""

    family: str
    k: Optional[int] = None
    paper_value: Optional[str] = None
    compare: str = 'bound'
    note: str = ''


@dataclass
class BoundOutcome:
    job: BoundJob
    report: BoundReport
    runtime_ms: float


@dataclass
class OutputRecord:
    """一行输出。bound 与 c_of_m 已经按误差截断成十进制字符串。"""

    family: str
    m: int
    bound: str
    c_of_m: str
    witness: str
    precision_bits: int
    runtime_ms: float
    paper_value: str = ''
    rel_err: str = ''

    COLUMNS = ('family', 'm', 'bound', 'c_of_m', 'paper_value', 'rel_err', 'witness', 'precision_bits')

    def to_dict(self) -> Dict[str, Any]:
        return {
            'family': self.family,
            'm': self.m,
            'bound': self.bound,
            'c_of_m': self.c_of_m,
            'paper_value': self.paper_value,
            'rel_err': self.rel_err,
            'witness': self.witness,
            'precision_bits': self.precision_bits,
            'runtime_ms': round(self.runtime_ms, 1),
        }


@dataclass
class CheckResult:
    """一条验收检查的结果。"""

    name: str
    group: str
    passed: bool
    detail: str
    observed: str = ''
    expected: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'group': self.group,
            'passed': self.passed,
            'observed': self.observed,
            'expected': self.expected,
            'detail': self.detail,
        }
