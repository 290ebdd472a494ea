import logging
import sys
from typing import Any, List, Optional

import mpmath
import pandas as pd

from config.tables import TABLE_TOLERANCE
from models.report import BoundOutcome, OutputRecord
from phi.logreal import LogReal
from polycore.families import make_family
from steps.base import Step
from utils.formatting import format_truncated, parse_paper_value, relative_error

# 输出的有效数字上限
BOUND_DIGITS = 10
C_OF_M_DIGITS = 9


def _tolerance_for(paper_value: str, compare: str) -> float:
    if compare == 'c_of_m':
        return TABLE_TOLERANCE['c_of_m']
    return TABLE_TOLERANCE['scientific'] if 'e' in paper_value.lower() else TABLE_TOLERANCE['fixed']


class BuildRecords(Step):
    """把计算结果整理成输出行，并和文献值比对。

    输入：list[BoundOutcome]
    输出：list[OutputRecord]
    """

    def __init__(self):
        self.name = "BuildRecords"

    def _record(self, outcome: BoundOutcome) -> OutputRecord:
        report, job = outcome.report, outcome.job
        bits = report.precision_bits
        with mpmath.workprec(bits):
            c_err = None
            if report.abs_err is not None:
                # d(v^{1/m}) = v^{1/m} · dv / (m·v)
                c_err = report.c_of_m * report.abs_err / (report.m * report.value.to_mpf())
        record = OutputRecord(
            family=report.family.value,
            m=report.m,
            bound=format_truncated(report.value, BOUND_DIGITS, report.abs_err, bits),
            c_of_m=format_truncated(report.c_of_m, C_OF_M_DIGITS, c_err, bits),
            witness=report.witness.get('polynomial', ''),
            precision_bits=bits,
            runtime_ms=outcome.runtime_ms,
        )

        if job.paper_value:
            ours = report.value if job.compare == 'bound' else LogReal.from_value(report.c_of_m, bits)
            rel = relative_error(ours, parse_paper_value(job.paper_value, bits))
            record.paper_value = job.paper_value
            record.rel_err = f"{rel:.2e}"
            tol = _tolerance_for(job.paper_value, job.compare)
            if rel > tol:
                logging.warning(
                    f"[{self.name}] {record.family},{record.m}: 相对误差 {rel:.2e} 超过 {tol:g}"
                    + (f"（{job.note}）" if job.note else "")
                )
        return record

    async def process(self, data: Any) -> List[OutputRecord]:
        outcomes: List[BoundOutcome] = data if isinstance(data, list) else [data]
        return [self._record(o) for o in outcomes]


class WriteOutput(Step):
    """用 pandas 写 CSV/JSON；out_path 为空时写到 stdout。

    输入：list[OutputRecord] 或 pandas.DataFrame
    输出：写出的 DataFrame
    """

    def __init__(self, fmt: str = 'csv', out_path: Optional[str] = None, stream=None):
        if fmt not in ('csv', 'json'):
            raise ValueError(f"未知输出格式: {fmt}; 可选: csv, json")
        self.name = "WriteOutput"
        self.fmt = fmt
        self.out_path = out_path
        self.stream = stream

    async def process(self, data: Any) -> pd.DataFrame:
        if isinstance(data, pd.DataFrame):
            df = data
        else:
            records = data if isinstance(data, list) else [data]
            rows = [r.to_dict() for r in records]
            df = pd.DataFrame(rows, columns=list(OutputRecord.COLUMNS))

        stream = self.stream or sys.stdout
        if self.fmt == 'csv':
            text = df.to_csv(index=False)
        else:
            text = df.to_json(orient='records', force_ascii=False, indent=2) + '\n'

        if self.out_path:
            with open(self.out_path, 'w', encoding='utf-8') as f:
                f.write(text)
            logging.info(f"[{self.name}] 已写出 {len(df)} 行到 {self.out_path}")
        else:
            stream.write(text)
        return df


class DumpWitness(Step):
    """把见证多项式按 `α : 系数` 逐行写到 stderr。

    输入：list[BoundOutcome]（原样传给下一步）
    """

    def __init__(self, stream=None):
        self.name = "DumpWitness"
        self.stream = stream

    async def process(self, data: Any) -> Any:
        stream = self.stream or sys.stderr
        outcomes = data if isinstance(data, list) else [data]
        for outcome in outcomes:
            descriptor = outcome.report.descriptor
            if descriptor is None:
                continue
            poly = make_family(descriptor, outcome.report.precision_bits)
            stream.write(f"# {outcome.report.label} {descriptor.label()}\n{poly.dump()}\n")
        return data
