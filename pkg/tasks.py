"""命令 → Task 的构建逻辑。"""
import logging
from typing import Iterable, Optional

from bounds.registry import FAMILY_DEGREE_STEP, FAMILY_HEADLINE, resolve_k
from config.tables import HEADLINE_VALUES, PAPER_TABLES
from models.report import BoundJob, SearchConfig
from steps.base import Step, Task
from steps.checks import RunChecks, WriteCheckSummary
from steps.compute import ComputeBounds, ComputeGrowth
from steps.output import BuildRecords, DumpWitness, WriteOutput

TABLE_IDS: list[int] = sorted(PAPER_TABLES)

# 带参数族在特定 k 上的文献对照值：(family, k) → (HEADLINE_VALUES 键, 备注)
_PARAM_HEADLINE: dict[tuple[str, int], tuple[str, str]] = {
    ("L2k", 2): ("L2k_k2", "印刷值与公式不符，见 DESIGN.md"),
    ("L4k", 1): ("L4E", "四次子空间的结果"),
    ("L4k", 2): ("L4k_k2", ""),
    ("L4k", 3): ("L4k_k3", ""),
    ("D4k", 1): ("D4", ""),
}


def _table_paper_value(family: str, k: int) -> Optional[str]:
    for spec in PAPER_TABLES.values():
        if spec["family"] != family or spec["compare"] != "bound":
            continue
        for row in spec["rows"]:
            if row.get("k", row.get("m", 0) // 4) == k:
                return row["paper_value"]
    return None


def bound_job(family: str, k: Optional[int] = None, m: Optional[int] = None) -> BoundJob:
    """单个族的计算任务，能找到文献值时一并带上。"""
    k = resolve_k(family, k, m)
    if k is None:
        key = FAMILY_HEADLINE[family]
        return BoundJob(family=family, paper_value=HEADLINE_VALUES[key])
    if (family, k) in _PARAM_HEADLINE:
        key, note = _PARAM_HEADLINE[(family, k)]
        return BoundJob(family=family, k=k, paper_value=HEADLINE_VALUES[key], note=note)
    return BoundJob(family=family, k=k, paper_value=_table_paper_value(family, k))


def table_jobs(table: int) -> list[BoundJob]:
    """文献表格的全部行，顺序与原表一致。"""
    if table not in PAPER_TABLES:
        raise ValueError(f"未知表格: {table}; 可选: {TABLE_IDS}")
    spec = PAPER_TABLES[table]
    step = FAMILY_DEGREE_STEP[spec["family"]]
    return [
        BoundJob(
            family=spec["family"],
            k=row["k"] if "k" in row else row["m"] // step,
            paper_value=row["paper_value"],
            compare=spec["compare"],
        )
        for row in spec["rows"]
    ]


def _records_chain(cfg: SearchConfig, fmt: str, out: Optional[str], dump: bool, workers: Optional[int]) -> Step:
    chain = ComputeBounds(cfg, workers)
    if dump:
        chain = chain | DumpWitness()
    return chain | BuildRecords() | WriteOutput(fmt, out)


def build_bound_task(
    family: str,
    k: Optional[int],
    m: Optional[int],
    cfg: SearchConfig,
    fmt: str = "csv",
    out: Optional[str] = None,
    dump: bool = False,
    workers: Optional[int] = None,
) -> Task:
    job = bound_job(family, k, m)
    if family == "L2k":
        logging.warning("[L2k] 见证多项式取 (t₀x² − t₀y² + 2√(t₀(1−t₀))xy)^k，次数 2k；正文中的指数 2k 按笔误处理")
    return Task(
        name=f"bound_{family}" + (f"_k{job.k}" if job.k else ""),
        chain=_records_chain(cfg, fmt, out, dump, workers),
        payload=[job],
    )


def build_table_task(
    table: int,
    cfg: SearchConfig,
    fmt: str = "csv",
    out: Optional[str] = None,
    dump: bool = False,
    workers: Optional[int] = None,
) -> Task:
    return Task(
        name=f"table_{table}",
        chain=_records_chain(cfg, fmt, out, dump, workers),
        payload=table_jobs(table),
    )


def build_check_task(cfg: SearchConfig, only: Optional[Iterable[str]] = None) -> Task:
    return Task(name="check", chain=RunChecks(cfg, only) | WriteCheckSummary())


def build_growth_task(
    k_max: int,
    cfg: SearchConfig,
    fmt: str = "csv",
    out: Optional[str] = None,
) -> Task:
    return Task(name=f"growth_{k_max}", chain=ComputeGrowth(cfg) | WriteOutput(fmt, out), payload=k_max)

