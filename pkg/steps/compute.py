import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, List, Optional

import pandas as pd

from bounds.growth import growth_analysis
from bounds.registry import BOUND_GENERATORS
from config.settings import RUNTIME_CONFIG
from models.report import BoundJob, BoundOutcome, SearchConfig
from steps.base import Step


def run_bound_job(job: BoundJob, cfg: SearchConfig) -> BoundOutcome:
    """在当前进程里算一行；也是进程池的入口，必须是模块级函数。"""
    start = time.perf_counter()
    report = BOUND_GENERATORS[job.family](job.k, cfg)
    return BoundOutcome(job=job, report=report, runtime_ms=(time.perf_counter() - start) * 1000)


class ComputeBounds(Step):
    """并行计算一组下界。

    输入：list[BoundJob]
    输出：list[BoundOutcome]，顺序与输入一致
    """

    def __init__(self, cfg: SearchConfig, workers: Optional[int] = None):
        self.name = "ComputeBounds"
        self.cfg = cfg
        self.workers = workers if workers is not None else RUNTIME_CONFIG['workers']

    async def process(self, data: Any) -> List[BoundOutcome]:
        jobs: List[BoundJob] = data if isinstance(data, list) else [data]
        if not jobs:
            return []

        workers = min(self.workers, len(jobs))
        logging.info(f"[{self.name}] {len(jobs)} 个任务，{max(workers, 1)} 个进程")
        if workers <= 1:
            return [run_bound_job(job, self.cfg) for job in jobs]

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [loop.run_in_executor(pool, run_bound_job, job, self.cfg) for job in jobs]
            outcomes = await asyncio.gather(*futures)

        for outcome in outcomes:
            logging.debug(
                f"[{self.name}] {outcome.job.family} m={outcome.report.m} "
                f"耗时 {outcome.runtime_ms:.0f}ms"
            )
        return list(outcomes)


class ComputeGrowth(Step):
    """L_{R,4k} 的相邻比值和 D_{R,4k} 的 C，输出 DataFrame 交给 WriteOutput。

    输入：k_max（int）
    输出：pandas.DataFrame
    """

    def __init__(self, cfg: SearchConfig, ks: Optional[List[int]] = None):
        self.name = "ComputeGrowth"
        self.cfg = cfg
        self.ks = ks

    async def process(self, data: Any) -> pd.DataFrame:
        table = growth_analysis(int(data), self.cfg, self.ks)
        if not table.meets_threshold:
            logging.warning(f"[{self.name}] k={table.rows[-1].k} 时 C 仍低于 {table.threshold}")
        return table.to_frame()
