import json
import logging
import sys
from typing import Any, Dict, Iterable, List, Optional

from checks.acceptance import run_checks
from models.report import CheckResult, SearchConfig
from steps.base import Step


class RunChecks(Step):
    """跑验收检查。

    输入：忽略
    输出：list[CheckResult]
    """

    def __init__(self, cfg: SearchConfig, only: Optional[Iterable[str]] = None):
        self.name = "RunChecks"
        self.cfg = cfg
        self.only = list(only) if only else None

    async def process(self, data: Any) -> List[CheckResult]:
        results = run_checks(self.cfg, self.only)
        failed = [r.name for r in results if not r.passed]
        logging.info(f"[{self.name}] {len(results) - len(failed)}/{len(results)} 通过")
        if failed:
            logging.warning(f"[{self.name}] 未通过: {', '.join(failed)}")
        return results


class WriteCheckSummary(Step):
    """把检查结果写成 JSON 摘要。

    输出：{'passed': int, 'failed': int, 'results': [...]}
    """

    def __init__(self, stream=None):
        self.name = "WriteCheckSummary"
        self.stream = stream

    async def process(self, data: Any) -> Dict[str, Any]:
        results: List[CheckResult] = data
        summary = {
            'passed': sum(1 for r in results if r.passed),
            'failed': sum(1 for r in results if not r.passed),
            'results': [r.to_dict() for r in results],
        }
        (self.stream or sys.stdout).write(json.dumps(summary, ensure_ascii=False, indent=2) + '\n')
        return summary
