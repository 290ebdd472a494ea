import argparse
import asyncio
import logging
import sys

from bounds.registry import FAMILY_KEYS
from checks.acceptance import ACCEPTANCE_CHECKS, CHECK_GROUPS
from config.settings import RUNTIME_CONFIG
from models.report import SearchConfig
from tasks import (
    TABLE_IDS,
    build_bound_task,
    build_check_task,
    build_growth_task,
    build_table_task,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class BoundsApp:

    def __init__(self, log_level: str = RUNTIME_CONFIG['log_level']):
        # stdout 留给 CSV/JSON，日志一律走 stderr
        handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if RUNTIME_CONFIG['log_file']:
            handlers.append(logging.FileHandler(RUNTIME_CONFIG['log_file'], encoding="utf-8"))
        logging.basicConfig(
            level=getattr(logging, log_level, logging.INFO),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            handlers=handlers,
            force=True,
        )

    def run(self, args: argparse.Namespace) -> int:
        cfg = SearchConfig.from_settings(
            precision_bits=args.precision,
            norm_tol=args.tol,
            grid_points=args.grid,
        )
        logging.info(f"运行 {args.command}: {cfg.to_dict()}")

        if args.command == "bound":
            task = build_bound_task(args.family, args.k, args.m, cfg, args.format, args.out,
                                    args.dump_poly, args.workers)
        elif args.command == "table":
            task = build_table_task(args.table, cfg, args.format, args.out, args.dump_poly, args.workers)
        elif args.command == "growth":
            task = build_growth_task(args.k_max, cfg, args.format, args.out)
        else:
            only = [s.strip() for s in args.only.split(",") if s.strip()] if args.only else None
            task = build_check_task(cfg, only)

        result = asyncio.run(task.run())
        if args.command == "check" and result["failed"]:
            return EXIT_CHECK_FAILED
        return EXIT_OK


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="工作精度（bit），默认 256")
    common.add_argument("--tol", type=float, default=None, help="范数 oracle 的绝对容差，默认 1e-10")
    common.add_argument("--grid", type=int, default=None, help="一维搜索的网格点数，默认 4096")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="输出格式")
    common.add_argument("--out", type=str, default=None, help="输出文件；不传则写 stdout")
    common.add_argument("--dump-poly", action="store_true", default=False,
                        help="把见证多项式的系数写到 stderr")
    common.add_argument("--workers", type=int, default=None,
                        help="并行进程数，覆盖环境变量 BH_WORKERS")
    return common


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    common = _common_flags()
    parser = argparse.ArgumentParser(description="多项式 Bohnenblust–Hille 常数的下界")
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", parents=[common], help="计算单个族的下界")
    bound.add_argument("family", choices=FAMILY_KEYS)
    bound.add_argument("--k", type=int, default=None, help="族参数 k（L2k: m=2k；L4k/D4k: m=4k）")
    bound.add_argument("--m", type=int, default=None, help="次数 m，与 --k 二选一")

    table = sub.add_parser("table", parents=[common], help="复算文献中的数值表")
    table.add_argument("table", type=int, choices=TABLE_IDS)

    growth = sub.add_parser("growth", parents=[common], help="L_{R,4k} 相邻比值与 D_{R,4k} 的 C")
    growth.add_argument("--k-max", type=int, required=True, dest="k_max")

    check = sub.add_parser("check", parents=[common], help="跑验收检查，输出 JSON 摘要")
    check.add_argument(
        "--only", type=str, default=None,
        help=f"逗号分隔的组名或检查名；组: {', '.join(CHECK_GROUPS)}",
    )

    args = parser.parse_args(argv)
    if args.command == "check" and args.only:
        valid = set(CHECK_GROUPS) | set(ACCEPTANCE_CHECKS)
        unknown = sorted({s.strip() for s in args.only.split(",") if s.strip()} - valid)
        if unknown:
            parser.error(f"未知检查: {unknown}; 可选组: {list(CHECK_GROUPS)}")
    if args.workers is not None and args.workers < 1:
        parser.error("--workers 必须 >= 1")
    return args


def main(argv: list[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    app = BoundsApp()
    try:
        return app.run(args)
    except ValueError as e:
        logging.error(f"参数错误: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
