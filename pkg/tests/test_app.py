"""命令行入口与 Task 构建。"""

import json

import pytest

from app import EXIT_OK, EXIT_USAGE, main, parse_args
from models.report import SearchConfig
from tasks import bound_job, build_bound_task, build_check_task, build_table_task, table_jobs


class TestParseArgs:
    def test_bound_with_k(self):
        args = parse_args(["bound", "D4k", "--k", "2"])
        assert args.command == "bound"
        assert args.family == "D4k"
        assert args.k == 2
        assert args.format == "csv"

    def test_common_flags(self):
        args = parse_args(["table", "3", "--precision", "512", "--format", "json", "--dump-poly"])
        assert args.table == 3
        assert args.precision == 512
        assert args.format == "json"
        assert args.dump_poly

    def test_growth(self):
        assert parse_args(["growth", "--k-max", "50"]).k_max == 50

    def test_unknown_table(self):
        with pytest.raises(SystemExit):
            parse_args(["table", "2"])

    def test_unknown_check(self):
        with pytest.raises(SystemExit):
            parse_args(["check", "--only", "tables,bogus"])


class TestTasks:
    def test_table_jobs_follow_paper_rows(self):
        jobs = table_jobs(3)
        assert jobs[0].k == 2
        assert jobs[-1].k == 100
        assert all(j.family == "D4k" for j in jobs)

    def test_table_4_compares_c(self):
        assert {j.compare for j in table_jobs(4)} == {"c_of_m"}

    def test_bound_job_paper_values(self):
        assert bound_job("L2").paper_value == "1.7700"
        assert bound_job("D4k", m=40).paper_value == "3.7444e6"
        assert bound_job("L4k", k=10).paper_value == "20.81051033"
        assert bound_job("L2k", k=2).note
        assert bound_job("L2k", k=5).paper_value is None

    def test_task_chains(self):
        cfg = SearchConfig()
        names = [s.__class__.__name__ for s in build_bound_task("D3", None, None, cfg, dump=True).chain.steps]
        assert names == ["ComputeBounds", "DumpWitness", "BuildRecords", "WriteOutput"]
        assert build_table_task(1, cfg).name == "table_1"
        assert [s.__class__.__name__ for s in build_check_task(cfg).chain.steps] == ["RunChecks", "WriteCheckSummary"]

    def test_l2k_prints_exponent_note(self, caplog):
        with caplog.at_level("WARNING"):
            build_bound_task("L2k", 7, None, SearchConfig())
        assert any("[L2k]" in r.getMessage() for r in caplog.records)


class TestMain:
    def test_bound_csv(self, capsys):
        assert main(["bound", "D4k", "--k", "2", "--workers", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "family,m,bound,c_of_m,paper_value,rel_err,witness,precision_bits"
        assert lines[1].startswith("D_R,8,14.8699")

    def test_bound_json(self, capsys):
        assert main(["bound", "D3", "--format", "json", "--workers", "1"]) == EXIT_OK
        rows = json.loads(capsys.readouterr().out)
        assert rows[0]["m"] == 3
        assert rows[0]["bound"].startswith("2.0965")

    def test_dump_poly(self, capsys):
        assert main(["bound", "L4k", "--k", "1", "--dump-poly", "--workers", "1"]) == EXIT_OK
        assert "2,2 : -3/1" in capsys.readouterr().err

    def test_table_1(self, tmp_path):
        out = tmp_path / "table1.csv"
        assert main(["table", "1", "--workers", "1", "--out", str(out)]) == EXIT_OK
        lines = out.read_text(encoding="utf-8").strip().splitlines()
        assert len(lines) == 11
        assert lines[5].split(",")[2].startswith("20.8105")

    def test_missing_k_is_usage_error(self):
        assert main(["bound", "L4k"]) == EXIT_USAGE

    def test_k_for_fixed_family_is_usage_error(self):
        assert main(["bound", "L2", "--k", "3"]) == EXIT_USAGE

    def test_argparse_error(self):
        assert main(["bound", "NOPE"]) == EXIT_USAGE

    def test_bad_precision(self):
        assert main(["bound", "D3", "--precision", "16"]) == EXIT_USAGE

    def test_check_subset(self, capsys):
        assert main(["check", "--only", "complex_branches"]) == EXIT_OK
        summary = json.loads(capsys.readouterr().out)
        assert summary["failed"] == 0
        assert summary["passed"] > 0
