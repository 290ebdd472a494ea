"""验收检查的注册、筛选与失败处理。"""

import pytest

from checks.acceptance import ACCEPTANCE_CHECKS, CHECK_GROUPS, run_checks, select_checks
from models.report import SearchConfig


class TestSelectChecks:
    def test_every_group_has_checks(self):
        groups = {group for group, _ in ACCEPTANCE_CHECKS.values()}
        assert groups == set(CHECK_GROUPS)

    def test_all_by_default(self):
        assert select_checks() == list(ACCEPTANCE_CHECKS)

    def test_by_group(self):
        names = select_checks(["tables"])
        assert names == ["table_1", "table_3", "table_4"]

    def test_by_name_and_group(self):
        names = select_checks(["complex", "d3_constant"])
        assert "d3_constant" in names
        assert "complex_branches" in names
        assert "table_1" not in names

    def test_unknown(self):
        with pytest.raises(ValueError):
            select_checks(["nope"])


class TestRunChecks:
    def test_complex_branches_pass(self):
        results = run_checks(SearchConfig(), ["complex_branches"])
        assert results
        assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]

    def test_headline_fixed_quadratic(self):
        results = run_checks(SearchConfig(), ["fixed_quadratic", "d3_constant", "d4_constant"])
        assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]

    def test_exception_becomes_failure(self, monkeypatch):
        def broken(cfg):
            raise RuntimeError("kaput")

        monkeypatch.setitem(ACCEPTANCE_CHECKS, "broken", ("properties", broken))
        results = run_checks(SearchConfig(), ["broken"])
        assert len(results) == 1
        assert not results[0].passed
        assert "kaput" in results[0].detail
