"""下界生成器：文献常数与数值表的复算。"""

import mpmath
import pytest

from bounds.complex_search import dc2_ratio, f2, f2_feasible, lower_D_C2, paper_witness_value
from bounds.generators import (
    lower_D2,
    lower_D_3,
    lower_D_4k,
    lower_L2,
    lower_L4_E,
    lower_L_2k,
    lower_L_4k,
    optimal_t0,
    paper_l4_closed_form,
    working_precision,
)
from bounds.growth import default_ks, growth_analysis
from bounds.registry import BOUND_GENERATORS, resolve_k
from models.report import BoundFamily, NormMethod, NormResult, SearchConfig
from phi.functional import D_ratio, L_ratio
from polycore.families import make_family
from utils.errors import ConsistencyError, InvalidInputError


def rel(observed, expected: str) -> float:
    value = observed.to_mpf() if hasattr(observed, "to_mpf") else mpmath.mpf(observed)
    return float(abs(value / mpmath.mpf(expected) - 1))


@pytest.fixture(scope="module")
def cfg():
    return SearchConfig()


class TestSearchConfig:
    def test_defaults(self, cfg):
        assert cfg.precision_bits == 256
        assert cfg.grid_points == 4096

    def test_overrides_ignore_none(self):
        cfg = SearchConfig.from_settings(precision_bits=512, norm_tol=None)
        assert cfg.precision_bits == 512
        assert cfg.norm_tol == SearchConfig().norm_tol

    @pytest.mark.parametrize("field,value", [("grid_points", 8), ("tol_t", 0.0), ("precision_bits", 32)])
    def test_rejects_invalid(self, field, value):
        with pytest.raises(InvalidInputError):
            SearchConfig(**{field: value})

    def test_working_precision(self, cfg):
        assert working_precision(cfg, 8) == 256
        assert working_precision(cfg, 1000) == 2000
        assert working_precision(cfg, 12000, exact_coefficients=True) == 256 + 14 + 16
        fixed = SearchConfig(auto_raise_precision=False)
        assert working_precision(fixed, 1000) == 256


class TestDegreeTwo:
    def test_l2(self, cfg):
        report = lower_L2(cfg)
        assert report.family is BoundFamily.L_R
        assert rel(report.value, "1.7700") < 5e-4
        assert report.search["local_maxima"] >= 1

    def test_t0(self, cfg):
        t0 = optimal_t0(cfg.grid_points, cfg.tol_t, cfg.precision_bits)
        assert abs(t0 - mpmath.mpf("0.9147")) < 5e-4

    def test_d2(self, cfg):
        assert rel(lower_D2(cfg).value, "1.8374") < 5e-4

    def test_l2k_one_equals_l2(self, cfg):
        diff = lower_L_2k(1, cfg).value.to_mpf() - lower_L2(cfg).value.to_mpf()
        assert abs(diff) < 1e-9


class TestQuartic:
    def test_l4_subspace(self, cfg):
        report = lower_L4_E(cfg)
        assert rel(report.value, "2.371") < 5e-4
        assert report.witness["extreme_point"] == "xy3"
        assert all(mpmath.mpf(v) == 1 for v in report.extras["square_norms"].values())

    def test_l2k_two_matches_expanded_form(self, cfg):
        report = lower_L_2k(2, cfg)
        t0 = optimal_t0(cfg.grid_points, cfg.tol_t, cfg.precision_bits)
        with mpmath.workprec(report.precision_bits):
            assert abs(report.value.to_mpf() - paper_l4_closed_form(t0)) < mpmath.mpf(10) ** -20
        # 按公式复算约 1.9721，并不是印刷的 2.1595
        assert rel(report.value, "1.9721") < 5e-4
        assert abs(mpmath.mpf(report.extras["witness_norm"]) - 1) < 1e-9

    def test_q4_beats_squared_choi_kim(self, cfg):
        assert lower_L_4k(1, cfg).value > lower_L_2k(2, cfg).value

    def test_d4(self, cfg):
        assert rel(lower_D_4k(1, cfg).value, "3.610") < 5e-4


class TestQ4kFamily:
    @pytest.mark.parametrize("k,expected", [(2, "3.2725"), (3, "4.2441"), (4, "5.390975019"),
                                            (10, "20.81051033"), (50, "1.5654e5"), (100, "1.0972e10")])
    def test_table_1(self, cfg, k, expected):
        tol = 1e-3 if "e" in expected else 5e-4
        assert rel(lower_L_4k(k, cfg).value, expected) < tol

    @pytest.mark.parametrize("m,expected", [(8, "14.86998167"), (12, "66.39260961"),
                                            (40, "3.7444e6"), (400, "1.6718e69")])
    def test_table_3(self, cfg, m, expected):
        tol = 1e-3 if "e" in expected else 5e-4
        assert rel(lower_D_4k(m // 4, cfg).value, expected) < tol

    @pytest.mark.parametrize("m,expected", [(8, "1.40132479"), (200, "1.48509930"), (800, "1.49212548")])
    def test_table_4(self, cfg, m, expected):
        assert rel(lower_D_4k(m // 4, cfg).c_of_m, expected) < 5e-8

    def test_monotone(self, cfg):
        values = [lower_L_4k(k, cfg).value for k in range(1, 21)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_d_dominates_l(self, cfg):
        for k in (1, 2, 5, 20):
            assert lower_D_4k(k, cfg).value >= lower_L_4k(k, cfg).value

    def test_witness_norm_recorded(self, cfg):
        report = lower_L_4k(2, cfg)
        assert abs(mpmath.mpf(report.extras["witness_norm"]) - 1) < 1e-9

    def test_rejects_bad_k(self, cfg):
        with pytest.raises(InvalidInputError):
            lower_L_4k(0, cfg)

    def test_witness_norm_must_be_one(self, cfg, monkeypatch):
        monkeypatch.setattr(
            "bounds.generators.supnorm_linf",
            lambda P, tol: NormResult(mpmath.mpf(2), (mpmath.mpf(1), mpmath.mpf(1)), tol, NormMethod.GRID_POLISH),
        )
        with pytest.raises(ConsistencyError):
            lower_L_4k(2, cfg)


class TestWitnessRealizesBound:
    @pytest.mark.parametrize("generator,ratio", [(lower_L2, L_ratio), (lower_D2, D_ratio), (lower_L4_E, L_ratio)])
    def test_fixed_degree(self, cfg, generator, ratio):
        report = generator(cfg)
        recomputed = ratio(make_family(report.descriptor), cfg.norm_tol)
        assert recomputed.value.rel_diff(report.value) < 1e-8

    @pytest.mark.parametrize("k", [1, 2])
    def test_q4k(self, cfg, k):
        for generator, ratio in ((lower_L_4k, L_ratio), (lower_D_4k, D_ratio)):
            report = generator(k, cfg)
            recomputed = ratio(make_family(report.descriptor), cfg.norm_tol)
            assert recomputed.value.rel_diff(report.value) < 1e-8


class TestD3:
    def test_value(self, cfg):
        report = lower_D_3(cfg)
        expected = mpmath.mpf(12) ** (mpmath.mpf(2) / 3) / mpmath.mpf("2.5")
        assert abs(report.value.to_mpf() - expected) < 1e-9
        assert rel(report.value, "2.096") < 5e-4


class TestComplexSearch:
    def test_paper_witness(self):
        value = paper_witness_value()
        assert mpmath.mpf("1.1060") <= value <= mpmath.mpf("1.1067")

    def test_f2_requires_nonzero_ab(self):
        with pytest.raises(InvalidInputError):
            f2(0, -1, 1)

    def test_f2_matches_ratio_when_feasible(self):
        assert f2_feasible(1, -1, 2)
        assert abs(f2(1, -1, 2) - dc2_ratio(1, -1, 2)) < 1e-12

    def test_infeasible_point(self):
        assert not f2_feasible(1, 1, 1)
        assert not f2_feasible(1, -0.5, 10)

    def test_scale_invariance(self):
        for lam in (2, 10, mpmath.mpf(1) / 3):
            assert abs(f2(lam, -lam * mpmath.mpf("0.7"), lam * 2) - f2(1, mpmath.mpf("0.7") * -1, 2)) < 1e-12

    def test_search(self, cfg):
        report = lower_D_C2(cfg)
        value = report.value.to_mpf()
        assert mpmath.mpf("1.1060") <= value <= mpmath.mpf("1.1067")
        assert report.extras["certificate"]["below_cap"]
        assert report.family is BoundFamily.D_C
        assert abs(dc2_ratio(1, report.witness["b"], report.witness["c"]) - value) < 1e-9


class TestGrowth:
    def test_ratio_approaches_five_quarters(self, cfg):
        table = growth_analysis(100, cfg, ks=[100])
        assert abs(table.rows[-1].l_ratio - mpmath.mpf("1.25")) < 0.01

    def test_default_ks(self):
        assert default_ks(10) == list(range(1, 11))
        ks = default_ks(3000)
        assert ks[:50] == list(range(1, 51))
        assert 150 in ks and 3000 in ks and 175 not in ks

    def test_rejects_small_k_max(self, cfg):
        with pytest.raises(InvalidInputError):
            growth_analysis(1, cfg)

    def test_frame(self, cfg):
        df = growth_analysis(3, cfg).to_frame()
        assert list(df["k"]) == [1, 2, 3]


class TestRegistry:
    def test_all_families(self):
        assert set(BOUND_GENERATORS) == {"L2", "D2", "L4E", "L2k", "L4k", "D3", "D4k", "DC2"}

    def test_resolve_from_degree(self):
        assert resolve_k("L4k", m=8) == 2
        assert resolve_k("L2k", m=6) == 3
        assert resolve_k("D3") is None

    @pytest.mark.parametrize(
        "family,k,m",
        [("L4k", None, 6), ("L2", 1, None), ("L4k", 1, 4), ("D4k", None, None), ("L4k", 0, None), ("XX", 1, None)],
    )
    def test_resolve_rejects(self, family, k, m):
        with pytest.raises(InvalidInputError):
            resolve_k(family, k, m)
