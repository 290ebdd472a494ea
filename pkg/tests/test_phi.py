"""Φ 泛函、对数域实数与比值报告。"""

import random
from fractions import Fraction

import mpmath
import pytest

from phi.functional import (
    D_ratio,
    L_ratio,
    bh_exponent,
    coeff_lp_norm,
    grouped_power_sum,
    phi_bruteforce,
    phi_value,
)
from phi.logreal import LogReal
from polycore.families import Quadratic, make_family
from polycore.multiindex import multi_indices
from polycore.poly import HomogPoly
from utils.errors import InvalidInputError, UnsupportedScaleError


def _random_poly(rng, n, m):
    terms = {a: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for a in multi_indices(n, m) if rng.random() < 0.7}
    P = HomogPoly(n, m, terms)
    return P if P else HomogPoly(n, m, {next(multi_indices(n, m)): 1})


class TestLogReal:
    def test_roundtrip(self):
        x = LogReal.from_value(mpmath.mpf("123.5"))
        assert abs(x.to_mpf() - mpmath.mpf("123.5")) < mpmath.mpf(10) ** -60

    def test_zero(self):
        assert LogReal.from_value(0).is_zero
        assert (LogReal.zero() * LogReal.from_value(5)).is_zero

    def test_huge_values(self):
        x = LogReal.from_value(10).pow(100)
        assert abs(x.log10 - 100) < mpmath.mpf(10) ** -60

    def test_root(self):
        assert abs(LogReal.from_value(8).root(3).to_mpf() - 2) < mpmath.mpf(10) ** -60

    def test_signs(self):
        x = LogReal.from_value(-3) * LogReal.from_value(-2)
        assert x.sign == 1
        assert (LogReal.from_value(-3) / 2).sign == -1

    def test_ordering(self):
        assert LogReal.from_value(-5) < LogReal.from_value(0) < LogReal.from_value(1e-30) < LogReal.from_value(2)

    def test_log_sum(self):
        log_sum = LogReal.log_sum([0, 0])
        with mpmath.workprec(256):
            assert abs(log_sum - mpmath.log(2)) < mpmath.mpf(10) ** -60

    def test_negative_pow(self):
        with pytest.raises(InvalidInputError):
            LogReal.from_value(-2).pow(Fraction(1, 2))

    def test_rel_diff(self):
        diff = LogReal.from_value(101).rel_diff(LogReal.from_value(100))
        with mpmath.workprec(256):
            assert abs(diff - mpmath.mpf("0.01")) < mpmath.mpf(10) ** -40


class TestPhi:
    def test_bh_exponent(self):
        assert bh_exponent(2) == Fraction(4, 3)
        assert bh_exponent(3) == Fraction(3, 2)
        assert bh_exponent(4) == Fraction(8, 5)

    def test_single_monomial(self):
        assert abs(phi_value(HomogPoly(2, 2, {(2, 0): 1})).to_mpf() - 1) < 1e-60

    def test_fixed_quadratic_value(self):
        # [1 + 1 + 2·(1/2)^{4/3}]^{3/4}
        value = phi_value(make_family(Quadratic(1, -1, 1)))
        with mpmath.workprec(256):
            expected = (2 + 2 * mpmath.mpf(2) ** (-mpmath.mpf(4) / 3)) ** (mpmath.mpf(3) / 4)
            assert abs(value.to_mpf() - expected) < mpmath.mpf(10) ** -60

    @pytest.mark.parametrize("n,m", [(2, 2), (2, 3), (3, 2), (2, 5), (3, 3), (4, 3), (5, 2), (2, 6)])
    def test_grouped_matches_bruteforce(self, n, m):
        rng = random.Random(n * 100 + m)
        for _ in range(5):
            P = _random_poly(rng, n, m)
            assert phi_value(P).rel_diff(phi_bruteforce(P)) < mpmath.mpf(10) ** -25

    def test_scaling(self):
        P = _random_poly(random.Random(3), 3, 3)
        assert phi_value(P.scale(7)).rel_diff(phi_value(P) * 7) < mpmath.mpf(10) ** -40

    def test_convexity(self):
        rng = random.Random(5)
        for _ in range(20):
            P, Q = _random_poly(rng, 3, 3), _random_poly(rng, 3, 3)
            mid = phi_value((P + Q).scale(Fraction(1, 2))).to_mpf()
            assert mid <= (phi_value(P).to_mpf() + phi_value(Q).to_mpf()) / 2 + mpmath.mpf(10) ** -20

    def test_zero_polynomial(self):
        assert phi_value(HomogPoly.zero(2, 3)).is_zero

    def test_degree_one_rejected(self):
        with pytest.raises(InvalidInputError):
            phi_value(HomogPoly(2, 1, {(1, 0): 1}))

    def test_bruteforce_scale_limit(self):
        P = HomogPoly(10, 8, {tuple([8] + [0] * 9): 1})
        with pytest.raises(UnsupportedScaleError):
            phi_bruteforce(P)

    def test_coeff_norm(self):
        # 三个 ±1 系数：3^{3/4}
        value = coeff_lp_norm(make_family(Quadratic(1, -1, 1)))
        with mpmath.workprec(256):
            assert abs(value.to_mpf() - mpmath.mpf(3) ** (mpmath.mpf(3) / 4)) < mpmath.mpf(10) ** -60

    def test_lp_norm_decreases_in_p(self):
        rng = random.Random(31)
        ps = [Fraction(1), Fraction(4, 3), Fraction(3, 2), Fraction(8, 5), Fraction(2), Fraction(3)]
        for _ in range(5):
            coeffs = [c for _, c in _random_poly(rng, 3, 3).terms]
            norms = [grouped_power_sum(((1, c) for c in coeffs), p, 256) for p in ps]
            with mpmath.workprec(256):
                for larger, smaller in zip(norms, norms[1:]):
                    assert smaller.to_mpf() <= larger.to_mpf() + mpmath.mpf(10) ** -60


class TestRatios:
    def test_fixed_quadratic_ratios(self):
        P = make_family(Quadratic(1, -1, 1))
        assert abs(float(L_ratio(P).value) / 1.728 - 1) < 5e-4
        assert abs(float(D_ratio(P).value) / 1.823 - 1) < 5e-4

    @pytest.mark.parametrize("lam", [3, Fraction(-2, 7)])
    def test_ratios_are_scale_invariant(self, lam):
        P = _random_poly(random.Random(37), 2, 3)
        assert L_ratio(P.scale(lam)).value.rel_diff(L_ratio(P).value) < 1e-8
        assert D_ratio(P.scale(lam)).value.rel_diff(D_ratio(P).value) < 1e-8

    def test_ratio_below_one_is_reported(self):
        # x² + y²：Φ = 2^{3/4} ≈ 1.68，范数 2
        report = L_ratio(HomogPoly(2, 2, {(2, 0): 1, (0, 2): 1}))
        assert report.value < 1
        assert report.abs_err is None

    def test_descriptor_label(self):
        spec = Quadratic(1, -1, 1)
        report = L_ratio(make_family(spec), descriptor=spec)
        assert report.witness["polynomial"] == spec.label()
        assert report.descriptor == spec

    def test_zero_polynomial(self):
        with pytest.raises(InvalidInputError):
            D_ratio(HomogPoly.zero(2, 2))
