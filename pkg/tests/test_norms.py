"""sup 范数 oracle：ℓ∞ 立方、[0,1]² 正方形与复二元二次型。"""

import random
from fractions import Fraction

import mpmath
import pytest

from models.report import NormMethod
from norms.complex_quadratic import (
    complex_quadratic_norm,
    complex_quadratic_norm_sampled,
    complex_quadratic_norm_value,
)
from norms.linf import affine_variables, soundness_gap, supnorm_linf
from norms.square import square_candidates, supnorm_square_quadratic
from polycore.families import P3, ChoiKim, Q4k, Quadratic, make_family
from polycore.multiindex import multi_indices
from polycore.poly import HomogPoly, eval_poly
from utils.errors import InvalidInputError, UnsupportedDimensionError

TOL = 1e-10


class TestSupnormLinf:
    def test_single_monomial(self):
        assert abs(supnorm_linf(HomogPoly(2, 2, {(2, 0): 1})).value - 1) <= TOL

    def test_fixed_quadratic(self):
        P = make_family(Quadratic(1, -1, 1))
        norm = supnorm_linf(P, TOL)
        assert abs(norm.value - mpmath.mpf("1.25")) <= TOL
        assert abs(abs(eval_poly(P, norm.witness)) - norm.value) <= TOL

    def test_p3(self):
        norm = supnorm_linf(make_family(P3()), TOL)
        assert abs(norm.value - mpmath.mpf("2.5")) <= TOL
        # x₁、x₂ 在每一项里的次数都不超过 1
        assert affine_variables(make_family(P3()))[:2] == [0, 1]

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_q4k_has_unit_norm(self, k):
        assert abs(supnorm_linf(make_family(Q4k(k)), TOL).value - 1) <= TOL

    def test_odd_degree(self):
        # x³ − 3xy²，最大值 2 在 (−1, ±1) 处
        P = HomogPoly(2, 3, {(3, 0): 1, (1, 2): -3})
        assert abs(supnorm_linf(P, TOL).value - 2) <= TOL

    def test_pure_vertex_scan(self):
        # xy 两个变量都是仿射变量，不需要网格
        norm = supnorm_linf(HomogPoly(2, 2, {(1, 1): 1}), TOL)
        assert norm.method is NormMethod.VERTEX_REDUCED_SCAN
        assert norm.value == 1

    def test_zero_polynomial(self):
        assert supnorm_linf(HomogPoly.zero(3, 2)).value == 0

    def test_too_many_variables(self):
        P = HomogPoly(9, 1, {tuple(1 if i == 0 else 0 for i in range(9)): 1})
        with pytest.raises(UnsupportedDimensionError):
            supnorm_linf(P)

    def test_nonpositive_tol(self):
        with pytest.raises(InvalidInputError):
            supnorm_linf(HomogPoly(2, 2, {(2, 0): 1}), 0)

    def test_soundness_on_random_polynomials(self):
        rng = random.Random(11)
        for n, m in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)]:
            terms = {a: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for a in multi_indices(n, m)}
            P = HomogPoly(n, m, terms)
            if not P:
                continue
            norm = supnorm_linf(P, TOL)
            assert soundness_gap(P, norm, points=5000, seed=n * 10 + m) <= 1e-9

    def test_homogeneity(self):
        P = make_family(Quadratic(1, -1, 1))
        assert abs(supnorm_linf(P.scale(3), TOL).value - 3 * supnorm_linf(P, TOL).value) <= 10 * TOL

    @pytest.mark.parametrize("sign", [1, -1])
    def test_choi_kim_extreme_points_have_unit_norm(self, sign):
        for i in range(11):
            t = Fraction(1, 2) + Fraction(i, 20)
            norm = supnorm_linf(make_family(ChoiKim(t, sign)), TOL)
            assert abs(norm.value - 1) <= 10 * TOL, t

    def test_denser_grid_never_loses_value(self):
        rng = random.Random(29)
        for n, m in [(2, 4), (3, 3), (2, 5)]:
            terms = {a: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for a in multi_indices(n, m)}
            P = HomogPoly(n, m, terms)
            coarse = supnorm_linf(P, TOL, grid=64)
            fine = supnorm_linf(P, TOL, grid=128)
            assert fine.value >= coarse.value - TOL

    def test_near_ties_take_smallest_witness(self):
        # xz + yz − δxy：最大值 2+δ 在 (−1,−1,1)，(−1,−1,−1) 处为 2−δ，相差不到 tol
        delta = Fraction(1, 10 ** 12)
        P = HomogPoly(3, 2, {(1, 0, 1): 1, (0, 1, 1): 1, (1, 1, 0): -delta})
        norm = supnorm_linf(P, TOL)
        assert tuple(int(x) for x in norm.witness) == (-1, -1, -1)
        assert abs(norm.value - 2) <= TOL


class TestSquareNorm:
    def test_quartic_extreme_points_have_unit_norm(self):
        for a, b, c in [(1, 1, -3), (1, 1, -1), (1, 0, 0), (0, 1, 0)]:
            norm = supnorm_square_quadratic(a, b, c)
            assert norm.exact == 1

    def test_edge_vertex_candidate(self):
        assert (1, Fraction(1, 2)) in square_candidates(Fraction(1), Fraction(1), Fraction(-1))

    def test_interior_edge_maximum(self):
        # 两条边上的顶点都落在 [0,1] 之外，最大值在角 (1,1)：|1+1−4| = 2
        assert supnorm_square_quadratic(1, 1, -4).exact == 2

    def test_inexact_coefficients(self):
        norm = supnorm_square_quadratic(0.5, -1, 0)
        assert norm.exact is None
        assert abs(norm.value - 1) < 1e-30

    def test_matches_lifted_quartic(self):
        P = HomogPoly(2, 4, {(4, 0): 1, (0, 4): 1, (2, 2): -1})
        assert abs(supnorm_linf(P, TOL).value - supnorm_square_quadratic(1, 1, -1).value) <= TOL


class TestComplexQuadratic:
    @pytest.mark.parametrize(
        "a,b,c,expected",
        [
            (1, 1, 1, "3"),
            (0, 0, 1, "1"),
            (2, -1, 8, "9"),
            (1, -1, 0, "2"),
        ],
    )
    def test_closed_form(self, a, b, c, expected):
        assert complex_quadratic_norm_value(a, b, c) == mpmath.mpf(expected)

    def test_second_branch(self):
        # 2·√2
        assert abs(complex_quadratic_norm_value(1, -1, 2) - 2 * mpmath.sqrt(2)) < 1e-12

    @pytest.mark.parametrize("abc", [(1, 1, 1), (1, -1, 2), (2, -1, 8), (3, -2, 1), (1, -1, 2.8176)])
    def test_sampled_agrees(self, abc):
        exact = complex_quadratic_norm_value(*abc)
        assert abs(complex_quadratic_norm_sampled(*abc) / float(exact) - 1) < 1e-6

    def test_witness_attains_value(self):
        norm = complex_quadratic_norm(1, -1, 2)
        z1, z2 = norm.witness
        assert abs(abs(z1 ** 2 - z2 ** 2 + 2 * z1 * z2) - norm.value) < 1e-9

    def test_sampling_needs_points(self):
        with pytest.raises(InvalidInputError):
            complex_quadratic_norm_sampled(1, 1, 1, samples=4)
