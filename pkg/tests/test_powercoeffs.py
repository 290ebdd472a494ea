"""(ax²+by²+cxy)^k 与 Q_{4k} 的展开系数。"""

import random
from fractions import Fraction

import pytest

from polycore.families import Q4k, make_family
from polycore.poly import HomogPoly, poly_pow
from powercoeffs.coeffs import CoeffFamily, CoeffVector, a_coeffs, b_coeffs
from utils.errors import ConsistencyError, InvalidInputError


class TestACoeffs:
    def test_degree_one(self):
        # j 从 y² 开始：(b, c, a)
        assert tuple(a_coeffs(2, 3, 5, 1)) == (3, 5, 2)

    def test_square(self):
        # (x² − y² + xy)² = x⁴ + 2x³y − x²y² − 2xy³ + y⁴
        coeffs = a_coeffs(1, -1, 1, 2)
        assert tuple(coeffs) == (1, -2, -1, 2, 1)
        assert coeffs.monomial(1) == (1, 3)

    @pytest.mark.parametrize("k", range(1, 13))
    def test_matches_poly_pow(self, k):
        rng = random.Random(k)
        a, b, c = (Fraction(rng.randint(-7, 7), rng.randint(1, 5)) for _ in range(3))
        base = HomogPoly(2, 2, {(2, 0): a, (0, 2): b, (1, 1): c})
        if not base:
            pytest.skip("零多项式")
        assert a_coeffs(a, b, c, k).to_poly() == poly_pow(base, k)

    def test_inexact_inputs(self):
        coeffs = a_coeffs(0.5, -0.5, 1.0, 3)
        assert len(coeffs) == 7
        assert coeffs.degree == 6

    def test_rejects_bad_k(self):
        with pytest.raises(InvalidInputError):
            a_coeffs(1, 1, 1, 0)


class TestBCoeffs:
    def test_small(self):
        assert tuple(b_coeffs(1)) == (1, -3, 1)
        assert tuple(b_coeffs(2)) == (1, -6, 11, -6, 1)

    @pytest.mark.parametrize("k", range(1, 13))
    def test_matches_q4k(self, k):
        assert b_coeffs(k).to_poly() == make_family(Q4k(k))

    @pytest.mark.parametrize("k", [1, 2, 5, 12, 64, 65, 100])
    def test_methods_agree(self, k):
        assert b_coeffs(k, "closed_form").entries == b_coeffs(k, "recurrence").entries

    def test_palindromic_and_integer(self):
        entries = b_coeffs(200).entries
        assert entries == entries[::-1]
        assert all(isinstance(e, int) for e in entries)

    def test_alternating_sum(self):
        # Q_{4k}(1, 1) = (1 + 1 − 3)^k = (−1)^k
        for k in (1, 2, 3, 10, 101):
            assert sum(b_coeffs(k).entries) == (-1) ** k

    def test_unknown_method(self):
        with pytest.raises(InvalidInputError):
            b_coeffs(3, "fft")

    def test_vector_validation(self):
        with pytest.raises(ConsistencyError):
            CoeffVector(1, (1, 2, 3), CoeffFamily.B)
        with pytest.raises(ConsistencyError):
            CoeffVector(2, (1, 2, 1), CoeffFamily.B)
