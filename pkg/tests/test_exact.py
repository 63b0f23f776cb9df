"""Unit tests for the exact field, polynomial, and rank layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elsys.exact import (
    ExactMatrix,
    ExactNum,
    ExactPoly,
    I,
    ONE,
    SQRT2,
    field_arith,
    matrix_rank,
    poly_gcd,
    rational_square_root,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=24)


@st.composite
def exact_nums(draw, real_only=False):
    a = draw(rationals)
    b = draw(rationals)
    if real_only:
        return ExactNum(a, b)
    return ExactNum(a, b, draw(rationals), draw(rationals))


def small_polys(max_degree=4):
    return st.lists(exact_nums(), min_size=0, max_size=max_degree + 1).map(ExactPoly)


class TestFieldArithmetic:
    def test_sqrt2_conjugate_product_is_one(self):
        assert (ONE + SQRT2) * (SQRT2 - ONE) == ONE

    def test_divide_one_by_sqrt2(self):
        assert field_arith(1, SQRT2, "div") == ExactNum(0, Fraction(1, 2))

    def test_gaussian_norm(self):
        assert (ONE + I) * (ONE - I) == ExactNum(2)

    def test_inverse_of_silver_ratio(self):
        # 1/(1+sqrt2) = sqrt2 - 1
        assert (ONE + SQRT2).inverse() == SQRT2 - ONE

    def test_division_by_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ExactNum(0)

    def test_power(self):
        assert (ONE + SQRT2) ** 3 == ExactNum(7, 5)
        assert (ONE + SQRT2) ** -1 == SQRT2 - ONE
        assert I ** 2 == ExactNum(-1)

    def test_order_comparisons_are_exact(self):
        assert SQRT2 < ExactNum(Fraction(3, 2))
        assert SQRT2 > ExactNum(Fraction(7, 5))
        # 1393/985 is a convergent of sqrt2 from below, very close
        assert SQRT2 > ExactNum(Fraction(1393, 985))
        assert SQRT2 < ExactNum(Fraction(1607, 1136))
        with pytest.raises(TypeError):
            I < ONE  # noqa: B015

    @given(x=exact_nums())
    def test_multiplicative_inverse(self, x):
        if x.is_zero:
            return
        assert x * x.inverse() == ONE

    @given(x=exact_nums(), y=exact_nums(), z=exact_nums())
    def test_distributivity(self, x, y, z):
        assert x * (y + z) == x * y + x * z

    @given(x=exact_nums())
    def test_real_imag_decomposition(self, x):
        assert x == x.real() + I * x.imag()
        assert x.real().is_real and x.imag().is_real

    @given(x=exact_nums())
    def test_complex_conjugation_is_involutive(self, x):
        assert x.conjugate().conjugate() == x
        assert (x * x.conjugate()).is_real


class TestExactSqrt:
    def test_recognises_silver_squares(self):
        assert ExactNum(3, -2).exact_sqrt() == SQRT2 - ONE
        assert ExactNum(3, 2).exact_sqrt() == ONE + SQRT2

    def test_recognises_rational_and_sqrt2_multiples(self):
        assert ExactNum(Fraction(9, 4)).exact_sqrt() == ExactNum(Fraction(3, 2))
        assert ExactNum(Fraction(1, 2)).exact_sqrt() == ExactNum(0, Fraction(1, 2))
        assert ExactNum(2).exact_sqrt() == SQRT2
        assert ExactNum(0).exact_sqrt() == ExactNum(0)

    def test_returns_none_outside_field(self):
        assert ExactNum(3).exact_sqrt() is None
        assert ExactNum(1, 1).exact_sqrt() is None  # sqrt(1+sqrt2) not in field
        assert ExactNum(-1).exact_sqrt() is None

    @given(y=exact_nums(real_only=True))
    @settings(max_examples=60)
    def test_roundtrip_on_squares(self, y):
        root = (y * y).exact_sqrt()
        assert root is not None
        assert root * root == y * y
        assert root._real_sign() >= 0

    def test_rational_square_root(self):
        assert rational_square_root(Fraction(49, 64)) == Fraction(7, 8)
        assert rational_square_root(Fraction(2)) is None
        assert rational_square_root(Fraction(-4)) is None


def P(*coeffs):
    """Polynomial from low-order coefficients."""
    return ExactPoly(coeffs)


class TestPolynomials:
    def test_euclidean_division(self):
        num = P(-1, 0, 1)  # z^2 - 1
        den = P(-1, 1)  # z - 1
        q, r = divmod(num, den)
        assert q == P(1, 1) and r.is_zero

    def test_gcd_examples(self):
        assert poly_gcd(P(-1, 0, 1), P(-1, 1)) == P(-1, 1)
        assert poly_gcd(P(1, 0, 1), P(1, 1)) == P(1)
        shared = P(-I, 1)  # z - i
        other = P(ONE + SQRT2, 1)  # z + 1 + sqrt2
        assert poly_gcd(shared * other, shared) == shared

    def test_gcd_is_monic(self):
        g = poly_gcd(P(0, 0, 2), P(0, 2))  # gcd(2z^2, 2z)
        assert g == P(0, 1)

    def test_evaluation_and_derivative(self):
        p = P(1, -2, 3)  # 3z^2 - 2z + 1
        assert p(ExactNum(2)) == ExactNum(9)
        assert p.derivative() == P(-2, 6)
        assert p(I) == ExactNum(-2, 0, -2, 0)

    def test_zero_polynomial_degree(self):
        assert P().degree == -1
        assert P(0, 0).is_zero

    @given(a=small_polys(), b=small_polys())
    @settings(max_examples=60)
    def test_divmod_reconstructs(self, a, b):
        if b.is_zero:
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree

    @given(a=small_polys(3), b=small_polys(3))
    @settings(max_examples=40)
    def test_gcd_divides_both(self, a, b):
        g = poly_gcd(a, b)
        if g.is_zero:
            assert a.is_zero and b.is_zero
            return
        assert (a % g).is_zero and (b % g).is_zero


class TestRank:
    def test_identity_rank(self):
        eye = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
        assert matrix_rank(eye) == 6

    def test_zero_rank(self):
        assert matrix_rank([[0] * 6 for _ in range(12)]) == 0

    def test_dependent_rows(self):
        m = [
            [ONE, SQRT2, ExactNum(3)],
            [SQRT2, ExactNum(2), ExactNum(3) * SQRT2],  # sqrt2 times row 0
            [ONE, ONE, ONE],
        ]
        assert matrix_rank(m) == 2

    def test_rejects_complex_entries(self):
        with pytest.raises(ValueError):
            matrix_rank([[I]])

    @given(
        rows=st.lists(
            st.lists(exact_nums(real_only=True), min_size=3, max_size=3),
            min_size=2,
            max_size=4,
        ),
        scale=exact_nums(real_only=True),
    )
    @settings(max_examples=40)
    def test_rank_invariant_under_row_operation(self, rows, scale):
        base = matrix_rank(rows)
        modified = [list(r) for r in rows]
        # add scale * row0 to row1
        modified[1] = [v + scale * w for v, w in zip(modified[1], rows[0])]
        assert matrix_rank(modified) == base

    def test_matrix_container(self):
        m = ExactMatrix([[1, 2], [3, 4]])
        assert m.nrows == 2 and m.ncols == 2
        assert m.entry(1, 0) == ExactNum(3)
        with pytest.raises(ValueError):
            ExactMatrix([[1], [2, 3]])
