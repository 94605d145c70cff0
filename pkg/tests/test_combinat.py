import random
from fractions import Fraction

import pytest

from hvf.combinat import (
    binom,
    bracket,
    bracket_row,
    check_coeff_equiv,
    check_vandermonde_like,
    forward_binomial,
    inverse_binomial,
    rising,
    vandermonde_like,
)

# coefficient triangle for r = 7: row l lists the polynomial coefficients,
# ascending, with the common denominator pulled out front
TABLE_R7 = {
    0: (1, [1, 1, 1, 1, 1, 1, 1, 1]),
    1: (7, [1, 2, 3, 4, 5, 6, 7]),
    2: (21, [1, 3, 6, 10, 15, 21]),
    3: (35, [1, 4, 10, 20, 35]),
    4: (35, [1, 5, 15, 35]),
    5: (21, [1, 6, 21]),
    6: (7, [1, 7]),
    7: (1, [1]),
}


def test_binom_basics():
    assert binom(7, 3) == 35
    assert binom(5, 0) == 1
    assert binom(5, 6) == 0
    assert binom(5, -1) == 0
    assert binom(-2, 0) == 0  # zero-extension below the diagonal


def test_rising_examples():
    assert rising(3, 2) == 6
    assert rising(Fraction(1, 2), 3) == Fraction(1 * 3 * 5, 2 * 2 * 2 * 6)
    assert rising(5, 0) == 1


def test_rising_vs_binom_identity():
    for z in range(11):
        for k in range(11):
            assert rising(z + 1, k) == binom(z + k, k)


def test_bracket_values():
    assert bracket(7, 1, 0) == Fraction(1, 7)
    assert bracket(7, 2, 0) == Fraction(1, 21)
    for r in range(9):
        for m in range(r + 1):
            assert bracket(r, 0, m) == 1


def test_bracket_domain():
    with pytest.raises(ValueError):
        bracket(3, 4, 0)
    with pytest.raises(ValueError):
        bracket(3, 1, -1)


def test_bracket_matches_table_r7():
    for l, (den, nums) in TABLE_R7.items():
        assert bracket_row(7, l) == [Fraction(c, den) for c in nums]


def test_coeff_equiv_exhaustive():
    assert check_coeff_equiv(6)


def test_coeff_equiv_spot():
    # at (r,l,m,p) = (7,1,1,0) both sides reduce to bracket(7,1,1)
    lhs = rising(2, 0) * bracket(7, 1, 1)
    rhs = binom(6, 1) * bracket(7, 2, 0)
    assert lhs == rhs == bracket(7, 1, 1)
    # degenerate l = r: only m = 0 is admissible and both sides agree
    assert rising(1, 2) * bracket(5, 5, 2) == binom(0, 0) * bracket(5, 5, 2)


def test_coeff_equiv_m_plus_one_variant_fails():
    # the subscript-(m+1) variant of the identity agrees only at p = 1
    r, l, m, p = 3, 1, 0, 0
    assert rising(m + 1, p) * bracket(r, l, m + 1) != binom(r - l, m) * bracket(r, l + m, p)
    p = 1
    assert rising(m + 1, p) * bracket(r, l, m + 1) == binom(r - l, m) * bracket(r, l + m, p)


def test_vandermonde_like_trivial_k0():
    for y in range(8):
        for p in range(8):
            lhs, rhs = vandermonde_like(0, y, p)
            assert lhs == rhs == binom(y, p)


def test_vandermonde_like_spot():
    lhs, rhs = vandermonde_like(2, 5, 3)
    assert lhs == rhs == 3


def test_vandermonde_like_exhaustive():
    assert check_vandermonde_like(8)


def test_vandermonde_fixed_sign_variant_fails():
    # with the alternating sign replaced by a fixed (-1)^k factor the
    # identity breaks immediately
    k, y, p = 1, 5, 3
    fixed = (-1) ** k * sum(binom(k, l) * binom(y - l, p) for l in range(k + 1))
    _, rhs = vandermonde_like(k, y, p)
    assert fixed != rhs


def test_vandermonde_rejects_negative():
    with pytest.raises(ValueError):
        vandermonde_like(-1, 2, 3)


def test_binomial_transform_round_trip():
    rng = random.Random(99)
    for _ in range(20):
        seq = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(9)]
        assert inverse_binomial(forward_binomial(seq)) == seq
        assert forward_binomial(inverse_binomial(seq)) == seq
