import math
import random
from fractions import Fraction

import mpmath
import pytest

from hvf.numfield import (
    FieldElement,
    IntPolynomial,
    embed,
    fe_add,
    fe_inv,
    fe_mul,
    minimal_polynomial,
    varpi,
    varpi_numeric,
)


def totient(n):
    count = 0
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            count += 1
    return count


@pytest.mark.parametrize(
    "mu,coeffs",
    [
        (3, [-1, 1]),
        (4, [-2, 0, 1]),
        (5, [-1, -1, 1]),
        (6, [-3, 0, 1]),
        (7, [1, -2, -1, 1]),
    ],
)
def test_minimal_polynomial_known(mu, coeffs):
    assert minimal_polynomial(mu) == IntPolynomial(coeffs)


def test_minimal_polynomial_degree_and_root():
    for mu in range(3, 25):
        m = minimal_polynomial(mu)
        assert m.is_monic()
        assert m.degree == totient(2 * mu) // 2
        # the intended root, numerically
        assert abs(m(2.0 * math.cos(math.pi / mu))) < 1e-9 * max(
            abs(c) for c in m.coeffs
        )


def test_minimal_polynomial_rejects_small_mu():
    with pytest.raises(ValueError):
        minimal_polynomial(2)


def test_generator_satisfies_minimal_polynomial():
    for mu in range(3, 25):
        m = minimal_polynomial(mu)
        w = varpi(mu)
        acc = FieldElement.zero(mu)
        for c in reversed(m.coeffs):
            acc = acc * w + c
        assert acc.is_zero()


def test_embedding_matches_cosine():
    for mu in range(3, 25):
        assert abs(varpi(mu).embed() - 2 * math.cos(math.pi / mu)) < 1e-12


def test_embedding_examples():
    assert abs(varpi(5).embed() - 1.6180339887498949) < 1e-12  # golden ratio
    assert varpi(3).embed() == 1.0
    assert abs(varpi(6).embed() - math.sqrt(3)) < 1e-12


def test_embedding_high_precision():
    w = varpi(7)
    got = w.embed(50)
    with mpmath.workdps(60):
        want = 2 * mpmath.cos(mpmath.pi / 7)
        assert abs(got - want) < mpmath.mpf(10) ** -48


def test_embed_rejects_bad_precision():
    with pytest.raises(ValueError):
        varpi(5).embed(0)


def test_reduction_examples():
    w5 = varpi(5)
    assert w5 * w5 == w5 + 1  # x^2 = x + 1 mod the mu=5 minimal polynomial
    w4 = varpi(4)
    assert w4 * w4 == 2
    assert fe_inv(w4) == FieldElement(4, [0, Fraction(1, 2)])
    assert fe_mul(w4, fe_inv(w4)) == 1


def test_mixed_mu_rejected():
    with pytest.raises(ValueError):
        fe_add(varpi(5), varpi(7))


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        FieldElement.zero(9).inverse()


def random_element(rng, mu, d):
    return FieldElement(
        mu, [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(d)]
    )


def test_field_axioms_randomized():
    rng = random.Random(20240811)
    for mu in (4, 5, 7, 12):
        d = minimal_polynomial(mu).degree
        for _ in range(25):
            a = random_element(rng, mu, d)
            b = random_element(rng, mu, d)
            c = random_element(rng, mu, d)
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inverse() == 1
                assert (1 / a) * a == 1


def test_scalar_interop():
    w = varpi(5)
    assert 2 * w == w + w
    assert w - Fraction(1, 2) == w + Fraction(-1, 2)
    assert (w**0) == 1
    assert w**-1 == w.inverse()
    assert 1 - w == -(w - 1)


def test_embedding_linear_in_coeffs():
    rng = random.Random(7)
    for _ in range(10):
        a = random_element(rng, 7, 3)
        b = random_element(rng, 7, 3)
        assert abs((a + b).embed() - (a.embed() + b.embed())) < 1e-10
        assert abs((a * b).embed() - a.embed() * b.embed()) < 1e-9


def test_json_round_trip():
    a = FieldElement(5, [Fraction(3, 7), Fraction(-2, 5)])
    assert a.to_json() == ["3/7", "-2/5"]
    assert FieldElement.from_json(5, a.to_json()) == a


def test_varpi_numeric_guard():
    with pytest.raises(ValueError):
        varpi_numeric(1)
