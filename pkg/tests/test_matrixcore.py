import math
import random
from fractions import Fraction

import pytest

from hvf import matrixcore as mc
from hvf.combinat import binom
from hvf.numfield import FieldElement, varpi


def frac_matrix(rows):
    return mc.SquareMatrix([[Fraction(e) for e in row] for row in rows])


def random_fraction(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


# -- independent characteristic-polynomial oracle: cofactor expansion over
# a tiny polynomial ring in X (dense Fraction lists, ascending)


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def det_poly(rows):
    n = len(rows)
    if n == 1:
        return list(rows[0][0])
    total = [Fraction(0)]
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = poly_mul(rows[0][j], det_poly(minor))
        if j % 2:
            term = [-c for c in term]
        total = poly_add(total, term)
    return total


def char_poly_oracle(m):
    n = m.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            const = -Fraction(m[i, j])
            row.append([const, Fraction(1)] if i == j else [const])
        rows.append(row)
    out = det_poly(rows)
    return out + [Fraction(0)] * (n + 1 - len(out))


# -- pascal / creation ------------------------------------------------------


def test_pascal_displayed_rows():
    z = Fraction(5)
    p = mc.pascal(2, z)
    assert p.to_lists() == [[1, 0, 0], [z, 1, 0], [z * z, 2 * z, 1]]


def test_pascal_at_zero_is_identity():
    assert mc.pascal(4, Fraction(0)) == mc.identity(5)


def test_pascal_numeric_entries():
    p = mc.pascal(3, Fraction(2))
    assert p[3, 0] == 8
    assert p[3, 1] == 12


def test_pascal_group_law():
    rng = random.Random(5)
    for r in range(9):
        a, b = random_fraction(rng), random_fraction(rng)
        assert mc.pascal(r, a) * mc.pascal(r, b) == mc.pascal(r, a + b)


def test_creation_structure():
    a = mc.creation(2)
    assert a.to_lists() == [[0, 0, 0], [1, 0, 0], [0, 2, 0]]
    assert a * a * a == mc.zero_matrix(3)


def test_creation_power_entries():
    r = 4
    a = mc.creation(r)
    power = mc.identity(r + 1)
    for m in range(r + 1):
        for i in range(r + 1):
            for j in range(r + 1):
                want = (
                    Fraction(math.factorial(i), math.factorial(i - m))
                    if i - m == j and i - m >= 0
                    else 0
                )
                assert power[i, j] == want
        power = power * a


def test_creation_shifted_diagonal():
    m = mc.creation_shifted(3, Fraction(7))
    assert all(m[i, i] == 7 for i in range(4))
    assert m - mc.scalar_matrix(Fraction(7), 4) == mc.creation(3)


# -- char_poly ---------------------------------------------------------------


def test_char_poly_shifted_creation():
    # det(X - A_r(z)) = (X - z)^(r+1): degree r+1, not r
    for z in (Fraction(0), Fraction(3), Fraction(-2, 5)):
        got = mc.char_poly(mc.creation_shifted(2, z))
        want = [((-z) ** (3 - k)) * binom(3, k) for k in range(4)]
        assert got == want
        assert got == char_poly_oracle(mc.creation_shifted(2, z))


def test_char_poly_identity():
    got = mc.char_poly(mc.identity(3))
    assert got == [Fraction(-1), Fraction(3), Fraction(-3), Fraction(1)]


def test_char_poly_eps_s1():
    assert mc.char_poly(mc.epsilon_S(1)) == [Fraction(1), Fraction(0), Fraction(1)]


def test_char_poly_random_vs_oracle():
    rng = random.Random(17)
    for n in (2, 3, 4):
        m = mc.SquareMatrix([[random_fraction(rng) for _ in range(n)] for _ in range(n)])
        assert mc.char_poly(m) == char_poly_oracle(m)


def test_char_poly_over_field():
    w = varpi(5)
    m = mc.SquareMatrix([[w, 1], [1, w]])
    got = mc.char_poly(m)
    # det(X - m) = X^2 - 2wX + (w^2 - 1)
    assert got[2] == 1 and got[1] == -2 * w and got[0] == w * w - 1


# -- exchange / half-transposes / diag ---------------------------------------


def test_exchange_involution():
    for r in range(6):
        assert mc.exchange(r) * mc.exchange(r) == mc.identity(r + 1)


def test_half_transposes():
    # half_x(half_y(M)) = iota M iota is the 180-degree rotation in general;
    # it coincides with the transpose exactly on persymmetric matrices
    # (Toeplitz ones, for instance), which is the sense of M^t = iota M iota
    rng = random.Random(3)
    iota = mc.exchange(3)
    for _ in range(5):
        m = frac_matrix([[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)])
        rotated = mc.SquareMatrix([[m[3 - i, 3 - j] for j in range(4)] for i in range(4)])
        assert mc.half_x(mc.half_y(m)) == iota * m * iota == rotated
        t = [rng.randint(-9, 9) for _ in range(7)]
        toeplitz = frac_matrix([[t[3 + i - j] for j in range(4)] for i in range(4)])
        assert mc.half_x(mc.half_y(toeplitz)) == toeplitz.transpose()


def test_half_y_of_signed_diagonal():
    r = 2
    m = mc.half_y(mc.diag([(-1) ** (r - j) for j in range(r + 1)]))
    assert m[0, 2] == 1 and m[1, 1] == -1 and m[2, 0] == 1


def test_diag_shape_mismatch():
    with pytest.raises(ValueError):
        mc.diag([1, 2]) * mc.diag([1, 2, 3])


# -- nilpotent exponential and the multiplier pair ----------------------------


def test_nilpotent_exp_zero():
    assert mc.nilpotent_exp(Fraction(0), 5) == mc.identity(6)


def test_nilpotent_exp_depth_one():
    w = varpi(7)
    assert mc.nilpotent_exp(w, 1) == mc.SquareMatrix([[1, 0], [w, 1]])


def test_nilpotent_exp_equals_pascal():
    rng = random.Random(11)
    for r in range(7):
        c = random_fraction(rng)
        m = mc.nilpotent_exp(c, r)
        assert m == mc.pascal(r, c)
        # entrywise closed form c^(l-k) l!/((l-k)! k!)
        for l in range(r + 1):
            for k in range(l + 1):
                assert m[l, k] == c ** (l - k) * binom(l, k)


def test_epsilon_T_examples():
    assert mc.epsilon_T(3, 1) == frac_matrix([[1, 0], [1, 1]])
    w = varpi(5)
    e = mc.epsilon_T(5, 3)
    assert e[2, 0] == w * w  # reduces to w + 1 in Q(w_5)
    assert e[2, 0] == w + 1
    assert e.is_lower_triangular()


def test_epsilon_T_entry_normalization():
    # entry (l,k) * (l-k)! k! / l! recovers the pure power of w
    for mu, r in ((5, 4), (7, 6)):
        w = varpi(mu)
        e = mc.epsilon_T(mu, r)
        for l in range(r + 1):
            for k in range(l + 1):
                scale = Fraction(
                    math.factorial(l - k) * math.factorial(k), math.factorial(l)
                )
                assert e[l, k] * scale == w ** (l - k)


def test_epsilon_S_examples():
    assert mc.epsilon_S(1) == frac_matrix([[0, -1], [1, 0]])
    assert mc.epsilon_S(0) == mc.identity(1)
    s = mc.epsilon_S(1)
    assert s * s == mc.scalar_matrix(Fraction(-1), 2)


def test_multiplier_pair_invariants():
    pair = mc.MultiplierPair.build(7, 4)
    assert pair.epsT.is_lower_triangular()
    assert all(pair.epsT[i, i] == 1 for i in range(5))
    assert pair.epsS == mc.epsilon_S(4)


# -- symmetric powers ----------------------------------------------------------


def test_sym_power_identity_depth_one():
    g = frac_matrix([[1, 2], [3, 4]])
    assert mc.sym_power(1, g) == g


def test_sym_power_of_minus_identity():
    minus = frac_matrix([[-1, 0], [0, -1]])
    for r in range(1, 7):
        assert mc.sym_power(r, minus) == mc.scalar_matrix(Fraction((-1) ** r), r + 1)


def test_sym_power_depth_two_of_S():
    assert mc.sym_power(2, mc.epsilon_S(1)) == mc.epsilon_S(2)


def test_sym_power_is_multiplicative():
    rng = random.Random(23)
    for _ in range(5):
        g = frac_matrix([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        h = frac_matrix([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        assert mc.sym_power(3, g * h) == mc.sym_power(3, g) * mc.sym_power(3, h)


@pytest.mark.parametrize("mu,r", [(3, 1), (5, 4), (12, 10), (7, 3)])
def test_sym_theorem_spot(mu, r):
    assert mc.verify_sym_theorem(mu, r)


def test_presentation_base_case():
    # eps_1(R) = eps_1(S)^{-1} eps_1(T) = [[w, 1], [-1, 0]], cubed = -I at mu=3
    s = mc.epsilon_S(1).map(lambda e: Fraction(e))
    t = mc.epsilon_T(3, 1)
    rmat = s.inverse() * t
    assert rmat == mc.SquareMatrix([[FieldElement(3, [1]), 1], [-1, 0]])
    assert rmat**3 == mc.scalar_matrix(Fraction(-1), 2)


@pytest.mark.parametrize("mu,r", [(3, 1), (7, 3), (5, 0), (11, 6)])
def test_presentation_spot(mu, r):
    assert mc.verify_presentation(mu, r)


def test_matrix_inverse_round_trip():
    rng = random.Random(31)
    m = frac_matrix([[rng.randint(1, 5) + (4 if i == j else 0) for j in range(4)] for i in range(4)])
    assert m * m.inverse() == mc.identity(4)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        frac_matrix([[1, 2], [2, 4]]).inverse()


def test_matrix_pow_guard():
    with pytest.raises(ValueError):
        mc.identity(2) ** -1


def test_rendering_smoke():
    pair = mc.MultiplierPair.build(5, 2)
    js = mc.matrix_to_json(pair.epsT)
    assert js[1][0] == ["0/1", "1/1"]  # the generator itself
    assert mc.matrix_to_json(pair.epsS)[0][2] == "1/1"
    tex = mc.matrix_to_latex(pair.epsT)
    assert tex.startswith("\\begin{pmatrix}") and "\\varpi" in tex
