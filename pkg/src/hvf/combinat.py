"""Binomial, rising-binomial, and bracket coefficients, with brute-force
verifiers for the combinatorial identities the depth-lowering machinery
relies on.

All values are exact (int or Fraction); nothing here ever touches floats.
"""

from __future__ import annotations

import math
from fractions import Fraction


def binom(n: int, k: int) -> int:
    """Binomial coefficient with the combinatorial zero-extension.

    Returns 0 for k < 0, for k > n (n >= 0), and for negative n.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def rising(z, k: int) -> Fraction:
    """Rising binomial z(z+1)...(z+k-1)/k!, generalized to rational z."""
    if k < 0:
        return Fraction(0)
    z = Fraction(z)
    acc = Fraction(1)
    for i in range(k):
        acc *= z + i
    return acc / math.factorial(k)


def bracket(r: int, l: int, m: int) -> Fraction:
    """The coefficient (r-l)!/r! * (m+l)!/m!."""
    if not 0 <= l <= r:
        raise ValueError(f"bracket requires 0 <= l <= r, got l={l}, r={r}")
    if m < 0:
        raise ValueError(f"bracket requires m >= 0, got m={m}")
    return Fraction(math.factorial(r - l), math.factorial(r)) * Fraction(
        math.factorial(m + l), math.factorial(m)
    )


def bracket_row(r: int, l: int):
    """Coefficients of the degree r-l polynomial sum_m bracket(r,l,m) z^m."""
    return [bracket(r, l, m) for m in range(r - l + 1)]


def check_coeff_equiv(bound: int) -> bool:
    """Brute-force the bracket/binomial exchange identity up to ``bound``.

    Checks rising(m+1, p) * bracket(r, l, m+p) == binom(r-l, m) * bracket(r, l+m, p)
    for all 0 <= l <= r <= bound, 0 <= m <= r-l, 0 <= p <= bound.  The bound
    m <= r-l is forced: beyond it the right side vanishes while the left does
    not.  (The identity is sometimes printed with subscript m+1 in place of
    m+p; only the m+p form survives brute force, the two agree at p=1.)
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for r in range(bound + 1):
        for l in range(r + 1):
            for m in range(r - l + 1):
                for p in range(bound + 1):
                    lhs = rising(m + 1, p) * bracket(r, l, m + p)
                    rhs = binom(r - l, m) * bracket(r, l + m, p)
                    if lhs != rhs:
                        return False
    return True


def vandermonde_like(k: int, y: int, p: int):
    """Both sides of the alternating Vandermonde-style identity.

    Returns (sum_{l=0}^{k} (-1)^l binom(k,l) binom(y-l,p),  binom(y-k, y-p)).
    The sign alternates with the summation index l (the printed form with a
    fixed (-1)^k fails brute force).  The two sides agree whenever k <= y,
    for every p >= 0.
    """
    if min(k, y, p) < 0:
        raise ValueError("k, y, p must be nonnegative")
    lhs = sum((-1) ** l * binom(k, l) * binom(y - l, p) for l in range(k + 1))
    rhs = binom(y - k, y - p)
    return Fraction(lhs), Fraction(rhs)


def check_vandermonde_like(bound: int) -> bool:
    """Exhaustively check the identity for all k <= y <= bound, p <= bound."""
    for y in range(bound + 1):
        for k in range(y + 1):
            for p in range(bound + 1):
                lhs, rhs = vandermonde_like(k, y, p)
                if lhs != rhs:
                    return False
    return True


def forward_binomial(seq):
    """Binomial transform v_n = sum_i binom(n,i) u_i."""
    return [sum(binom(n, i) * u for i, u in enumerate(seq[: n + 1])) for n in range(len(seq))]


def inverse_binomial(seq):
    """Alternating inverse u_n = sum_j (-1)^(n-j) binom(n,j) v_j."""
    return [
        sum((-1) ** (n - j) * binom(n, j) * v for j, v in enumerate(seq[: n + 1]))
        for n in range(len(seq))
    ]
