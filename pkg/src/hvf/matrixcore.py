"""Exact (r+1)x(r+1) matrix algebra over a coefficient domain.

Entries may be ints, Fractions, FieldElements, or complex floats; the
operations are generic over any domain whose elements support +, -, * and
(for inverses and characteristic polynomials) division.  Dense storage:
the matrices of interest are small (r rarely beyond a few dozen).

Built on top of this are the structured matrices the multiplier system is
made of: generalized Pascal matrices, the creation matrix and its truncated
exponential, exchange/diagonal matrices and their half-transposes, the
multiplier pair (eps_T, eps_S), and symmetric powers of 2x2 matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinat import binom
from .numfield import FieldElement, varpi


def _promote_exact(e):
    return Fraction(e) if isinstance(e, int) else e


class SquareMatrix:
    """Immutable dense square matrix over a duck-typed coefficient domain."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ValueError("rows must form a nonempty square array")
        self.dim = n
        self.rows = rows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"SquareMatrix({[list(r) for r in self.rows]})"

    def __add__(self, other):
        self._check_dim(other)
        return SquareMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        self._check_dim(other)
        return SquareMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return SquareMatrix([[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            self._check_dim(other)
            n = self.dim
            cols = tuple(zip(*other.rows))
            return SquareMatrix(
                [
                    [_dot(self.rows[i], cols[j]) for j in range(n)]
                    for i in range(n)
                ]
            )
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        return SquareMatrix([[s * a for a in row] for row in self.rows])

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("matrix powers take a nonnegative integer exponent")
        result = identity(self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def apply(self, vector):
        """Matrix times column vector (any sequence); returns a list."""
        if len(vector) != self.dim:
            raise ValueError("dimension mismatch in matrix-vector product")
        return [_dot(row, vector) for row in self.rows]

    def transpose(self):
        return SquareMatrix(tuple(zip(*self.rows)))

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.dim):
            acc = acc + self.rows[i][i]
        return acc

    def map(self, fn):
        return SquareMatrix([[fn(a) for a in row] for row in self.rows])

    def is_lower_triangular(self) -> bool:
        return all(
            self.rows[i][j] == 0 for i in range(self.dim) for j in range(i + 1, self.dim)
        )

    def inverse(self):
        """Exact inverse by Gauss-Jordan elimination (exact domains only)."""
        n = self.dim
        aug = [
            [_promote_exact(a) for a in row]
            + [_promote_exact(1 if i == j else 0) for j in range(n)]
            for i, row in enumerate(self.rows)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [a / p for a in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return SquareMatrix([row[n:] for row in aug])

    def to_lists(self):
        return [list(row) for row in self.rows]

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")


def _dot(row, col):
    it = zip(row, col)
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def identity(n: int) -> SquareMatrix:
    return SquareMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zero_matrix(n: int) -> SquareMatrix:
    return SquareMatrix([[0] * n for _ in range(n)])


def scalar_matrix(s, n: int) -> SquareMatrix:
    return SquareMatrix([[s if i == j else 0 for j in range(n)] for i in range(n)])


# -- structured constructors ----------------------------------------------


def pascal(r: int, z) -> SquareMatrix:
    """Generalized Pascal matrix: entry (i,j) = binom(i,j) z^(i-j) for i >= j."""
    if r < 0:
        raise ValueError("r must be >= 0")
    rows = []
    for i in range(r + 1):
        row = []
        for j in range(r + 1):
            if j > i:
                row.append(0)
            elif j == i:
                row.append(1)
            else:
                row.append(binom(i, j) * z ** (i - j))
        rows.append(row)
    return SquareMatrix(rows)


def creation(r: int) -> SquareMatrix:
    """Subdiagonal matrix with entries 1..r; nilpotent of index r+1."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return SquareMatrix(
        [[i if j == i - 1 else 0 for j in range(r + 1)] for i in range(r + 1)]
    )


def creation_shifted(r: int, z) -> SquareMatrix:
    """The creation matrix with z added along the diagonal."""
    return SquareMatrix(
        [
            [z if j == i else (i if j == i - 1 else 0) for j in range(r + 1)]
            for i in range(r + 1)
        ]
    )


def exchange(r: int) -> SquareMatrix:
    """Antidiagonal matrix of ones (an involution)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return SquareMatrix(
        [[1 if j == r - i else 0 for j in range(r + 1)] for i in range(r + 1)]
    )


def diag(values) -> SquareMatrix:
    values = list(values)
    n = len(values)
    return SquareMatrix(
        [[values[i] if j == i else 0 for j in range(n)] for i in range(n)]
    )


def half_x(m: SquareMatrix) -> SquareMatrix:
    """Left half-transpose iota * M."""
    return exchange(m.dim - 1) * m


def half_y(m: SquareMatrix) -> SquareMatrix:
    """Right half-transpose M * iota."""
    return m * exchange(m.dim - 1)


def nilpotent_exp(c, r: int) -> SquareMatrix:
    """Truncated exponential sum_{m=0}^{r} c^m A_r^m / m!.

    The series terminates because A_r^{r+1} = 0; the result equals the
    generalized Pascal matrix P_r(c).
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    a = creation(r)
    result = identity(r + 1)
    power = identity(r + 1)
    for m in range(1, r + 1):
        power = power * a
        result = result + power.scale(c**m * Fraction(1, math.factorial(m)))
    return result


def char_poly(m: SquareMatrix):
    """Characteristic polynomial det(X*I - M), monic, ascending coefficients.

    Uses the Faddeev-LeVerrier recurrence, which needs only ring operations
    plus division by integers, so it runs over Q and over Q(w) alike.
    """
    n = m.dim
    a = m.map(_promote_exact)
    coeffs = [None] * (n + 1)
    coeffs[n] = _promote_exact(1)
    mk = a
    ck = _promote_exact(1)
    for k in range(1, n + 1):
        if k > 1:
            mk = a * (mk + scalar_matrix(ck, n))
        ck = -mk.trace() * Fraction(1, k)
        coeffs[n - k] = ck
    return coeffs


# -- the multiplier system --------------------------------------------------


def epsilon_T(mu: int, r: int) -> SquareMatrix:
    """Unipotent lower-triangular T-multiplier exp(w * A_r) over Q(w)."""
    if mu < 3:
        raise ValueError(f"mu must be >= 3, got {mu}")
    return nilpotent_exp(varpi(mu), r)


def epsilon_S(r: int) -> SquareMatrix:
    """Signed antidiagonal S-multiplier: entry (i, r-i) = (-1)^(r-i).

    The upper-right entry is (-1)^r; see ``s_transform_multiplier`` in the
    numeric module for the opposite-parity normalization that the analytic
    S transformation of the component vector obeys.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    return SquareMatrix(
        [
            [(-1) ** (r - i) if j == r - i else 0 for j in range(r + 1)]
            for i in range(r + 1)
        ]
    )


@dataclass(frozen=True)
class MultiplierPair:
    """The pair (eps_T, eps_S) for given mu and depth r."""

    mu: int
    r: int
    epsT: SquareMatrix
    epsS: SquareMatrix

    @classmethod
    def build(cls, mu: int, r: int) -> "MultiplierPair":
        epsT = epsilon_T(mu, r)
        epsS = epsilon_S(r)
        if not epsT.is_lower_triangular() or any(
            epsT[i, i] != 1 for i in range(r + 1)
        ):
            raise AssertionError("eps_T must be unipotent lower-triangular")
        for i in range(r + 1):
            for j in range(r + 1):
                want = (-1) ** (r - i) if j == r - i else 0
                if epsS[i, j] != want:
                    raise AssertionError("eps_S must be the signed antidiagonal")
        return cls(mu=mu, r=r, epsT=epsT, epsS=epsS)


def sym_power(r: int, g: SquareMatrix) -> SquareMatrix:
    """Matrix of the r-th symmetric power of a 2x2 matrix g.

    Computed in the rescaled monomial basis v_k = e^(r-k) f^k / ((r-k)! k!)
    (k = 0..r), by expanding (g e)^(r-k) (g f)^k and collecting w-coordinates
    with exact multinomial bookkeeping.  With this ordering sym_power(1, g)
    is g itself, and the symmetric powers of the depth-one multipliers
    reproduce eps_T and eps_S on the nose.
    """
    if g.dim != 2:
        raise ValueError("sym_power expects a 2x2 matrix")
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return identity(1)
    a, b = g[0, 0], g[0, 1]
    c, d = g[1, 0], g[1, 1]
    pe = _binomial_powers(a, c, r)  # pe[i][t]: coeff of e^(i-t) f^t in (a e + c f)^i
    pf = _binomial_powers(b, d, r)
    rows = [[None] * (r + 1) for _ in range(r + 1)]
    for k in range(r + 1):
        left, right = pe[r - k], pf[k]
        col = [0] * (r + 1)
        for t, lt in enumerate(left):
            for s, rs in enumerate(right):
                col[t + s] = col[t + s] + lt * rs
        denom = math.factorial(r - k) * math.factorial(k)
        for u in range(r + 1):
            scale = Fraction(math.factorial(r - u) * math.factorial(u), denom)
            rows[u][k] = col[u] * scale
    return SquareMatrix(rows)


def _binomial_powers(x, y, r):
    """Rows i=0..r of coefficients of (x e + y f)^i over monomials e^(i-t) f^t."""
    rows = [[1]]
    for i in range(1, r + 1):
        prev = rows[-1]
        row = [0] * (i + 1)
        for t, p in enumerate(prev):
            row[t] = row[t] + p * x
            row[t + 1] = row[t + 1] + p * y
        rows.append(row)
    return rows


def verify_sym_theorem(mu: int, r: int) -> bool:
    """Exact check that sym_power(r, eps_1) reproduces (eps_T(mu,r), eps_S(r)).

    At r = 0 both symmetric powers collapse to the trivial representation.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return epsilon_T(mu, 0) == identity(1) and epsilon_S(0) == identity(1)
    e1t = epsilon_T(mu, 1)
    e1s = epsilon_S(1)
    return sym_power(r, e1t) == epsilon_T(mu, r) and sym_power(r, e1s) == epsilon_S(r)


def verify_presentation(mu: int, r: int) -> bool:
    """Exact check of the defining relations in the depth-r multiplier.

    eps_S^2 = (-1)^r I and (eps_S^{-1} eps_T)^mu = (-1)^r I over Q(w).
    """
    if mu < 3:
        raise ValueError(f"mu must be >= 3, got {mu}")
    n = r + 1
    sign = scalar_matrix(Fraction((-1) ** r), n)
    s = epsilon_S(r).map(_promote_exact)
    t = epsilon_T(mu, r)
    if s * s != sign:
        return False
    rmat = s.inverse() * t
    return rmat**mu == sign


# -- rendering -------------------------------------------------------------


def entry_to_str(e) -> str:
    if isinstance(e, Fraction):
        return f"{e.numerator}/{e.denominator}"
    if isinstance(e, int):
        return f"{e}/1"
    if isinstance(e, FieldElement):
        return str(e)
    return str(e)


def matrix_to_json(m: SquareMatrix):
    """Entries as "p/q" strings, or FieldElement coefficient arrays."""
    out = []
    for row in m.rows:
        jrow = []
        for e in row:
            if isinstance(e, FieldElement):
                jrow.append(e.to_json())
            elif isinstance(e, (int, Fraction)):
                f = Fraction(e)
                jrow.append(f"{f.numerator}/{f.denominator}")
            else:
                jrow.append(str(e))
        out.append(jrow)
    return out


def matrix_to_latex(m: SquareMatrix) -> str:
    lines = [" & ".join(_latex_entry(e) for e in row) for row in m.rows]
    body = " \\\\\n".join(lines)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"


def _latex_entry(e) -> str:
    if isinstance(e, int):
        return str(e)
    if isinstance(e, Fraction):
        if e.denominator == 1:
            return str(e.numerator)
        return f"\\tfrac{{{e.numerator}}}{{{e.denominator}}}"
    if isinstance(e, FieldElement):
        terms = []
        for i, c in enumerate(e.coeffs()):
            if c == 0:
                continue
            mono = "" if i == 0 else ("\\varpi" if i == 1 else f"\\varpi^{{{i}}}")
            if i > 0 and abs(c) == 1:
                coeff = "-" if c < 0 else ""
            else:
                coeff = _latex_entry(c)
            terms.append(coeff + mono)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out
    return str(e)
