"""Exact arithmetic in the real cyclotomic field Q(w), w = 2*cos(pi/mu).

Every exact matrix entry produced elsewhere in this package is a rational
polynomial in w = 2*cos(pi/mu), so instead of working in the full cyclotomic
field Q(zeta_{2mu}) we work in its real subfield, which halves the degree.
Elements are stored as an integer coefficient vector over a common positive
denominator and reduced modulo the minimal polynomial of w after every
multiplication; this keeps bulk matrix arithmetic (the hot path of the
symmetric-power checks) on plain machine/bignum integers.

Rationals themselves are ``fractions.Fraction`` throughout the package:
it already guarantees lowest terms and a positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath


class IntPolynomial:
    """Dense integer polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                mono = "x" if i == 1 else f"x^{i}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[-1]
        for t in reversed(terms[:-1]):
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_exact_int(num, den):
    """Exact division of integer polynomials with monic divisor."""
    num = list(num)
    d = len(den) - 1
    q = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q[i - d] = c
        for j, dj in enumerate(den):
            num[i - d + j] -= c * dj
    if any(num[:d]):
        raise ArithmeticError("polynomial division was not exact")
    return q


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact_int(num, _cyclotomic(d))
    return tuple(num)


@lru_cache(maxsize=None)
def minimal_polynomial(mu: int) -> IntPolynomial:
    """Monic minimal polynomial of 2*cos(pi/mu) over Q.

    2*cos(pi/mu) = zeta + 1/zeta for zeta a primitive 2mu-th root of unity,
    so the polynomial is obtained by rewriting the (palindromic) cyclotomic
    polynomial Phi_{2mu}(y) as y^d * psi(y + 1/y); deg psi = phi(2mu)/2.
    """
    if not isinstance(mu, int) or mu < 3:
        raise ValueError(f"mu must be an integer >= 3, got {mu!r}")
    phi = list(_cyclotomic(2 * mu))
    d = (len(phi) - 1) // 2
    psi = [0] * (d + 1)
    for k in range(d, -1, -1):
        c = phi[d + k]
        psi[k] = c
        if c:
            for j in range(k + 1):
                phi[d + k - 2 * j] -= c * math.comb(k, j)
    if any(phi):
        raise ArithmeticError(f"palindromic rewrite failed for mu={mu}")
    return IntPolynomial(psi)


@lru_cache(maxsize=None)
def _field_context(mu: int):
    m = minimal_polynomial(mu)
    return m.degree, m.coeffs


def _reduce_mod_minpoly(nums, lower, d):
    """Reduce an integer coefficient vector modulo the (monic) minimal poly."""
    for i in range(len(nums) - 1, d - 1, -1):
        c = nums[i]
        if c:
            nums[i] = 0
            for j in range(d):
                nums[i - d + j] -= c * lower[j]
    del nums[d:]
    return nums


class FieldElement:
    """Element of Q(w), w = 2*cos(pi/mu), as a reduced polynomial in w.

    Stored as an integer vector ``num`` of length deg(m_mu) over a positive
    denominator ``den`` with gcd(content(num), den) = 1.
    """

    __slots__ = ("mu", "num", "den")

    def __init__(self, mu: int, coeffs=(0,)):
        d, _ = _field_context(mu)
        fracs = []
        for c in coeffs:
            if isinstance(c, str):
                c = Fraction(c)
            elif isinstance(c, int):
                c = Fraction(c)
            elif not isinstance(c, Fraction):
                raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")
            fracs.append(c)
        if len(fracs) > d:
            raise ValueError(f"expected at most {d} coefficients for mu={mu}, got {len(fracs)}")
        fracs += [Fraction(0)] * (d - len(fracs))
        den = math.lcm(*(c.denominator for c in fracs)) if fracs else 1
        nums = [int(c * den) for c in fracs]
        self.mu = mu
        self.num, self.den = _normalize(nums, den)

    @classmethod
    def _make(cls, mu, nums, den):
        self = object.__new__(cls)
        self.mu = mu
        self.num, self.den = _normalize(list(nums), den)
        return self

    @classmethod
    def zero(cls, mu: int) -> "FieldElement":
        d, _ = _field_context(mu)
        return cls._make(mu, [0] * d, 1)

    @classmethod
    def one(cls, mu: int) -> "FieldElement":
        d, _ = _field_context(mu)
        return cls._make(mu, [1] + [0] * (d - 1), 1)

    @classmethod
    def generator(cls, mu: int) -> "FieldElement":
        """The element w = 2*cos(pi/mu) itself."""
        d, _ = _field_context(mu)
        if d == 1:
            # w is rational (mu = 3 only): reduce x mod m right away
            lower = _field_context(mu)[1][:1]
            return cls._make(mu, [-lower[0]], 1)
        return cls._make(mu, [0, 1] + [0] * (d - 2), 1)

    @classmethod
    def from_rational(cls, mu: int, q) -> "FieldElement":
        q = Fraction(q)
        d, _ = _field_context(mu)
        return cls._make(mu, [q.numerator] + [0] * (d - 1), q.denominator)

    # -- basic views ---------------------------------------------------

    def coeffs(self):
        """Rational coefficients c_0..c_{d-1} with self = sum c_i w^i."""
        return tuple(Fraction(n, self.den) for n in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.mu != self.mu:
                raise ValueError(f"mixed fields: mu={self.mu} vs mu={other.mu}")
            return other
        if isinstance(other, int):
            d, _ = _field_context(self.mu)
            return FieldElement._make(self.mu, [other] + [0] * (d - 1), 1)
        if isinstance(other, Fraction):
            return FieldElement.from_rational(self.mu, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nums = [a * o.den + b * self.den for a, b in zip(self.num, o.num)]
        return FieldElement._make(self.mu, nums, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._make(self.mu, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        nums = [a * o.den - b * self.den for a, b in zip(self.num, o.num)]
        return FieldElement._make(self.mu, nums, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d, mcoeffs = _field_context(self.mu)
        prod = _poly_mul_int(self.num, o.num)
        nums = _reduce_mod_minpoly(prod, mcoeffs[:d], d)
        return FieldElement._make(self.mu, nums, self.den * o.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement.one(self.mu)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse, via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d, mcoeffs = _field_context(self.mu)
        # work over Q[x]; m_mu is irreducible so gcd(self, m) = 1
        a = [Fraction(c) for c in mcoeffs]
        b = _poly_trim([Fraction(n, self.den) for n in self.num])
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(b):
            q, r = _poly_divmod_frac(a, b)
            a, b = b, r
            s0, s1 = s1, _poly_sub_frac(s0, _poly_mul_frac(q, s1))
        # a is now a nonzero constant gcd; s0 satisfies s0 * self = a (mod m)
        g = a[0]
        inv_coeffs = [c / g for c in s0]
        inv_coeffs = inv_coeffs[:d] + [Fraction(0)] * max(0, d - len(inv_coeffs))
        return FieldElement(self.mu, inv_coeffs[:d])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if isinstance(other, FieldElement):
            return self.mu == other.mu and self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.mu, self.num, self.den))

    # -- embedding and serialization ------------------------------------

    def embed(self, precision: int = 15):
        """Real embedding sending w to 2*cos(pi/mu).

        Returns a float for precision <= 15 decimal digits, an mpmath mpf
        otherwise.
        """
        if precision < 1:
            raise ValueError("precision must be >= 1")
        with mpmath.workdps(precision + 10):
            w = 2 * mpmath.cos(mpmath.pi / self.mu)
            acc = mpmath.mpf(0)
            for n in reversed(self.num):
                acc = acc * w + n
            acc = acc / self.den
            if precision <= 15:
                return float(acc)
            return +acc

    def to_json(self):
        """JSON form: array of "p/q" strings, ascending degree in w."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs()]

    @classmethod
    def from_json(cls, mu: int, data) -> "FieldElement":
        return cls(mu, [Fraction(s) for s in data])

    def __repr__(self):
        return f"FieldElement(mu={self.mu}, {self})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs()):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "w" if i == 1 else f"w^{i}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def _normalize(nums, den):
    if den < 0:
        den = -den
        nums = [-a for a in nums]
    g = den
    for a in nums:
        g = math.gcd(g, a)
        if g == 1:
            break
    if g > 1:
        nums = [a // g for a in nums]
        den //= g
    if not any(nums):
        den = 1
    return tuple(nums), den


# small Fraction-polynomial helpers used only by FieldElement.inverse

def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub_frac(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_divmod_frac(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) < len(b):
        return [Fraction(0)], _poly_trim(a)
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lb
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    return _poly_trim(q), _poly_trim(a[:db] if db else [Fraction(0)])


# -- module-level conveniences ------------------------------------------


def varpi(mu: int) -> FieldElement:
    """The field generator 2*cos(pi/mu) as an exact element."""
    return FieldElement.generator(mu)


def varpi_numeric(mu: int) -> float:
    if mu < 3:
        raise ValueError(f"mu must be >= 3, got {mu}")
    return 2.0 * math.cos(math.pi / mu)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def embed(a: FieldElement, precision: int = 15):
    return a.embed(precision)
